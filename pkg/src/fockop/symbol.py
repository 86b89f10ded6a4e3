"""Affine self-maps phi(z) = Az + B of C^n and their normal forms.

Only affine maps induce bounded composition operators on the Fock space,
so the symbol type is the pair (A, B).  The weight parameter alpha is
fixed at 1/2 throughout the package; the reproducing kernel is
K_w(z) = exp(<z, w>/2) with <u, v> = sum_i u_i conj(v_i).
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (
    InconsistentError,
    NonFiniteEntryError,
    NonSquareError,
    NormExceedsOneError,
    NotBoundedError,
    ShapeMismatchError,
    StructureViolationError,
)

ALPHA = 0.5
DEFAULT_TOL_UNIT = 1e-10


def hermitian_inner(u, v):
    """<u, v> = sum_i u_i conj(v_i), the pairing used by every formula here."""
    return complex(np.sum(np.asarray(u) * np.conj(np.asarray(v))))


def operator_norm_of_matrix(A):
    """Largest singular value.

    Raises
    ------
    NonSquareError
        If A is not a square 2-d array.
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonSquareError(f"expected square matrix, got shape {A.shape}")
    if A.shape[0] == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


@dataclass(frozen=True)
class AffineSymbol:
    """The map phi(z) = Az + B.

    Parameters
    ----------
    A : (n, n) array_like
        Complex matrix.
    B : (n,) array_like
        Complex translation vector.

    Arrays are copied, cast to complex128 and frozen.  NaN or infinite
    entries are rejected at construction.
    """

    A: np.ndarray
    B: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        A = np.array(self.A, dtype=complex)
        B = np.array(self.B, dtype=complex).reshape(-1)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ShapeMismatchError(f"A must be square, got shape {A.shape}")
        if B.shape[0] != A.shape[0]:
            raise ShapeMismatchError(
                f"B has length {B.shape[0]}, expected {A.shape[0]}"
            )
        if A.shape[0] < 1:
            raise ShapeMismatchError("dimension must be >= 1")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(B))):
            raise NonFiniteEntryError("A and B must have finite entries")
        A.setflags(write=False)
        B.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "n", A.shape[0])

    def __call__(self, z):
        """phi(z) = Az + B for a point z in C^n."""
        z = np.asarray(z, dtype=complex).reshape(-1)
        if z.shape[0] != self.n:
            raise ShapeMismatchError(f"point has length {z.shape[0]}, expected {self.n}")
        return self.A @ z + self.B

    @property
    def norm_a(self):
        return operator_norm_of_matrix(self.A)

    def __repr__(self):
        return f"AffineSymbol(n={self.n}, ||A||={self.norm_a:.6g}, |B|={np.linalg.norm(self.B):.6g})"


@dataclass(frozen=True)
class BlockSchurForm:
    """Unitary block triangularization U A U* = diag(D, A1).

    Fields
    ------
    U : (n, n) unitary with U A U* upper triangular in the sorted order.
    s : number of unimodular diagonal entries.
    D : (s,) unimodular diagonal entries, modulus-descending then
        argument-ascending in [0, 2pi).
    A1 : (n-s, n-s) upper triangular block, every diagonal modulus
        < 1 - tol_unit.
    Bprime : (n,) the transformed translation U B.
    """

    U: np.ndarray
    s: int
    D: np.ndarray
    A1: np.ndarray
    Bprime: np.ndarray

    @property
    def M(self):
        """The full transformed matrix diag(D, A1) with certified zeros."""
        n = self.U.shape[0]
        M = np.zeros((n, n), dtype=complex)
        s = self.s
        M[:s, :s] = np.diag(self.D)
        M[s:, s:] = self.A1
        return M


@dataclass(frozen=True)
class SvdForm:
    """Decomposition A = V Sigma W with V, W unitary, giving
    C_phi = C_W C_psi C_V for psi(z) = Sigma z + Bprime, Bprime = V* B."""

    V: np.ndarray
    Sigma: np.ndarray
    W: np.ndarray
    Bprime: np.ndarray


def _eig_sort_key(lam, tol_unit=DEFAULT_TOL_UNIT):
    # modulus descending, ties broken by argument ascending in [0, 2pi).
    # Moduli inside the unimodular band collapse to exactly 1 so the
    # argument tiebreak is not defeated by 1-ulp modulus noise.
    m = abs(lam)
    if m >= 1.0 - tol_unit:
        m = 1.0
    theta = float(np.angle(lam)) % (2.0 * np.pi)
    return (-m, theta)


def _swap_schur(T, U, i):
    """Swap diagonal entries i, i+1 of the complex Schur form in place.

    Standard Givens construction: the eigenvector of the 2x2 block
    [[a, b], [0, c]] for eigenvalue c is (b, c - a); rotating it onto e1
    exchanges the diagonal.
    """
    a = T[i, i]
    b = T[i, i + 1]
    c = T[i + 1, i + 1]
    x1, x2 = b, c - a
    r = np.hypot(abs(x1), abs(x2))
    if r == 0.0:
        return
    G = np.array(
        [[np.conj(x1), np.conj(x2)], [-x2, x1]], dtype=complex
    ) / r
    T[i : i + 2, :] = G @ T[i : i + 2, :]
    T[:, i : i + 2] = T[:, i : i + 2] @ G.conj().T
    U[i : i + 2, :] = G @ U[i : i + 2, :]
    # the rotated block is triangular by construction; drop roundoff
    T[i + 1, i] = 0.0


def _is_sorted_triangular(A, tol_unit):
    n = A.shape[0]
    if n > 1 and np.any(A[np.tril_indices(n, -1)] != 0):
        return False
    keys = [_eig_sort_key(A[i, i]) for i in range(n)]
    return all(keys[i] <= keys[i + 1] for i in range(n - 1))


def block_schur_form(A, tol_unit=DEFAULT_TOL_UNIT):
    """Sorted complex Schur form split into unimodular and contractive blocks.

    Eigenvalues are ordered modulus-descending (ties: argument ascending
    in [0, 2pi)).  Diagonal entries with modulus >= 1 - tol_unit are
    classified unimodular; their rows must then be zero off the diagonal,
    which is certified entrywise before the entries are zeroed.

    Matrices already upper triangular in the sorted order pass through
    with U = I exactly.

    Parameters
    ----------
    A : (n, n) array_like with operator norm <= 1 + tol_unit.
    tol_unit : float
        Half-width of the tolerance band around modulus 1.

    Returns
    -------
    BlockSchurForm with Bprime = 0 (use block_schur_of_symbol to carry B).

    Raises
    ------
    NormExceedsOneError
        If ||A|| > 1 + tol_unit.
    StructureViolationError
        If a unimodular row carries off-diagonal mass > tol_unit.
    """
    A = np.asarray(A, dtype=complex)
    norm = operator_norm_of_matrix(A)
    if norm > 1.0 + tol_unit:
        raise NormExceedsOneError(f"||A|| = {norm} exceeds 1 + {tol_unit}")
    n = A.shape[0]

    if _is_sorted_triangular(A, tol_unit):
        T = A.copy()
        U = np.eye(n, dtype=complex)
    else:
        T, Z = scipy.linalg.schur(A, output="complex")
        U = Z.conj().T
        # stable bubble sort so equal keys never move
        for _ in range(n):
            swapped = False
            for i in range(n - 1):
                if _eig_sort_key(T[i + 1, i + 1]) < _eig_sort_key(T[i, i]):
                    _swap_schur(T, U, i)
                    swapped = True
            if not swapped:
                break

    diag = np.diag(T).copy()
    s = int(np.sum(np.abs(diag) >= 1.0 - tol_unit))
    for i in range(s):
        row = T[i, i + 1 :]
        if row.size and np.max(np.abs(row)) > tol_unit:
            raise StructureViolationError(
                f"unimodular row {i} has off-diagonal mass {np.max(np.abs(row)):.3e}"
            )
        T[i, i + 1 :] = 0.0
    D = diag[:s]
    A1 = T[s:, s:].copy()
    return BlockSchurForm(U=U, s=s, D=D, A1=A1, Bprime=np.zeros(n, dtype=complex))


def block_schur_of_symbol(symbol, tol_unit=DEFAULT_TOL_UNIT):
    """block_schur_form of symbol.A with Bprime = U B attached."""
    form = block_schur_form(symbol.A, tol_unit)
    return BlockSchurForm(
        U=form.U, s=form.s, D=form.D, A1=form.A1, Bprime=form.U @ symbol.B
    )


def svd_normalize(symbol):
    """A = V Sigma W and the conjugated symbol psi(z) = Sigma z + V* B.

    The factorization C_phi = C_W C_psi C_V reduces norm questions to the
    diagonal nonnegative case.
    """
    V, sig, W = np.linalg.svd(symbol.A)
    return SvdForm(V=V, Sigma=sig, W=W, Bprime=V.conj().T @ symbol.B)


def adjoint_symbol(symbol):
    """The adjoint factorization data: C_phi* = M_{K_B} C_tau.

    Returns
    -------
    tau : AffineSymbol
        tau(z) = A* z.
    kernel_weight : ndarray
        The vector B; the multiplier is K_B(z) = exp(<z, B>/2).
    """
    tau = AffineSymbol(symbol.A.conj().T, np.zeros(symbol.n))
    return tau, symbol.B.copy()


def fixed_point(symbol, tol=DEFAULT_TOL_UNIT):
    """Minimum-norm solution of (I - A) p = B, verified to be fixed.

    Every bounded symbol has a fixed point (B is orthogonal to
    ker(I - A*), which makes the system consistent).

    Raises
    ------
    NotBoundedError
        If the symbol fails the boundedness test.
    InconsistentError
        If the residual |phi(p) - p| exceeds tolerance.
    """
    from .analysis import check_bounded

    if not check_bounded(symbol).bounded:
        raise NotBoundedError("fixed_point requires a bounded symbol")
    n = symbol.n
    p, *_ = np.linalg.lstsq(np.eye(n) - symbol.A, symbol.B, rcond=None)
    resid = float(np.linalg.norm(symbol(p) - p))
    if resid > max(tol, tol * np.linalg.norm(symbol.B)):
        raise InconsistentError(f"fixed point residual {resid:.3e}")
    return p


def iterate_symbol(symbol, m):
    """The m-th iterate phi_m: A_m = A^m, B_m = (A^{m-1} + ... + I) B."""
    if not isinstance(m, int) or m < 0:
        raise ValueError("iteration count must be a nonnegative integer")
    n = symbol.n
    Am = np.eye(n, dtype=complex)
    Bm = np.zeros(n, dtype=complex)
    for _ in range(m):
        Bm = symbol.A @ Bm + symbol.B
        Am = symbol.A @ Am
    return AffineSymbol(Am, Bm)


def compose_symbols(outer, inner):
    """The symbol of z -> outer(inner(z)).

    Note the operator identity runs the other way:
    C_outer C_inner = C_{inner o outer}.
    """
    if outer.n != inner.n:
        raise ShapeMismatchError("cannot compose symbols of different dimension")
    return AffineSymbol(outer.A @ inner.A, outer.A @ inner.B + outer.B)
