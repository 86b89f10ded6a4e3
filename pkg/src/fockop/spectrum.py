"""Spectrum of C_phi and explicit polynomial-type eigenfunctions.

For bounded C_phi the spectrum is the closure of

    { prod_j d_j^{beta_j} * prod_i lambda_i^{gamma_i} }

over multi-indices beta (against the unimodular diagonal d_j of the block
Schur form) and gamma (against the eigenvalues lambda_i of the strictly
contractive block A1).  Eigenfunctions come from the same normal form:

    F(w, v) = w^beta * prod_i [ (v - C)^T v(i) ]^{gamma_i}

with C = (I - A1)^{-1} B1 and A1^T v(i) = lambda_i v(i), living in the
Schur coordinates z' = U z = (w, v).
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import (
    NonSquareError,
    NotBoundedError,
    NotDiagonalizableError,
    ShapeMismatchError,
)
from .exact import GaussianRational
from .polynomials import MultiPolynomial, graded_indices
from .symbol import (
    AffineSymbol,
    DEFAULT_TOL_UNIT,
    _eig_sort_key,
    block_schur_of_symbol,
)
from .truncation import compose_polynomial

DEFAULT_DEDUP_TOL = 1e-10


def eigenvalues(A):
    """Eigenvalues sorted modulus-descending, ties argument-ascending."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonSquareError(f"expected square matrix, got shape {A.shape}")
    ev = np.linalg.eigvals(A)
    order = sorted(range(len(ev)), key=lambda i: _eig_sort_key(ev[i]))
    return ev[order]


def eigenvalue_products(eigvals, max_degree):
    """All (gamma, prod_i lambda_i^{gamma_i}) with |gamma| <= max_degree,
    in graded-lex order, with multiplicity (no deduplication)."""
    eigvals = np.asarray(eigvals, dtype=complex)
    n = len(eigvals)
    out = []
    for g in graded_indices(n, max_degree):
        v = 1.0 + 0.0j
        for lam, gi in zip(eigvals, g):
            if gi:
                v *= lam**gi
        out.append((g, v))
    return out


@dataclass(frozen=True)
class SpectrumEnumeration:
    """Finite enumeration of the eigenvalue-product set.

    products pairs each retained multi-index with its value; values within
    dedup_tol of an earlier one are dropped, keeping the graded-lex first
    representative.  closure_contains_zero records whether 0 is an
    accumulation point (some |lambda_i| < 1).  unimodular_angles_independent
    is the three-valued rational-independence verdict for the arguments of
    the unimodular eigenvalues together with pi.
    """

    eigenvalues: np.ndarray
    max_degree: int
    products: tuple
    closure_contains_zero: bool
    unimodular_angles_independent: str
    independence_detail: object = None


def enumerate_spectrum(
    symbol,
    max_degree,
    dedup_tol=DEFAULT_DEDUP_TOL,
    tol_unit=DEFAULT_TOL_UNIT,
    exact_angles=None,
):
    """Enumerate {lambda^gamma : |gamma| <= max_degree} with deduplication.

    exact_angles optionally tags eigenvalue arguments as exact rational
    multiples of pi, aligned with the sorted eigenvalue order (None per
    untagged slot); tags flow into the independence verdict.
    """
    from .dynamics import AngleSet, rational_independence

    ev = eigenvalues(symbol.A)
    full = eigenvalue_products(ev, max_degree)
    reps = []
    values = []
    for g, v in full:
        dup = False
        for u in values:
            if abs(v - u) <= dedup_tol:
                dup = True
                break
        if not dup:
            reps.append((g, v))
            values.append(v)

    contains_zero = bool(np.any(np.abs(ev) < 1.0 - tol_unit))

    unim = [i for i in range(len(ev)) if abs(ev[i]) >= 1.0 - tol_unit]
    thetas = [float(np.angle(ev[i])) % (2 * np.pi) for i in unim]
    tags = None
    if exact_angles is not None:
        if len(exact_angles) != len(ev):
            raise ShapeMismatchError("exact_angles must align with the eigenvalues")
        tags = [exact_angles[i] for i in unim]
    angle_set = AngleSet.build(thetas, tags)
    verdict = rational_independence(angle_set)
    return SpectrumEnumeration(
        eigenvalues=ev,
        max_degree=max_degree,
        products=tuple(reps),
        closure_contains_zero=contains_zero,
        unimodular_angles_independent=verdict.independent,
        independence_detail=verdict,
    )


def multiset_distance(xs, ys):
    """Optimal-matching sup distance between equal-size complex multisets."""
    xs = np.asarray(xs, dtype=complex).reshape(-1)
    ys = np.asarray(ys, dtype=complex).reshape(-1)
    if xs.shape != ys.shape:
        raise ValueError(f"multiset sizes differ: {xs.shape} vs {ys.shape}")
    cost = np.abs(xs[:, None] - ys[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max()) if len(r) else 0.0


@dataclass(frozen=True)
class EigenfunctionSpec:
    """An explicit eigenfunction in the Schur coordinates z' = Uz.

    polynomial is F as a MultiPolynomial in n variables (w, v); composing
    it with normalized_symbol (psi(w, v) = (Dw, A1 v + B1)) reproduces
    eigenvalue * polynomial.  In exact mode polynomial carries Gaussian
    rational coefficients and eigenvalue_exact the exact eigenvalue.
    """

    beta: tuple
    gamma: tuple
    C: np.ndarray
    eigvecs_a1t: np.ndarray
    polynomial: MultiPolynomial
    eigenvalue: complex
    normalized_symbol: AffineSymbol
    eigenvalue_exact: Optional[GaussianRational] = None


def _matched_eig(A1, cond_cap=1e8):
    """Eigenpairs of A1^T matched to the diagonal order of A1.

    A1 is upper triangular, so its eigenvalues are the diagonal entries in
    their stored order; numpy returns them permuted, and each computed
    pair is greedily assigned to the nearest unclaimed diagonal slot.
    """
    m = A1.shape[0]
    lam, V = np.linalg.eig(A1.T)
    if np.linalg.cond(V) > cond_cap:
        raise NotDiagonalizableError(
            "eigenvector basis of A1^T is numerically defective"
        )
    diag = np.diag(A1)
    taken = [False] * m
    order = []
    for k in range(m):
        best, best_d = None, None
        for j in range(m):
            if taken[j]:
                continue
            d = abs(lam[j] - diag[k])
            if best is None or d < best_d:
                best, best_d = j, d
        taken[best] = True
        order.append(best)
    return lam[order], V[:, order]


def construct_eigenfunction(
    symbol, beta, gamma, tol_unit=DEFAULT_TOL_UNIT, exact=False
):
    """Build the eigenfunction for multi-indices (beta, gamma).

    beta runs over the s unimodular directions, gamma over the n - s
    contractive ones.  The eigenvalue is
    prod_j d_j^{beta_j} * prod_i lambda_i^{gamma_i}.

    exact mode is available when the symbol is already block triangular
    with U = I and A1 exactly diagonal; then C solves coordinatewise in
    rational arithmetic and the residual of verify_eigenfunction vanishes
    identically.

    Raises
    ------
    NotBoundedError
    NotDiagonalizableError
        If A1^T has a numerically defective eigenbasis.
    ShapeMismatchError
        If beta or gamma have the wrong length.
    """
    from .analysis import check_bounded

    if not check_bounded(symbol, tol_unit).bounded:
        raise NotBoundedError("eigenfunctions are constructed for bounded symbols")
    form = block_schur_of_symbol(symbol, tol_unit)
    n, s = symbol.n, form.s
    beta = tuple(int(b) for b in beta)
    gamma = tuple(int(g) for g in gamma)
    if len(beta) != s:
        raise ShapeMismatchError(f"beta must have length s={s}, got {len(beta)}")
    if len(gamma) != n - s:
        raise ShapeMismatchError(
            f"gamma must have length n-s={n - s}, got {len(gamma)}"
        )
    m = n - s
    A1 = form.A1
    B1 = form.Bprime[s:]
    psi = AffineSymbol(form.M, np.concatenate([np.zeros(s), B1]))

    if exact:
        return _construct_exact(symbol, form, psi, beta, gamma)

    if m:
        C = np.linalg.solve(np.eye(m) - A1, B1)
        lam, V = _matched_eig(A1)
    else:
        C = np.zeros(0, dtype=complex)
        lam = np.zeros(0, dtype=complex)
        V = np.zeros((0, 0), dtype=complex)

    poly = MultiPolynomial.constant(n, 1.0)
    for j in range(s):
        if beta[j]:
            poly = poly * MultiPolynomial.variable(n, j) ** beta[j]
    for i in range(m):
        if gamma[i]:
            terms = {}
            const = 0.0 + 0.0j
            for j in range(m):
                vj = V[j, i]
                if vj != 0:
                    g = tuple(1 if t == s + j else 0 for t in range(n))
                    terms[g] = vj
                    const -= C[j] * vj
            if const != 0:
                terms[(0,) * n] = terms.get((0,) * n, 0) + const
            factor = MultiPolynomial(n, terms)
            poly = poly * factor**gamma[i]

    eig = 1.0 + 0.0j
    for j in range(s):
        eig *= form.D[j] ** beta[j]
    for i in range(m):
        eig *= lam[i] ** gamma[i]

    return EigenfunctionSpec(
        beta=beta,
        gamma=gamma,
        C=C,
        eigvecs_a1t=V,
        polynomial=poly,
        eigenvalue=eig,
        normalized_symbol=psi,
    )


def _construct_exact(symbol, form, psi, beta, gamma):
    """Exact-rational eigenfunction; needs U = I and diagonal A1."""
    n, s = symbol.n, form.s
    m = n - s
    if not np.array_equal(form.U, np.eye(n)):
        raise ValueError("exact mode requires a symbol already in Schur form (U = I)")
    A1 = form.A1
    if m and np.any(A1[~np.eye(m, dtype=bool)] != 0):
        raise ValueError("exact mode requires A1 exactly diagonal")
    a = [GaussianRational.from_complex(A1[i, i]) for i in range(m)]
    b = [GaussianRational.from_complex(form.Bprime[s + i]) for i in range(m)]
    C = [bi / (GaussianRational(1) - ai) for ai, bi in zip(a, b)]

    poly = MultiPolynomial.constant(n, GaussianRational(1), exact=True)
    for j in range(s):
        if beta[j]:
            poly = poly * MultiPolynomial.variable(n, j, exact=True) ** beta[j]
    for i in range(m):
        if gamma[i]:
            g = tuple(1 if t == s + i else 0 for t in range(n))
            factor = MultiPolynomial(
                n, {g: GaussianRational(1), (0,) * n: -C[i]}, exact=True
            )
            poly = poly * factor**gamma[i]

    eig = GaussianRational(1)
    for j in range(s):
        eig = eig * GaussianRational.from_complex(form.D[j]) ** beta[j]
    for i in range(m):
        eig = eig * a[i] ** gamma[i]

    return EigenfunctionSpec(
        beta=beta,
        gamma=gamma,
        C=np.array([complex(c) for c in C]),
        eigvecs_a1t=np.eye(m, dtype=complex),
        polynomial=poly,
        eigenvalue=complex(eig),
        normalized_symbol=psi,
        eigenvalue_exact=eig,
    )


def verify_eigenfunction(spec, symbol=None, tol_unit=DEFAULT_TOL_UNIT):
    """Residual max-coefficient of F o psi - eigenvalue * F.

    With symbol given, the Schur normalization is recomputed from it;
    otherwise the one stored on the spec is used.  Exact-mode specs
    compose in rational arithmetic and return exactly 0.0 on success.
    """
    psi = spec.normalized_symbol
    if symbol is not None:
        form = block_schur_of_symbol(symbol, tol_unit)
        psi = AffineSymbol(
            form.M, np.concatenate([np.zeros(form.s), form.Bprime[form.s :]])
        )
    composed = compose_polynomial(spec.polynomial, psi)
    if spec.polynomial.exact:
        scale = spec.eigenvalue_exact
        if scale is None:
            scale = GaussianRational.from_complex(spec.eigenvalue)
        diff = composed - spec.polynomial.scale(scale)
    else:
        diff = composed - spec.polynomial.scale(spec.eigenvalue)
    return diff.max_abs_coefficient()
