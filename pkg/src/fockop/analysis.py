"""Closed-form operator theory for C_phi, phi(z) = Az + B, alpha = 1/2.

Boundedness and compactness, the operator and essential norms, normality
and its relatives, the Berezin transform, Schatten-class information and
the Hilbert-Schmidt norm.  Each closed form here is cross-checked in the
test suite against the graded truncation oracle or direct quadrature.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial.hermite import hermgauss

from .errors import (
    IdentityViolationError,
    InconsistentError,
    NotBoundedError,
    NotCompactError,
    QuadratureDivergenceError,
)
from .symbol import DEFAULT_TOL_UNIT, hermitian_inner
from . import truncation as _trunc


@dataclass(frozen=True)
class BoundednessVerdict:
    """Outcome of the boundedness test.

    bounded is true iff ||A|| <= 1 + tol and B is orthogonal to the image
    of the norm-one singular directions.  When the orthogonality fails,
    witness holds a unit zeta with |A zeta| = |zeta| and <A zeta, B> != 0;
    when instead ||A|| > 1 there is no finite-dimensional witness.
    """

    bounded: bool
    witness: Optional[np.ndarray]
    norm_a: float


def check_bounded(symbol, tol_unit=DEFAULT_TOL_UNIT):
    """Boundedness of C_phi: ||A|| <= 1 and <A zeta, B> = 0 whenever
    |A zeta| = |zeta|.

    The unit singular directions are read off the SVD: zeta ranges over
    right singular vectors with sigma within tol_unit of 1, so the
    condition is that B has no component along the corresponding left
    singular vectors.
    """
    norm_a = symbol.norm_a
    if norm_a > 1.0 + tol_unit:
        return BoundednessVerdict(bounded=False, witness=None, norm_a=norm_a)
    U, sig, Vh = np.linalg.svd(symbol.A)
    unit = sig >= 1.0 - tol_unit
    if not np.any(unit):
        return BoundednessVerdict(bounded=True, witness=None, norm_a=norm_a)
    Us = U[:, unit]
    overlaps = Us.conj().T @ symbol.B  # <B, u_i> conjugated pairing
    mass = float(np.linalg.norm(overlaps))
    scale = max(1.0, float(np.linalg.norm(symbol.B)))
    if mass <= tol_unit * scale:
        return BoundednessVerdict(bounded=True, witness=None, norm_a=norm_a)
    # witness maximizing |<A zeta, B>| over unit zeta in the singular space
    coeff = overlaps / mass
    zeta = Vh.conj().T[:, unit] @ coeff
    zeta = zeta / np.linalg.norm(zeta)
    return BoundednessVerdict(bounded=False, witness=zeta, norm_a=norm_a)


def check_compact(symbol, tol_unit=DEFAULT_TOL_UNIT):
    """C_phi is compact iff ||A|| < 1, tested as ||A|| < 1 - tol_unit."""
    return symbol.norm_a < 1.0 - tol_unit


def solve_z0(symbol, tol=DEFAULT_TOL_UNIT):
    """Minimum-norm solution of (I - A*A) z = A*B.

    For bounded symbols the system is consistent (A*B is orthogonal to
    ker(I - A*A)); a large least-squares residual therefore signals a
    symbol on the unbounded side.

    Raises
    ------
    InconsistentError
        If the least-squares residual exceeds tolerance.
    """
    n = symbol.n
    A = symbol.A
    lhs = np.eye(n) - A.conj().T @ A
    rhs = A.conj().T @ symbol.B
    z0, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
    resid = float(np.linalg.norm(lhs @ z0 - rhs))
    if resid > max(tol, tol * np.linalg.norm(rhs)):
        raise InconsistentError(
            f"(I - A*A) z = A*B residual {resid:.3e}; symbol is not bounded"
        )
    return z0


def operator_norm(symbol, tol_unit=DEFAULT_TOL_UNIT):
    """||C_phi|| = exp((|z0|^2 - |A z0|^2 + |B|^2) / 4).

    The value does not depend on which solution z0 of (I - A*A) z = A*B
    is taken; solve_z0 picks the minimum-norm one.

    Raises
    ------
    NotBoundedError
    """
    if not check_bounded(symbol, tol_unit).bounded:
        raise NotBoundedError("operator norm requires a bounded symbol")
    z0 = solve_z0(symbol)
    q = (
        hermitian_inner(z0, z0).real
        - hermitian_inner(symbol.A @ z0, symbol.A @ z0).real
        + hermitian_inner(symbol.B, symbol.B).real
    )
    return math.exp(0.25 * q)


def essential_norm(symbol, tol_unit=DEFAULT_TOL_UNIT, rel_tol=1e-9):
    """Essential norm: 0 when compact, else equal to the operator norm.

    In the non-compact case the value exp(<phi(z0), B>/4) is evaluated
    against the full norm formula; the two must agree to rel_tol and the
    inner product must be real to rel_tol, otherwise the computation is
    rejected rather than silently trusted.

    Raises
    ------
    NotBoundedError
    IdentityViolationError
        If the two closed forms disagree.
    """
    if not check_bounded(symbol, tol_unit).bounded:
        raise NotBoundedError("essential norm requires a bounded symbol")
    if check_compact(symbol, tol_unit):
        return 0.0
    z0 = solve_z0(symbol)
    val = hermitian_inner(symbol(z0), symbol.B)
    if abs(val.imag) > rel_tol * max(1.0, abs(val)):
        raise IdentityViolationError(
            f"<phi(z0), B> has imaginary part {val.imag:.3e}"
        )
    via_identity = math.exp(0.25 * val.real)
    via_norm = operator_norm(symbol, tol_unit)
    if abs(via_identity - via_norm) > rel_tol * via_norm:
        raise IdentityViolationError(
            f"essential-norm identity mismatch: {via_identity!r} vs {via_norm!r}"
        )
    return via_identity


def check_normal(symbol, tol=DEFAULT_TOL_UNIT):
    """C_phi is normal iff B = 0 and A is a normal matrix.

    Raises
    ------
    NotBoundedError
    """
    if not check_bounded(symbol, tol).bounded:
        raise NotBoundedError("normality is assessed for bounded symbols")
    A = symbol.A
    comm = A @ A.conj().T - A.conj().T @ A
    return bool(
        np.linalg.norm(symbol.B) < tol and np.linalg.norm(comm) < tol
    )


def check_hyponormal(symbol, tol=DEFAULT_TOL_UNIT):
    """Hyponormal composition operators are already normal, so this is
    the same predicate as check_normal."""
    return check_normal(symbol, tol)


def check_essentially_normal(symbol, tol=DEFAULT_TOL_UNIT):
    """Essentially normal iff compact or normal."""
    return check_compact(symbol, tol) or check_normal(symbol, tol)


@dataclass(frozen=True)
class KernelFunction:
    """Reproducing kernel K_w(z) = exp(<z, w>/2) at center w."""

    w: np.ndarray

    def __post_init__(self):
        w = np.array(self.w, dtype=complex).reshape(-1)
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    @property
    def norm_sq(self):
        """||K_w||^2 = exp(|w|^2 / 2)."""
        return math.exp(0.5 * hermitian_inner(self.w, self.w).real)

    def evaluate(self, z):
        return np.exp(0.5 * hermitian_inner(z, self.w))

    def normalized(self, z):
        """k_w(z) = K_w(z)/||K_w|| = exp(<z,w>/2 - |w|^2/4)."""
        return np.exp(
            0.5 * hermitian_inner(z, self.w)
            - 0.25 * hermitian_inner(self.w, self.w).real
        )

    def truncate(self, max_degree, exact=False):
        """Taylor polynomial of degree <= N."""
        return _trunc.kernel_series_polynomial(self.w, max_degree, exact=exact)


def berezin_transform(symbol, z, tol_unit=DEFAULT_TOL_UNIT):
    """Berezin transform of C_phi* C_phi at z:

        ||C_phi k_z||^2 = exp(-|z|^2/2 + Re<B, z> + |A* z|^2/2).

    Substituting C_phi k_z = exp(<B,z>/2 - |z|^2/4) K_{A*z} into the
    kernel norm gives the display; at z = 0 the value is exactly 1.

    Raises
    ------
    NotCompactError
        The Toeplitz identification behind the transform needs ||A|| < 1.
    """
    if not check_compact(symbol, tol_unit):
        raise NotCompactError("Berezin transform is provided for compact symbols")
    z = np.asarray(z, dtype=complex).reshape(-1)
    Az = symbol.A.conj().T @ z
    expo = (
        -0.5 * hermitian_inner(z, z).real
        + hermitian_inner(symbol.B, z).real
        + 0.5 * hermitian_inner(Az, Az).real
    )
    return math.exp(expo)


def adjoint_kernel_ratio(symbol, z, tol_unit=DEFAULT_TOL_UNIT):
    """||C_phi* k_z|| = exp((|phi(z)|^2 - |z|^2)/4), from
    C_phi* K_z = K_{phi(z)}.

    Raises
    ------
    NotBoundedError
    """
    if not check_bounded(symbol, tol_unit).bounded:
        raise NotBoundedError("adjoint kernel ratio requires a bounded symbol")
    z = np.asarray(z, dtype=complex).reshape(-1)
    ph = symbol(z)
    return math.exp(
        0.25 * (hermitian_inner(ph, ph).real - hermitian_inner(z, z).real)
    )


# ---------------------------------------------------------------------------
# tensor Gauss-Hermite quadrature over R^{2n}

_GH_BLOCK = 2_000_000


def _default_orders(n):
    # full 16 -> 64 escalation is affordable for 2n <= 4 axes; beyond that
    # the tensor grid would explode, so orders shrink with the dimension
    if n <= 2:
        return (16, 32, 64)
    if n == 3:
        return (8, 12, 16)
    return (6, 8, 10)


def _tensor_gauss_hermite(exponent_fn, m, scale, order):
    """integral over R^m of exp(exponent_fn(t)) dt by tensor Gauss-Hermite.

    The rule absorbs a factor exp(-scale |t|^2): nodes are x/sqrt(scale)
    and log-weights carry the +x^2 compensation, which keeps large nodes
    from under/overflowing separately.

    exponent_fn maps an (P, m) real array to a (P,) real array.
    """
    x, w = hermgauss(order)
    nodes = x / math.sqrt(scale)
    logw = np.log(w) + x * x - 0.5 * math.log(scale)

    k = 0
    size = order**m
    while size > _GH_BLOCK:
        size //= order
        k += 1
    tail = m - k
    if tail:
        grids = np.meshgrid(*([nodes] * tail), indexing="ij")
        tail_pts = np.stack([g.ravel() for g in grids], axis=-1)
        wgrids = np.meshgrid(*([logw] * tail), indexing="ij")
        tail_logw = sum(g.ravel() for g in wgrids)
    else:
        tail_pts = np.zeros((1, 0))
        tail_logw = np.zeros(1)

    total = 0.0
    P = tail_pts.shape[0]
    for idx in np.ndindex(*([order] * k)):
        pts = np.empty((P, m))
        for a, i in enumerate(idx):
            pts[:, a] = nodes[i]
        if tail:
            pts[:, k:] = tail_pts
        head_logw = float(sum(logw[i] for i in idx))
        total += float(np.sum(np.exp(exponent_fn(pts) + head_logw + tail_logw)))
    return total


def _as_complex_points(pts, n):
    # axes alternate Re, Im per complex coordinate
    return pts[:, 0::2] + 1j * pts[:, 1::2]


@dataclass(frozen=True)
class SchattenIntegrals:
    """The two weighted kernel integrals controlling Schatten membership."""

    int_cphi: float
    int_cphi_star: float


def schatten_integrals(symbol, p, orders=None, tol_unit=DEFAULT_TOL_UNIT):
    """Evaluate, over plain Lebesgue volume dv on C^n,

        I1 = integral ||C_phi k_z||^p dv(z)
        I2 = integral ||C_phi* k_z||^p dv(z)

    by escalating tensor Gauss-Hermite rules.  Estimates growing by more
    than 10% between the top two refinement levels, or landing above the
    certified upper bound C exp(p|B|^2/(1-||A||)) with
    C = (4 pi / (p (1-||A||^2)))^n (times exp(p|B|^2/4) for I2), are
    rejected.

    Raises
    ------
    NotCompactError
    QuadratureDivergenceError
    """
    if p <= 0:
        raise ValueError("p must be positive")
    if not check_compact(symbol, tol_unit):
        raise NotCompactError("Schatten integrals are evaluated for compact symbols")
    n = symbol.n
    norm_a = symbol.norm_a
    scale = 0.25 * p * max(1.0 - norm_a**2, 1e-8)
    if orders is None:
        orders = _default_orders(n)
    A = symbol.A
    B = symbol.B

    def expo1(pts):
        z = _as_complex_points(pts, n)
        Az = z @ np.conj(A)  # rows are A* z
        zz = np.sum(np.abs(z) ** 2, axis=-1)
        bz = np.real(np.sum(B * np.conj(z), axis=-1))
        return 0.5 * p * (-0.5 * zz + bz + 0.5 * np.sum(np.abs(Az) ** 2, axis=-1))

    def expo2(pts):
        z = _as_complex_points(pts, n)
        ph = z @ A.T + B
        return 0.25 * p * (
            np.sum(np.abs(ph) ** 2, axis=-1) - np.sum(np.abs(z) ** 2, axis=-1)
        )

    results = []
    for fn in (expo1, expo2):
        vals = [_tensor_gauss_hermite(fn, 2 * n, scale, o) for o in orders]
        if vals[-1] - vals[-2] > 0.1 * abs(vals[-2]):
            raise QuadratureDivergenceError(
                f"estimates grew {vals[-2]!r} -> {vals[-1]!r} under refinement"
            )
        results.append(vals[-1])

    bsq = hermitian_inner(B, B).real
    cap = (4.0 * math.pi / (p * (1.0 - norm_a**2))) ** n
    bound1 = cap * math.exp(p * bsq / (1.0 - norm_a))
    bound2 = bound1 * math.exp(0.25 * p * bsq)
    if results[0] > bound1 * (1 + 1e-6) or results[1] > bound2 * (1 + 1e-6):
        raise QuadratureDivergenceError(
            "quadrature exceeded the certified Schatten upper bound"
        )
    return SchattenIntegrals(int_cphi=results[0], int_cphi_star=results[1])


def berezin_transform_quadrature(symbol, z, order=32):
    """The defining integral of the Berezin transform,

        (2 pi)^{-n} integral exp(-|z - phi(u)|^2/2) exp((|phi(u)|^2 - |u|^2)/2) dv(u),

    evaluated directly by tensor Gauss-Hermite.  Shares nothing with the
    closed form in berezin_transform; the test suite plays them against
    each other.
    """
    z = np.asarray(z, dtype=complex).reshape(-1)
    n = symbol.n
    A, B = symbol.A, symbol.B

    def expo(pts):
        u = _as_complex_points(pts, n)
        ph = u @ A.T + B
        dz = z - ph
        return 0.5 * (
            -np.sum(np.abs(dz) ** 2, axis=-1)
            + np.sum(np.abs(ph) ** 2, axis=-1)
            - np.sum(np.abs(u) ** 2, axis=-1)
        )

    val = _tensor_gauss_hermite(expo, 2 * n, 0.5, order)
    return val / (2.0 * math.pi) ** n


def schatten_membership(symbol, p, tol_unit=DEFAULT_TOL_UNIT):
    """C_phi is in S_p for every 0 < p < infinity iff it is compact."""
    if p <= 0:
        raise ValueError("p must be positive")
    return check_compact(symbol, tol_unit)


_HS_DEFAULT_DEGREE = {1: 40, 2: 24, 3: 14}


def hilbert_schmidt_norm_sq(symbol, max_degree=None, dim_cap=None):
    """sum_alpha ||C_phi e_alpha||^2 as the limit of truncation Frobenius
    norms; +infinity when the per-degree contributions stop decaying.

    Truncation columns are exact, so the degree-N Frobenius square is the
    exact partial sum through degree N.  The tail is declared summable
    only if the per-degree contributions decay geometrically over the top
    third of the computed range; otherwise returns math.inf.
    """
    if max_degree is None:
        max_degree = _HS_DEFAULT_DEGREE.get(symbol.n, 10)
    op = _trunc.build_truncation(symbol, max_degree, dim_cap=dim_cap)
    contrib = op.column_norms_sq_by_degree()
    start = (2 * max_degree) // 3
    tiny = 1e-300
    for d in range(start, max_degree):
        if contrib[d + 1] <= tiny:
            continue
        if contrib[d + 1] > (1.0 - 1e-6) * contrib[d]:
            return math.inf
    return float(np.sum(contrib))


def hilbert_schmidt_norm_sq_closed_form(symbol, tol_unit=DEFAULT_TOL_UNIT):
    """Gaussian-integral evaluation of the same sum:

        ||C_phi||_HS^2 = exp(|B|^2/2 + <Q^{-1} A*B, A*B>/2) / det(Q),
        Q = I - A*A.

    Follows from sum_alpha |e_alpha(u)|^2 = exp(|u|^2/2) and a complex
    Gaussian integral; must match the truncation limit.

    Raises
    ------
    NotCompactError
    """
    if not check_compact(symbol, tol_unit):
        raise NotCompactError("Hilbert-Schmidt closed form requires ||A|| < 1")
    A = symbol.A
    Q = np.eye(symbol.n) - A.conj().T @ A
    u = A.conj().T @ symbol.B
    sol = np.linalg.solve(Q, u)
    expo = 0.5 * hermitian_inner(symbol.B, symbol.B).real + 0.5 * hermitian_inner(
        sol, u
    ).real
    det = np.linalg.det(Q).real
    return float(math.exp(expo) / det)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    """Aggregate verdicts for one symbol.

    Fields that need boundedness are None when the symbol is unbounded.
    cyclic is the three-valued string "yes" / "no" / "unknown" (None when
    unbounded); cyclic_detail carries the full verdict object.
    """

    bounded: BoundednessVerdict
    compact: bool
    norm: Optional[float]
    essential_norm: Optional[float]
    z0: Optional[np.ndarray]
    normal: Optional[bool]
    hyponormal: Optional[bool]
    essentially_normal: Optional[bool]
    schatten_all_p: bool
    supercyclic: Optional[bool]
    cyclic: Optional[str]
    cyclic_detail: object = None


def classify(symbol, tol_unit=DEFAULT_TOL_UNIT, exact_angles=None):
    """Run every closed-form verdict and collect them in one report."""
    from .dynamics import check_cyclic, check_supercyclic

    bv = check_bounded(symbol, tol_unit)
    if not bv.bounded:
        return ClassificationReport(
            bounded=bv,
            compact=False,
            norm=None,
            essential_norm=None,
            z0=None,
            normal=None,
            hyponormal=None,
            essentially_normal=None,
            schatten_all_p=False,
            supercyclic=None,
            cyclic=None,
        )
    compact = check_compact(symbol, tol_unit)
    cyc = check_cyclic(symbol, tol_unit=tol_unit, exact_angles=exact_angles)
    return ClassificationReport(
        bounded=bv,
        compact=compact,
        norm=operator_norm(symbol, tol_unit),
        essential_norm=essential_norm(symbol, tol_unit),
        z0=solve_z0(symbol),
        normal=check_normal(symbol, tol_unit),
        hyponormal=check_hyponormal(symbol, tol_unit),
        essentially_normal=check_essentially_normal(symbol, tol_unit),
        schatten_all_p=compact,
        supercyclic=check_supercyclic(symbol, tol_unit),
        cyclic=cyc.verdict,
        cyclic_detail=cyc,
    )
