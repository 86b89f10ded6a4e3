"""
Spectrum as a product set, checked against finite sections
==========================================================

For bounded C_phi with phi = Az + B the spectrum is the closure of all
products of powers of the eigenvalues of A.  The truncated matrix is
block triangular in the graded monomial basis, so its eigenvalues are
exactly those products up to the cut degree: an oracle we can diff
against the enumeration.
"""

import numpy as np

from fockop import (
    AffineSymbol,
    construct_eigenfunction,
    enumerate_spectrum,
    eigenvalue_products,
    multiset_distance,
    truncated_spectrum,
    verify_eigenfunction,
)

sym = AffineSymbol(np.diag([0.5, 1 / 3]).astype(complex), np.array([0.0, 1.0]))
N = 4

spec = enumerate_spectrum(sym, N)
print("eigenvalues of A:", spec.eigenvalues)
print("first few products lambda^gamma:")
for gamma, value in spec.products[:6]:
    print(f"  gamma={gamma}  {value.real:.6f}")
print("closure contains 0:", spec.closure_contains_zero)

# B does not move the truncated eigenvalues: the multiset matches anyway
got = truncated_spectrum(sym, N)
want = [v for _, v in eigenvalue_products(spec.eigenvalues, N)]
print("multiset distance truncation vs products:", multiset_distance(want, got))

# eigenfunctions are explicit: monomials in v - C with C = (I - A1)^{-1} B1
ef = construct_eigenfunction(sym, (), (1, 1))
print("\neigenfunction for gamma = (1,1):")
print("  eigenvalue:", ef.eigenvalue)
print("  residual of C_phi F = lambda F:", verify_eigenfunction(ef))

# with exact rational data the residual is exactly zero
ef_exact = construct_eigenfunction(sym, (), (1, 1), exact=True)
print("  exact-mode residual:", verify_eigenfunction(ef_exact))
