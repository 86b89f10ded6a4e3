"""
Boundedness, norm, and the truncation certificate
=================================================

C_phi f = f(Az + B) is bounded on the Fock space exactly when ||A|| <= 1
and B is orthogonal to the image of the unit singular directions of A.
The norm has a closed form, and finite sections give certified lower
bounds that converge to it.
"""

import numpy as np

from fockop import AffineSymbol, check_bounded, operator_norm, truncated_norm

# a strict contraction with any B: always bounded, always compact
sym = AffineSymbol(np.array([[0.5]]), np.array([1.0]))
print("phi(z) = z/2 + 1")
print("  bounded:", check_bounded(sym).bounded)
print("  norm   :", operator_norm(sym), "= exp(1/3) =", np.exp(1 / 3))

# the truncated matrices never exceed the closed form, and close the gap
closed = operator_norm(sym)
for N in (5, 10, 20, 30):
    t = truncated_norm(sym, N)
    print(f"  N={N:2d}  truncated {t:.12f}   gap {closed - t:.3e}")

# a boundary case: ||A|| = 1 with a unit singular direction hit by B.
# The verdict comes with a witness vector zeta: |A zeta| = |zeta| and
# <A zeta, B> != 0 certify unboundedness.
bad = AffineSymbol(np.diag([1.0, 0.5]).astype(complex), np.array([1.0, 0.0]))
v = check_bounded(bad)
print("\nphi(z) = (z1 + 1, z2/2)")
print("  bounded:", v.bounded)
print("  witness:", v.witness)

# same A, but B moved into the allowed subspace: bounded, not compact
ok = AffineSymbol(np.diag([1.0, 0.5]).astype(complex), np.array([0.0, 1.0]))
print("\nphi(z) = (z1, z2/2 + 1)")
print("  bounded:", check_bounded(ok).bounded)
print("  norm   :", operator_norm(ok), "(essential norm equals it: not compact)")
