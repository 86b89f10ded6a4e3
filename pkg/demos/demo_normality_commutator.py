"""
Normality and the truncated commutator oracle
=============================================

C_phi is normal iff B = 0 and A is a normal matrix; hyponormal adds
nothing (it already forces normal), and essentially normal means
compact or normal.  With B = 0 the truncation commutes with taking
adjoints, so the Frobenius norm of [M*, M] is an independent oracle.
"""

import numpy as np

from fockop import (
    AdjointNotGradedError,
    AffineSymbol,
    check_essentially_normal,
    check_hyponormal,
    check_normal,
    truncated_commutator_norm,
)

# a unitary A, B = 0: normal, and the finite commutator vanishes
rot = AffineSymbol(np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex), np.zeros(2))
print("A = rotation by 90 degrees, B = 0")
print("  normal      :", check_normal(rot))
print("  [M*, M] at N=6:", truncated_commutator_norm(rot, 6))

# the nilpotent shear is as far from normal as a contraction gets
nil = AffineSymbol(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex), np.zeros(2))
print("\nA = [[0,1],[0,0]], B = 0")
print("  normal      :", check_normal(nil))
print("  [M*, M] at N=6:", truncated_commutator_norm(nil, 6))

# compact but not normal: still essentially normal (compact wins)
comp = AffineSymbol(np.array([[0.5]]), np.array([1.0]))
print("\nphi(z) = z/2 + 1")
print("  normal             :", check_normal(comp))
print("  hyponormal         :", check_hyponormal(comp))
print("  essentially normal :", check_essentially_normal(comp))

# with B != 0 the finite section of the adjoint is not the section of
# a composition operator, so the commutator oracle refuses to answer
try:
    truncated_commutator_norm(comp, 6)
except AdjointNotGradedError as exc:
    print("  commutator oracle:", exc)
