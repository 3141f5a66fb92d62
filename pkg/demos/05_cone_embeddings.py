"""Highest-weight cones and Hopf quotients.

The reduction map ``(z, w) -> w n(z) v+`` lands on the affine cone cut
out by quadrics, its squared norm reproduces the potential exactly, and
composing with the annulus representative of the scaling group gives a
point of the diagonal Hopf quotient.
"""
from fractions import Fraction as Q

import numpy as np

from flagcones import (GammaGroup, determinant_residual, kodaira_embedding,
                       make_spec, plucker_residual, quadric_residual, remmert)
from flagcones.exact import QC
from flagcones.hvcone import remmert_norm_sq

rng = np.random.default_rng(1)

print("== membership residuals of reduction images ==")
spec = make_spec("gr24")
z = rng.normal(size=4) + 1j * rng.normal(size=4)
v = remmert(spec, z, 1.3)
print("Klein quadric, pluecker residual:", plucker_residual(3, 2, list(v / np.linalg.norm(v))))

spec = make_spec("quadric:8")
z = rng.normal(size=6) + 1j * rng.normal(size=6)
v = remmert(spec, z, 0.7 - 0.2j)
print("eight-dim quadric, isotropy residual:", quadric_residual(8, v / np.linalg.norm(v)))

spec = make_spec("conifold")
v = remmert(spec, [0.4 + 0.1j, -0.2j], 1.1)
print("conifold, rank-one residual:", determinant_residual(v / np.linalg.norm(v)))

print()
print("== the squared norm is the potential, exactly ==")
spec = make_spec("conifold")
z = (QC(Q(1, 2)), QC(0, Q(2, 3)))
w = QC(Q(7, 5))
print("|R(z,w)|^2 =", remmert_norm_sq(spec, z, w, exact=True), " K_1(z,w) =", spec.K1(z, w))

print()
print("== Hopf quotient representatives ==")
gamma = GammaGroup(0.3 + 0.2j)
spec = make_spec("hopf:cp1")
for wmod in (0.5, 1.0, 5.0, 40.0):
    hp = kodaira_embedding(spec, gamma, [0.7], wmod)
    print(f"|w| = {wmod:5.1f}: branch {hp.branch:3d}, representative norm {hp.norm:.6f}")
h1 = kodaira_embedding(spec, gamma, [0.7], 2.2)
h2 = kodaira_embedding(spec, gamma, [0.7], gamma.lam * 2.2)
print("equivariance gap:", float(np.max(np.abs(h1.representative - h2.representative))))
