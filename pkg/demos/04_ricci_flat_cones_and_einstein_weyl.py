"""Cone exponents, Ricci-flatness and the Einstein-Weyl gauge.

Raising the potential to b = I / (l (m + 1)) flattens the cone: b = 1
over projective space (the flat covering), b = 1/2 on the level-two
line bundle (the Kleinian double cover) and b = 2/3 on the conifold.
In the rescaled gauge the metric solves the Einstein-Weyl equations:
Ric = (n-2)(|t|^2 g - t (x) t) for the half Lee form t, and the Weyl
connection with Higgs field theta is Ricci-flat.
"""
from fractions import Fraction as Q

from flagcones import resolve_case, ricci_flat_exponent, dhomothetic_constant, run_suite

print("== cone exponents and transverse rescaling constants ==")
for case, ell in [("cp:2", 1), ("cp:1", 2), ("conifold", 1), ("gr24", 1), ("quadric:6", 1)]:
    chart = resolve_case(case)
    print(f"{case:10s} l={ell}:  b = {ricci_flat_exponent(chart, ell)}   "
          f"a = {dhomothetic_constant(chart, ell)}   (I = {chart.fano}, m = {chart.m})")

print()
print("== Ricci-flatness of K^b ==")
for case, ell, b in [("cp:2", 1, None), ("cp:1", 2, None), ("conifold", 1, None), ("conifold", 1, Q(1))]:
    rep = run_suite("ricci-flat", case, ell=ell, b=b, seed=7, count=8)
    label = f"b={b}" if b is not None else "b=auto"
    print(f"{case:10s} {label:8s} residual {rep.residuals[0].max:.2e}  verdict {rep.verdict}")

print()
print("== Einstein-Weyl residuals in the rescaled gauge ==")
for case, b in [("hopf:cp2", None), ("conifold", None), ("conifold", Q(1))]:
    rep = run_suite("einstein-weyl", case, b=b, seed=7, count=6)
    worst = {r.name: f"{r.max:.2e}" for r in rep.residuals}
    print(f"{case:10s} b={b or 'auto'}: verdict {rep.verdict}")
    for k, v in worst.items():
        print(f"    {k:24s} {v}")
