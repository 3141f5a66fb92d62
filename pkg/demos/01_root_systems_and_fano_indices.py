"""Exact root-system data and anticanonical indices for classical flags.

Walks through the combinatorial layer: positive roots, fundamental
weights, the anticanonical weight of a parabolic quotient, and the Fano
index as the gcd of its pairings with the Picard generators.
"""
from flagcones import build_root_system, casimir_eigenvalue, flag, killing_dual_pairing

print("== A2: the full flag of the projective plane ==")
a2 = build_root_system("A", 2)
print("simple roots:", [tuple(map(str, r)) for r in a2.simple_roots])
print("positive roots:", len(a2.positive_roots))
print("cartan matrix:", a2.cartan_matrix)

full = flag(a2, set())
print("anticanonical weight (fund. basis):", tuple(map(str, full.delta_p.coeffs)))
print("fano index of the full flag:", full.fano_index)

print()
print("== Grassmannians: the index is always n + 1 ==")
for n in range(1, 7):
    rs = build_root_system("A", n)
    row = [flag(rs, set(range(1, n + 1)) - {k}).fano_index for k in range(1, n + 1)]
    print(f"  Gr(k, C^{n+1}) for k = 1..{n}:", row)

print()
print("== Even quadric of rank four ==")
d4 = flag(build_root_system("D", 4), {2, 3, 4})
print("dim_C:", d4.dim_complex, " fano index:", d4.fano_index)

print()
print("== Casimir constants from the ad-trace Killing form ==")
a1 = build_root_system("A", 1)
omega = a1.fundamental_weight(1)
print("c(omega)     =", casimir_eigenvalue(omega), " (the defining module of rank one)")
print("c(2 omega)   =", casimir_eigenvalue(a1.weight([2])), " (adjoint: always 1 in this normalisation)")
alpha = a1.weight_from_eps(a1.simple_roots[0])
print("kappa*(alpha, alpha) =", killing_dual_pairing(alpha, alpha))
