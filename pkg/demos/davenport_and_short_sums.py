# Exact invariant values for small groups by exhaustive search.
from zerosum import GroupSpec, LengthSet, compute_s_L, davenport, zero_sum_length_spectrum

G = GroupSpec.parse("3^1^3")  # C_3^3
print(G, "order", G.order(), "D* =", G.davenport_star())

v = davenport(G)
print("D(G) =", v.value, "nodes:", v.certificate.nodes_explored)

# s_{<=t}: every long enough sequence has a short zero-sum
for t in (7, 6, 5, 4, 3):
    v = compute_s_L(G, LengthSet.range(1, t))
    w = v.certificate.witness
    print(f"s_<={t} = {v.value:2d}   extremal witness spectrum {sorted(zero_sum_length_spectrum(w))}")

# the k-th EGZ constant for k = 1 (L = {3}) is s(C_3^3)
print("s(C_3^3) =", compute_s_L(G, LengthSet.of([3])).value)

print("D(C_5^3) =", davenport(GroupSpec.homocyclic(5, 3)).value)
