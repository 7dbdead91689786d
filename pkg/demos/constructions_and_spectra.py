# Extremal sequences and their zero-sum length spectra.
from zerosum import GroupSpec, count_table, zero_sum_length_spectrum
from zerosum import construct_cor5_lower, construct_egz_lower, construct_thm2_lower, construct_thm6_lower

S = construct_thm2_lower(5, 3)  # minimal zero-sum of length D(C_5^3)
print(S.length(), sorted(zero_sum_length_spectrum(S)))

S = construct_thm6_lower(3, 1)
print(S.serialize())
print("spectrum", sorted(zero_sum_length_spectrum(S)))  # only 5 and 6
print("counts", count_table(S).as_dict())

for p in (3, 5, 7):
    S = construct_cor5_lower(p, 1)
    print(f"p={p}: length {S.length()}, spectrum {sorted(zero_sum_length_spectrum(S))}")

# 0^[8] plus a zero-sum free sequence of length 6: no zero-sum of length 9
S = construct_egz_lower(GroupSpec.homocyclic(3, 3), 3)
print("length", S.length(), "N^9 =", count_table(S)[9])
