# Counting congruences mod p, checked on random inputs.
import random

from zerosum import GroupSpec, corollary_pn, count_table, olson_alternating, random_sequence
from zerosum import lemma6_matrix, lemma6_matrix_det, lucas_binomial, theorem3_rank_argument, window_identity_check

rng = random.Random(7)
G = GroupSpec.parse("9,9,9")

S = random_sequence(G, 30, rng)  # |S| >= D* = 25
print(olson_alternating(S, 3).to_json())

S = random_sequence(G, 15 + 18, rng)
print(corollary_pn(S, 3, 9).to_json())

# over C_3^3 a length-15 sequence has N^9 = 1 mod 3, hence a zero-sum of length 9
S = random_sequence(GroupSpec.homocyclic(3, 3), 15, rng)
print("N^9 =", count_table(S)[9], "mod 3 ->", count_table(S)[9] % 3)

r = window_identity_check(S, 6, 10)
print("window identity", r.lhs, "==", r.rhs, r.holds)

print(lucas_binomial(10, 4, 3), lucas_binomial(7, 4, 3))
print(lemma6_matrix(3, 2), lemma6_matrix_det(3, 2))
print(theorem3_rank_argument(7, 1, 3, 4).to_json())
