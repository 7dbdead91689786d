# Constructive zero-sums of length 2*3^n, 3*3^n, 5*3^n over C_{3^n}^3.
import random
import time

from zerosum import GroupSpec, find_2x, find_3x, find_5x, random_sequence

rng = random.Random(1)

G = GroupSpec.homocyclic(9, 3)
S = random_sequence(G, 55, rng)  # 7*9 - 8
t = time.perf_counter()
w = find_2x(S)
print("C_9^3, |S| = 55 -> zero-sum of length", w.sub.length(), "depth", w.info["depth"], f"{time.perf_counter() - t:.3f}s")
print(w.sub.serialize())

G = GroupSpec.homocyclic(27, 3)
S = random_sequence(G, 181, rng)  # 7*27 - 8
w = find_2x(S)
print("C_27^3, |S| = 181 ->", w.sub.length(), "depth", w.info["depth"], "sum", w.sub.sigma())

C33 = GroupSpec.homocyclic(3, 3)
print("find_3x:", find_3x(random_sequence(C33, 15, rng)).sub.length())
print("find_5x:", find_5x(random_sequence(C33, 21, rng)).sub.length())
