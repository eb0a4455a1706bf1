"""
Towers and their cohomology
===========================

A tower of height k is fixed by a triangular list of integers.  The
integral cohomology has one generator x_j per stage and the single
relation x_j^2 = (sum_i a(i,j) x_i) x_j.
"""

from bottlab import cohom
from bottlab.towers import BottList, bounded_flag

# the list "1;0,1" has height 3: stage 2 twists by 1, stage 3 by (0, 1)
lst = BottList.parse("1;0,1")
print(lst, lst.parity)

alg = cohom.h_algebra(lst)
for j in range(1, lst.height + 1):
    print(f"x{j}^2 =", alg.gen(j) * alg.gen(j))

# additive basis: square-free monomials, 2^k of them
print(len(alg.basis()), "basis elements")

# top monomial evaluated on the fundamental class
print("<x1 x2 x3, [M]> =", cohom.evaluate_fundamental(alg.monomial([1, 2, 3])))

# multiplication by a class as a matrix on the basis
m = cohom.regular_representation(alg.gen(2))
print("\n".join(" ".join(f"{v:2d}" for v in row) for row in m))

print("Euler characteristic of B_4:", cohom.euler_characteristic(bounded_flag(4)))
