"""
Sq^2 and the KO summand counts
==============================

Sq^2 acts on mod 2 cohomology as a differential.  Its homology (alpha)
and ranks (beta) give the number of each kind of KO summand.
"""

from bottlab import steenrod
from bottlab.cohom import f2_algebra
from bottlab.towers import a_family, bounded_flag

lst = bounded_flag(4)
alg = f2_algebra(lst)
for j in range(1, 5):
    print(f"Sq2(x{j}) =", steenrod.sq2(alg.gen(j)))

steenrod.check_sq2_squared(lst)
for k in range(2, 8):
    print(k, "terminally odd:", steenrod.bb_profile(bounded_flag(k)).to_json())
print("totally even:", steenrod.bb_profile(a_family(5)).to_json())

prof = steenrod.bb_profile(bounded_flag(5))
for n in range(0, -8, -1):
    print(f"KO^{n} =", steenrod.ko_groups_from_bb(prof, n))
