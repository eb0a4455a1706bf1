"""
KO-theory of the two parity families
====================================

Terminally odd towers have KO generated by d_1 and the classes
n(R;j)_i.  Totally even towers are generated by the d_j with one
relation per stage.  Everything is checked against complexification.
"""

from bottlab import kotheory
from bottlab.coeffs import KOScalar
from bottlab.towers import a_family, bounded_flag

b2 = bounded_flag(2)
d1 = kotheory.d_class(b2, [1])
n1 = kotheory.n_class(b2, (), 2, 1)
print("d1 * n_1 =", d1 * n1)
print("x * n_1 =", n1.scale(KOScalar.x()))
print("c(n_1) =", n1.complexify())

lst = bounded_flag(4)
print("KO^-2 of B_4:", kotheory.ko_minus2_group(lst))
for b in kotheory.ko_minus2_basis(lst):
    print("  ", b.element)

a4 = a_family(4)
for j in range(1, 5):
    rel = kotheory.te_relation(a4, j)
    print(f"d{j}^2 = ({rel.value}) d{j}")
print("KO^-2 of A_4 (unreduced):", kotheory.ko_minus2_group(a4, reduced=False))
