"""
Complex K-theory
================

K(M) is a Laurent-polynomial algebra on classes g_j (the reduced line
bundles), with z of degree -2.  Conjugation and the Chern character are
exact ring maps.
"""

from bottlab import ktheory
from bottlab.towers import Omniorientation, bounded_flag

lst = bounded_flag(3)
alg = ktheory.k_algebra(lst)
for j, rel in enumerate(ktheory.k_relations(lst), 1):
    print(f"g{j}^2 = ({rel}) * g{j}")

g3 = alg.gen(3)
print("conj(g3) =", ktheory.conjugate(g3))
print("ch(g3)   =", ktheory.chern_character(g3))

# line bundle attached to an integer word
print("bundle(1,-1,0) =", ktheory.bundle_class(lst, (1, -1, 0)))

# the difference element of an omniorientation decides its stable class
for text in ("000;000", "010;000", "111;000"):
    o = Omniorientation.parse(text)
    print(text, "->", ktheory.diff_element(lst, o))
