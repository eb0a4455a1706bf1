"""
Stably complex structures from omniorientations
===============================================

Each of the 4^k omniorientations gives a stably complex structure.
Grouping them by difference element counts the distinct structures;
Chern numbers decide which ones bound.
"""

from bottlab import structures
from bottlab.towers import BottList, bounded_flag, cp1_power, family_list

for a in range(0, 5):
    rep = structures.enumerate_structures(BottList.parse(str(a)))
    print(f"a={a}: o={rep.o_count} b={rep.b_count} ac={rep.ac_count}")

for k in range(1, 6):
    rep = structures.enumerate_structures(bounded_flag(k), jobs=2)
    print(f"B_{k}: o={rep.o_count} b={rep.b_count}")

rep = structures.enumerate_structures(cp1_power(2))
for c in rep.classes:
    print(c.omni.to_text(), c.chern_numbers, "bounds" if c.bounds else "")

big = family_list("big-entry", 4, seed=3)
print(big, structures.enumerate_structures(big).o_count)

for check in structures.verify_paper("cp1-power", 3):
    print("PASS" if check.passed else "FAIL", check.k, check.claim)
