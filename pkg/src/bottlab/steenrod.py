"""Sq^2 on mod-2 cohomology and the resulting KO summand counts.

Integral cohomology of a Bott tower is torsion free and concentrated in
even degrees, so Sq^1 vanishes identically and Sq^2 squares to zero.
The summand counts follow from the ranks of Sq^2 in each degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, List, Tuple

from .coeffs import ko_point_group
from .cohom import GradedClass, _popcount, f2_algebra
from .towers import BottList


class ConsistencyError(RuntimeError):
    """An internal invariant failed; indicates a reduction bug."""


def sq1(cls: GradedClass) -> GradedClass:
    # even cells and torsion-free integral cohomology
    return cls.algebra.zero_class()


def sq2_monomial(alg, mask: int) -> GradedClass:
    """Cartan formula on ``x_R``: sum over ``j`` in ``R`` of ``x_j^2 x_{R - j}``."""
    out = alg.zero_class()
    m = mask
    while m:
        low = m & -m
        rest = GradedClass(alg, {mask ^ low: alg.one})
        xj = GradedClass(alg, {low: alg.one})
        out = out + xj * xj * rest
        m ^= low
    return out


def sq2(cls: GradedClass) -> GradedClass:
    alg = cls.algebra
    out = alg.zero_class()
    for m, c in cls.terms.items():
        if c:
            out = out + sq2_monomial(alg, m)
    return out


def gf2_rank(rows: List[int]) -> int:
    """Rank over GF(2) of int-bitset rows."""
    pivots: Dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = row
                rank += 1
                break
            row ^= p
    return rank


def sq2_matrix(lst: BottList, q: int) -> Tuple[List[int], List[int], List[int]]:
    """Sq^2 from ``H^{2q}`` to ``H^{2q+2}`` as bitset rows over the target basis.

    Returns ``(rows, source_masks, target_masks)``.
    """
    alg = f2_algebra(lst)
    k = lst.height
    src = [m for m in range(1 << k) if _popcount(m) == q]
    tgt = [m for m in range(1 << k) if _popcount(m) == q + 1]
    pos = {m: i for i, m in enumerate(tgt)}
    rows = []
    for m in src:
        img = sq2_monomial(alg, m)
        bits = 0
        for t in img.terms:
            bits |= 1 << pos[t]
        rows.append(bits)
    return rows, src, tgt


@dataclass(frozen=True)
class BBProfile:
    """Multiplicities of sphere (``alpha``) and suspended CP^2 (``beta``) summands.

    ``beta[q]`` counts summands whose bottom cell sits in degree ``2q + 2``.
    """

    alpha: Tuple[int, ...]
    beta: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.alpha) - 1

    def to_json(self) -> Dict[str, List[int]]:
        return {"alpha": list(self.alpha), "beta": list(self.beta)}


def sq2_ranks(lst: BottList) -> List[int]:
    """``rank(Sq^2: H^{2q} -> H^{2q+2})`` for ``q = 0..k-1``."""
    return [gf2_rank(sq2_matrix(lst, q)[0]) for q in range(lst.height)]


def check_sq2_squared(lst: BottList) -> None:
    alg = f2_algebra(lst)
    for m in range(1 << lst.height):
        if sq2(sq2_monomial(alg, m)):
            raise ConsistencyError(f"Sq2 Sq2 != 0 on {alg.monomial_name(m)}")


def bb_profile(lst: BottList, check: bool = True) -> BBProfile:
    """Summand counts from the ranks of Sq^2."""
    k = lst.height
    if check:
        check_sq2_squared(lst)
    ranks = sq2_ranks(lst)
    # Sq^2 on H^0 is zero; a CP^2 summand with cells 2q+2, 2q+4 gives rank in degree 2q+2
    beta = tuple(ranks[q + 1] for q in range(max(k - 1, 0)))
    alpha = []
    for p in range(k + 1):
        out_rank = beta[p - 1] if 1 <= p <= len(beta) else 0
        in_rank = beta[p - 2] if 2 <= p <= len(beta) + 1 else 0
        a = comb(k, p) - out_rank - in_rank
        if a < 0:
            raise ConsistencyError(f"negative alpha_{p} = {a}")
        alpha.append(a)
    prof = BBProfile(tuple(alpha), beta)
    if sum(prof.alpha) + 2 * sum(prof.beta) != 2 ** k:
        raise ConsistencyError("dimension count mismatch")
    return prof


def kocor_profile(lst: BottList) -> BBProfile:
    """Closed forms for the two named families."""
    k = lst.height
    if lst.is_totally_even:
        return BBProfile(tuple(comb(k, p) for p in range(k + 1)), (0,) * max(k - 1, 0))
    if lst.is_terminally_odd:
        alpha = tuple(1 if p <= 1 else 0 for p in range(k + 1))
        beta = tuple(sum(comb(h, q) for h in range(q, k - 1)) for q in range(max(k - 1, 0)))
        return BBProfile(alpha, beta)
    raise ValueError("closed form only for totally even or terminally odd lists")


@dataclass(frozen=True)
class GroupDescriptor:
    """Finitely generated abelian group ``Z^free + sum Z/t``."""

    free: int
    torsion: Tuple[int, ...] = ()

    def __str__(self):
        parts = []
        if self.free:
            parts.append("Z" if self.free == 1 else f"Z^{self.free}")
        for t in sorted(set(self.torsion)):
            n = self.torsion.count(t)
            parts.append(f"Z/{t}" if n == 1 else f"(Z/{t})^{n}")
        return " + ".join(parts) or "0"

    def to_json(self):
        return {"free": self.free, "torsion": list(self.torsion)}


def ko_groups_from_bb(profile: BBProfile, n: int, reduced: bool = True) -> GroupDescriptor:
    """Additive ``KO^n(M^k)`` from the summand counts.

    Each sphere summand ``S^{2p}`` contributes ``KO_{2p-n}`` of a point; each
    suspended CP^2 contributes one ``Z`` in even degrees.  With ``reduced``
    the basepoint copy of ``S^0`` is dropped.
    """
    free = 0
    torsion: List[int] = []
    for p, a in enumerate(profile.alpha):
        if reduced and p == 0:
            a -= 1
        if a <= 0:
            continue
        f, t = ko_point_group(2 * p - n)
        free += a * f
        if t:
            torsion.extend([t] * a)
    if n % 2 == 0:
        free += sum(profile.beta)
    return GroupDescriptor(free, tuple(torsion))
