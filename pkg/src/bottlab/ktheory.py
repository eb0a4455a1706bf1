"""Complex K-theory of Bott towers over ``Z[z, 1/z]``.

Generators ``g_j`` have degree 2 and ``z g_j`` is the virtual bundle
``gamma_j - 1``.  Line bundles with negative exponents are handled by
the finite Neumann series of ``1 + z g_j``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Sequence, Tuple

from .coeffs import Laurent, RationalLaurent
from .cohom import GradedClass, QuotientAlgebra, hq_algebra
from .towers import BottList, Omniorientation

KClass = GradedClass

Z = Laurent.z()
ZINV = Laurent.z(-1)


def _partial_k_algebra(lst: BottList) -> QuotientAlgebra:
    alg = QuotientAlgebra(lst, Laurent.one(), "g", "K")
    for j in range(1, lst.height + 1):
        prod = alg.unit()
        for i, a in enumerate(lst.column(j), 1):
            if a:
                prod = prod * ((alg.unit() + Z * alg.gen(i)) ** a)
        alg.add_relation((prod - alg.unit()) * ZINV)
    return alg


@lru_cache(maxsize=256)
def k_algebra(lst: BottList) -> QuotientAlgebra:
    """``K^*(M^k)`` with ``g_j^2 = z^{-1}(prod_{i<j} (1 + z g_i)^{a(i,j)} - 1) g_j``."""
    return _partial_k_algebra(lst)


def k_relations(lst: BottList) -> List[KClass]:
    """The classes ``r_j`` with ``g_j^2 = r_j g_j``."""
    return list(k_algebra(lst).relations)


@lru_cache(maxsize=4096)
def _bundle_cached(lst: BottList, word: Tuple[int, ...]) -> KClass:
    alg = k_algebra(lst)
    out = alg.unit()
    for i, c in enumerate(word, 1):
        if c:
            out = out * ((alg.unit() + Z * alg.gen(i)) ** c)
    return out


def bundle_class(lst: BottList, word: Sequence[int]) -> KClass:
    """Class of ``gamma_1^{c_1} (x) ... (x) gamma_k^{c_k}`` in ``K^0``."""
    word = tuple(int(c) for c in word)
    if len(word) != lst.height:
        raise ValueError(f"word length {len(word)} differs from height {lst.height}")
    return _bundle_cached(lst, word)


@lru_cache(maxsize=256)
def _conj_generators(lst: BottList) -> Tuple[KClass, ...]:
    alg = k_algebra(lst)
    out = []
    for j in range(1, lst.height + 1):
        g = alg.gen(j)
        # g/(1 + z g) = sum_i (-z)^i g^{i+1}, finite since g is nilpotent
        total = alg.zero_class()
        term = g
        while term:
            total = total + term
            term = term * g * (-Z)
        out.append(total)
    return tuple(out)


class _ConjTable:
    def __init__(self, lst: BottList):
        self.alg = k_algebra(lst)
        self.gens = _conj_generators(lst)
        self.mono: Dict[int, KClass] = {0: self.alg.unit()}

    def of_mask(self, mask: int) -> KClass:
        hit = self.mono.get(mask)
        if hit is None:
            j = mask.bit_length() - 1
            hit = self.of_mask(mask ^ (1 << j)) * self.gens[j]
            self.mono[mask] = hit
        return hit


@lru_cache(maxsize=256)
def _conj_table(lst: BottList) -> _ConjTable:
    return _ConjTable(lst)


def conjugate(cls: KClass) -> KClass:
    """Complex conjugation: ``z -> -z``, ``g_j -> g_j / (1 + z g_j)``."""
    table = _conj_table(cls.algebra.list)
    acc: Dict[int, Laurent] = {}
    for m, c in cls.terms.items():
        cc = c.conjugate()
        for mm, v in table.of_mask(m).terms.items():
            acc[mm] = acc.get(mm, Laurent.zero()) + cc * v
    return GradedClass(cls.algebra, acc)


@lru_cache(maxsize=256)
def _ch_table(lst: BottList) -> List[GradedClass]:
    hq = hq_algebra(lst)
    gens = []
    for j in range(1, lst.height + 1):
        xj = hq.gen(j)
        total = hq.zero_class()
        power = xj
        m = 1
        while power:
            total = total + power * RationalLaurent({m - 1: Fraction(1, factorial(m))})
            power = power * xj
            m += 1
        gens.append(total)
    table = [hq.unit()]
    for mask in range(1, 1 << lst.height):
        j = mask.bit_length() - 1
        table.append(table[mask ^ (1 << j)] * gens[j])
    return table


def chern_character(cls: KClass) -> GradedClass:
    """Ring map ``g_j -> z^{-1}(exp(z x_j) - 1)`` into rational cohomology."""
    lst = cls.algebra.list
    table = _ch_table(lst)
    hq = hq_algebra(lst)
    out = hq.zero_class()
    for m, c in cls.terms.items():
        out = out + table[m] * RationalLaurent(dict(c.terms))
    return out


# difference elements of omniorientations


def _flip_contribution(lst: BottList, word: Tuple[int, ...]) -> KClass:
    """Complexified difference element of conjugating the summand of ``word``: z(conj(xi) - xi)."""
    neg = tuple(-c for c in word)
    return (bundle_class(lst, neg) - bundle_class(lst, word)) * Z


def summand_words(lst: BottList, h: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Exponent words of the two canonical summands at stage ``h``."""
    k = lst.height
    first = tuple(-1 if i == h else 0 for i in range(1, k + 1))
    col = lst.column(h)
    second = tuple((col[i - 1] if i < h else 0) - (1 if i == h else 0) for i in range(1, k + 1))
    return first, second


@lru_cache(maxsize=256)
def flip_contributions(lst: BottList) -> Tuple[Tuple[KClass, KClass], ...]:
    """Per stage, the complexified differences of flipping the delta and epsilon summands."""
    out = []
    for h in range(1, lst.height + 1):
        w0, w1 = summand_words(lst, h)
        out.append((_flip_contribution(lst, w0), _flip_contribution(lst, w1)))
    return tuple(out)


def diff_element(lst: BottList, omni: Omniorientation) -> KClass:
    """Complexification of the difference element of ``omni`` against the canonical structure."""
    if omni.k != lst.height:
        raise ValueError("omniorientation length differs from tower height")
    contrib = flip_contributions(lst)
    out = k_algebra(lst).zero_class()
    for h in range(lst.height):
        if omni.delta[h]:
            out = out + contrib[h][0]
        if omni.epsilon[h]:
            out = out + contrib[h][1]
    return out
