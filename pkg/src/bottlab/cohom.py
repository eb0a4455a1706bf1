"""Square-free monomial quotient algebras and integral cohomology of Bott towers.

The algebra over a tower of height ``k`` has basis ``x_R`` for subsets
``R`` of ``[k]`` (stored as bit masks, bit ``j-1`` for generator ``j``)
and is cut out by relations ``x_j^2 = r_j x_j`` where ``r_j`` only
involves generators of index below ``j``.  The same engine serves the
integral, mod 2, rational-Laurent and K-theory rings.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .coeffs import F2, InhomogeneousError, RationalLaurent
from .towers import BottList, Omniorientation


def mask_to_subset(mask: int) -> Tuple[int, ...]:
    """1-based indices of the bits set in ``mask``."""
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def subset_to_mask(subset: Iterable[int]) -> int:
    m = 0
    for j in subset:
        m |= 1 << (j - 1)
    return m


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _scalar_degree(c) -> int:
    return c.degree() if hasattr(c, "degree") else 0


class QuotientAlgebra:
    """Multiplication engine for one tower and one coefficient ring.

    ``relations[j-1]`` is the degree-2 class ``r_j``; it may be appended
    stage by stage, since products of lower monomials never consult
    higher relations.
    """

    def __init__(self, lst: BottList, one, prefix: str = "x", name: str = ""):
        self.list = lst
        self.k = lst.height
        self.one = one
        self.zero = one - one
        self.prefix = prefix
        self.name = name
        self.relations: List["GradedClass"] = []
        self._rx: List[Dict[int, object]] = []
        self._cache: Dict[Tuple[int, int], Dict[int, object]] = {}

    def __repr__(self):
        return f"QuotientAlgebra({self.name or self.prefix}, {self.list})"

    @property
    def full_mask(self) -> int:
        return (1 << self.k) - 1

    def add_relation(self, r: "GradedClass") -> None:
        j = len(self.relations) + 1
        bit = 1 << (j - 1)
        if any(m >> (j - 1) for m in r.terms):
            raise ValueError(f"relation for generator {j} must use lower generators only")
        self.relations.append(r)
        self._rx.append({m | bit: c for m, c in r.terms.items()})

    # construction helpers

    def element(self, terms: Mapping[int, object]) -> "GradedClass":
        return GradedClass(self, terms)

    def monomial(self, subset: Iterable[int] = (), coeff=None) -> "GradedClass":
        return GradedClass(self, {subset_to_mask(subset): self.one if coeff is None else coeff})

    def gen(self, j: int) -> "GradedClass":
        if not 1 <= j <= self.k:
            raise IndexError(f"generator {j} out of range")
        return GradedClass(self, {1 << (j - 1): self.one})

    def unit(self) -> "GradedClass":
        return GradedClass(self, {0: self.one})

    def zero_class(self) -> "GradedClass":
        return GradedClass(self, {})

    def scalar(self, c) -> "GradedClass":
        return GradedClass(self, {0: c})

    def basis(self) -> List[int]:
        return list(range(1 << self.k))

    # multiplication

    def mono_mul(self, r: int, s: int) -> Dict[int, object]:
        """Reduced product ``x_R * x_S`` as a mask -> coefficient dict.

        The highest duplicated generator is rewritten first; every recursive
        call has a strictly lower highest duplicated index, so this terminates.
        """
        if r > s:
            r, s = s, r
        key = (r, s)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        common = r & s
        if not common:
            res = {r | s: self.one}
        else:
            j = common.bit_length() - 1
            if j >= len(self._rx):
                raise ValueError(f"no relation available for generator {j + 1}")
            bit = 1 << j
            left = self.mono_mul(r ^ bit, s ^ bit)
            acc: Dict[int, object] = {}
            for u, cu in left.items():
                for t, ct in self._rx[j].items():
                    cut = cu * ct
                    for v, cv in self.mono_mul(u, t).items():
                        acc[v] = acc.get(v, self.zero) + cut * cv
            res = {m: c for m, c in acc.items() if c}
        self._cache[key] = res
        return res

    def mul_terms(self, a: Mapping[int, object], b: Mapping[int, object]) -> Dict[int, object]:
        acc: Dict[int, object] = {}
        for r, cr in a.items():
            for s, cs in b.items():
                c = cr * cs
                if not c:
                    continue
                for m, cm in self.mono_mul(r, s).items():
                    acc[m] = acc.get(m, self.zero) + c * cm
        return acc

    def monomial_name(self, mask: int) -> str:
        if not mask:
            return "1"
        return "*".join(f"{self.prefix}{j}" for j in mask_to_subset(mask))


class GradedClass:
    """Immutable element of a :class:`QuotientAlgebra`."""

    __slots__ = ("algebra", "terms", "_key")

    def __init__(self, algebra: QuotientAlgebra, terms: Mapping[int, object]):
        full = algebra.full_mask
        clean = {}
        for m, c in terms.items():
            if m & ~full:
                raise ValueError(f"monomial {m:b} outside [{algebra.k}]")
            if c:
                clean[m] = c
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("GradedClass is immutable")

    def _same(self, other) -> "GradedClass":
        if isinstance(other, GradedClass):
            if other.algebra is not self.algebra:
                raise ValueError("classes live in different algebras")
            return other
        return GradedClass(self.algebra, {0: self.algebra.one * other})

    def __add__(self, other):
        other = self._same(other)
        acc = dict(self.terms)
        zero = self.algebra.zero
        for m, c in other.terms.items():
            acc[m] = acc.get(m, zero) + c
        return GradedClass(self.algebra, acc)

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GradedClass):
            other = self._same(other)
            return GradedClass(self.algebra, self.algebra.mul_terms(self.terms, other.terms))
        return GradedClass(self.algebra, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, other):
        return GradedClass(self.algebra, {m: other * c for m, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.algebra.unit()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "GradedClass":
        """Inverse of ``u + N`` with ``u`` a unit scalar and ``N`` nilpotent."""
        c0 = self.terms.get(0)
        if c0 is None or not (c0 == 1 or c0 == -1):
            raise ValueError("only 1 + nilpotent (up to sign) is invertible here")
        sign = self.algebra.one * c0
        nil = self * sign - self.algebra.unit()
        out = self.algebra.unit()
        term = self.algebra.unit()
        while True:
            term = term * (-nil)
            if not term:
                break
            out = out + term
        return out * sign

    def __bool__(self):
        return bool(self.terms)

    def key(self) -> Tuple:
        """Canonical hashable form (mask ascending)."""
        k = self._key
        if k is None:
            k = tuple(sorted(self.terms.items()))
            object.__setattr__(self, "_key", k)
        return k

    def __eq__(self, other):
        if isinstance(other, GradedClass):
            return self.algebra is other.algebra and self.key() == other.key()
        try:
            return self.key() == self._same(other).key()
        except Exception:
            return False

    def __hash__(self):
        return hash(self.key())

    def coeff(self, subset) -> object:
        m = subset if isinstance(subset, int) else subset_to_mask(subset)
        return self.terms.get(m, self.algebra.zero)

    def degree_of(self, mask: int) -> int:
        return 2 * _popcount(mask) + _scalar_degree(self.terms[mask])

    def degree(self) -> int:
        degs = {self.degree_of(m) for m in self.terms}
        if len(degs) > 1:
            raise InhomogeneousError("class is not homogeneous")
        if not degs:
            raise InhomogeneousError("zero class has no degree")
        return degs.pop()

    def component(self, deg: int) -> "GradedClass":
        """Homogeneous part of total degree ``deg``."""
        return GradedClass(
            self.algebra, {m: c for m, c in self.terms.items() if self.degree_of(m) == deg}
        )

    def map_coeffs(self, f: Callable, algebra: Optional[QuotientAlgebra] = None) -> "GradedClass":
        return GradedClass(algebra or self.algebra, {m: f(c) for m, c in self.terms.items()})

    def __repr__(self):
        return f"GradedClass({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            name = self.algebra.monomial_name(m)
            cs = str(c)
            if name == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(name)
            else:
                parts.append(f"({cs})*{name}" if " " in cs else f"{cs}*{name}")
        return " + ".join(parts)

    def to_json(self, coeff_key: str = "coeff") -> List[Dict]:
        out = []
        for m, c in sorted(self.terms.items()):
            val = c.to_json() if hasattr(c, "to_json") else str(c)
            out.append({"monomial": self.algebra.monomial_name(m), coeff_key: val})
        return out


# integral and mod-2 cohomology


def h_relations(lst: BottList, one=1, algebra: Optional[QuotientAlgebra] = None) -> List[GradedClass]:
    """Classes ``r_j = sum_{i<j} a(i,j) x_i`` with ``x_j^2 = r_j x_j``."""
    alg = algebra if algebra is not None else QuotientAlgebra(lst, one, "x")
    rels = []
    for j in range(1, lst.height + 1):
        col = lst.column(j)
        rels.append(GradedClass(alg, {1 << (i - 1): one * a for i, a in enumerate(col, 1)}))
    return rels


def _build(lst: BottList, one, prefix: str, name: str) -> QuotientAlgebra:
    alg = QuotientAlgebra(lst, one, prefix, name)
    for r in h_relations(lst, one, alg):
        alg.add_relation(r)
    return alg


@lru_cache(maxsize=256)
def h_algebra(lst: BottList) -> QuotientAlgebra:
    """``H^*(M^k; Z)``."""
    return _build(lst, 1, "x", "H")


@lru_cache(maxsize=256)
def f2_algebra(lst: BottList) -> QuotientAlgebra:
    """``H^*(M^k; F_2)``."""
    return _build(lst, F2(1), "x", "H/2")


@lru_cache(maxsize=256)
def hq_algebra(lst: BottList) -> QuotientAlgebra:
    """``H^*(M^k; Q[z, 1/z])``, target of the Chern character."""
    return _build(lst, RationalLaurent.one(), "x", "HQ")


def mul(u: GradedClass, v: GradedClass) -> GradedClass:
    return u * v


def evaluate_fundamental(cls: GradedClass) -> int:
    """Pair with the fundamental class: ``(-1)^k`` times the top coefficient."""
    k = cls.algebra.k
    c = cls.terms.get(cls.algebra.full_mask, 0)
    return c if k % 2 == 0 else -c


def euler_characteristic(lst: BottList) -> int:
    return 2 ** lst.height


def regular_representation(cls: GradedClass) -> List[List[object]]:
    """Matrix of multiplication by ``cls`` in the monomial basis (columns = inputs)."""
    alg = cls.algebra
    n = 1 << alg.k
    mat = [[alg.zero] * n for _ in range(n)]
    for col in range(n):
        prod = alg.mul_terms(cls.terms, {col: alg.one})
        for row, c in prod.items():
            mat[row][col] = c
    return mat


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], zero=0) -> List[List]:
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = [[zero] * p for _ in range(n)]
    for i in range(n):
        row = a[i]
        for t in range(m):
            c = row[t]
            if not c:
                continue
            bt = b[t]
            for j in range(p):
                if bt[j]:
                    out[i][j] = out[i][j] + c * bt[j]
    return out


# Chern classes of omnioriented structures


def _stage_class(alg: QuotientAlgebra, lst: BottList, h: int) -> GradedClass:
    """``A_h = sum_{i<h} a(i,h) x_i``."""
    return GradedClass(alg, {1 << (i - 1): a for i, a in enumerate(lst.column(h), 1)})


def summand_chern_roots(lst: BottList, omni: Omniorientation) -> List[GradedClass]:
    """First Chern classes of the ``2k`` line summands after applying the flips."""
    alg = h_algebra(lst)
    roots = []
    for h in range(1, lst.height + 1):
        xh = alg.gen(h)
        r0 = -xh
        r1 = _stage_class(alg, lst, h) - xh
        roots.append(-r0 if omni.delta[h - 1] else r0)
        roots.append(-r1 if omni.epsilon[h - 1] else r1)
    return roots


def total_chern(lst: BottList, omni: Omniorientation) -> GradedClass:
    """Total Chern class of the stably complex structure of ``omni``."""
    if omni.k != lst.height:
        raise ValueError("omniorientation length differs from tower height")
    alg = h_algebra(lst)
    out = alg.unit()
    for root in summand_chern_roots(lst, omni):
        out = out * (alg.unit() + root)
    return out


def chern_classes(total: GradedClass) -> List[GradedClass]:
    """``[c_0, c_1, ..., c_k]`` from a total Chern class."""
    k = total.algebra.k
    return [total.component(2 * i) for i in range(k + 1)]


def partitions(n: int, largest: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of ``n`` in lexicographically decreasing order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def partition_key(p: Tuple[int, ...]) -> str:
    return "+".join(map(str, p))


def chern_numbers_from_total(total: GradedClass) -> Dict[str, int]:
    k = total.algebra.k
    cs = chern_classes(total)
    out: Dict[str, int] = {}
    for p in partitions(k):
        prod = total.algebra.unit()
        for part in p:
            prod = prod * cs[part]
        out[partition_key(p)] = evaluate_fundamental(prod)
    return out


def chern_numbers(lst: BottList, omni: Omniorientation) -> Dict[str, int]:
    """All Chern numbers ``c_omega[M^k]``, keyed ``"w1+w2+..."``."""
    return chern_numbers_from_total(total_chern(lst, omni))
