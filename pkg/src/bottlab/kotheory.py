"""Real K-theory of totally even and terminally odd Bott towers.

Classes are KOScalar combinations of generators:

* ``d_R`` (products of the degree-2 classes ``d_j``) for totally even towers,
  and ``d1`` alone for terminally odd ones;
* ``n(R;j)_i`` for terminally odd towers, ``R`` a subset of ``[j-2]``,
  of degree ``2(|R| - i)``, stored with ``i`` in ``0..3`` and the rest of
  the index carried by a power of ``y``.

Every generator has an explicit complexification in ``K^*``.  Products on
terminally odd towers are decided by writing the complexified product in
the complexified free basis and solving the integer system exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .coeffs import E, E2, ONE, X, KOScalar, Laurent
from .cohom import GradedClass, QuotientAlgebra, _popcount, mask_to_subset
from .ktheory import KClass, ZINV, bundle_class, conjugate, k_algebra
from .steenrod import ConsistencyError, GroupDescriptor
from .towers import BottList, a_family


class UnsupportedFamilyError(ValueError):
    """KO computations need a totally even or terminally odd list."""


def family(lst: BottList) -> str:
    """``"totally_even"`` or ``"terminally_odd"``; low heights count as totally even."""
    if lst.is_totally_even:
        return "totally_even"
    if lst.is_terminally_odd:
        return "terminally_odd"
    raise UnsupportedFamilyError(f"unsupported family: {lst} has mixed parity")


@dataclass(frozen=True, order=True)
class KOGenerator:
    """A module generator: ``one``, ``d`` (monomial ``d_R``) or ``n`` (``n(R;j)_i``)."""

    kind: str
    mask: int = 0
    j: int = 0
    i: int = 0

    def __post_init__(self):
        if self.kind not in ("one", "d", "n"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == "n":
            if self.j < 2:
                raise ValueError("n(R;j) needs j >= 2")
            if self.mask >> (self.j - 2):
                raise ValueError(f"R must lie in [1..{self.j - 2}]")
            if not 0 <= self.i < 4:
                raise ValueError("stored n-index must be in 0..3")
        if self.kind == "d" and not self.mask:
            raise ValueError("d_R needs R nonempty; use 'one'")

    @property
    def degree(self) -> int:
        if self.kind == "one":
            return 0
        if self.kind == "d":
            return 2 * _popcount(self.mask)
        return 2 * (_popcount(self.mask) - self.i)

    @property
    def name(self) -> str:
        if self.kind == "one":
            return "1"
        if self.kind == "d":
            return "*".join(f"d{j}" for j in mask_to_subset(self.mask))
        inner = ",".join(map(str, mask_to_subset(self.mask)))
        return f"n({{{inner}}};{self.j})_{self.i}"

    def __str__(self):
        return self.name


ONE_GEN = KOGenerator("one")


def d_gen(subset: Sequence[int]) -> KOGenerator:
    m = 0
    for j in subset:
        m |= 1 << (j - 1)
    return KOGenerator("d", m)


def n_gen(subset: Sequence[int], j: int, i: int) -> Tuple[KOGenerator, int]:
    """Normalized ``n(R;j)_i``: the stored generator and the ``y`` power it carries."""
    m = 0
    for r in subset:
        m |= 1 << (r - 1)
    return KOGenerator("n", m, j, i % 4), i // 4


# complexification of generators


def _check_list(lst: BottList, gen: KOGenerator) -> None:
    k = lst.height
    if gen.kind == "d" and gen.mask >> k:
        raise ValueError(f"{gen} outside height {k}")
    if gen.kind == "n" and gen.j > k:
        raise ValueError(f"{gen} outside height {k}")


def _b(lst: BottList, j: int) -> int:
    return (lst.a(j - 1, j) - 1) // 2


def _unit_word(k: int, h: int, power: int) -> Tuple[int, ...]:
    return tuple(power if i == h else 0 for i in range(1, k + 1))


@lru_cache(maxsize=256)
def _d_complex(lst: BottList) -> Tuple[KClass, ...]:
    """``c(d_j)`` for each stage: ``gamma^{-b_j} g_j`` with ``b_j`` the half stage word."""
    alg = k_algebra(lst)
    k = lst.height
    out = []
    fam = family(lst)
    for j in range(1, k + 1):
        if fam == "terminally_odd" and j > 1:
            out.append(None)
            continue
        half = tuple(-(c // 2) for c in lst.column(j)) + (0,) * (k - j + 1)
        out.append(bundle_class(lst, half) * alg.gen(j))
    return tuple(out)


@lru_cache(maxsize=4096)
def _n_parts(lst: BottList, mask: int, j: int) -> Tuple[KClass, KClass]:
    """``(conj(gamma)^b g_{R;j}, gamma^b conj(g_{R;j}))`` for stage ``j``."""
    alg = k_algebra(lst)
    k = lst.height
    b = _b(lst, j)
    g = alg.monomial(mask_to_subset(mask) + (j,))
    first = bundle_class(lst, _unit_word(k, j - 1, -b)) * g
    second = bundle_class(lst, _unit_word(k, j - 1, b)) * conjugate(g)
    return first, second


def generator_complex(lst: BottList, gen: KOGenerator) -> KClass:
    """Complexification of a single generator."""
    _check_list(lst, gen)
    alg = k_algebra(lst)
    if gen.kind == "one":
        return alg.unit()
    if gen.kind == "d":
        table = _d_complex(lst)
        out = alg.unit()
        for j in mask_to_subset(gen.mask):
            cj = table[j - 1]
            if cj is None:
                raise UnsupportedFamilyError(f"d{j} is not a generator on a terminally odd tower")
            out = out * cj
        return out
    first, second = _n_parts(lst, gen.mask, gen.j)
    sign = 1 if gen.i % 2 else -1
    return (first + second * sign) * Laurent.z(gen.i + 1)


# classes


def _normalize_into(acc: Dict[KOGenerator, KOScalar], gen: KOGenerator, s: KOScalar) -> None:
    if not s:
        return
    if gen.kind != "n":
        acc[gen] = acc.get(gen, KOScalar()) + s
        return
    # e n = 0, x n_i = 2 n_{i+2}, y n_i = n_{i+4}
    for (tok, ny), c in s.terms:
        if tok in (E, E2):
            continue
        shift = 4 * ny + (2 if tok == X else 0)
        coeff = 2 * c if tok == X else c
        g2, carry = n_gen(mask_to_subset(gen.mask), gen.j, gen.i + shift)
        acc[g2] = acc.get(g2, KOScalar()) + KOScalar.gen(ONE, carry, coeff)


class KOClass:
    """Immutable KOScalar combination of generators on one tower.

    ``undetermined`` marks classes produced from a totally even relation
    whose e-torsion part is not known; their free part is still exact.
    """

    __slots__ = ("list", "terms", "undetermined", "_c")

    def __init__(self, lst: BottList, terms=(), undetermined: bool = False):
        acc: Dict[KOGenerator, KOScalar] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for gen, s in items:
            if isinstance(s, int):
                s = KOScalar(s)
            _check_list(lst, gen)
            _normalize_into(acc, gen, s)
        object.__setattr__(self, "list", lst)
        object.__setattr__(self, "terms", {g: s for g, s in sorted(acc.items()) if s})
        object.__setattr__(self, "undetermined", bool(undetermined))
        object.__setattr__(self, "_c", None)

    def __setattr__(self, name, value):
        raise AttributeError("KOClass is immutable")

    @classmethod
    def of(cls, lst: BottList, gen: KOGenerator, scalar=1) -> "KOClass":
        return cls(lst, {gen: scalar if isinstance(scalar, KOScalar) else KOScalar(scalar)})

    def _same(self, other) -> "KOClass":
        if isinstance(other, KOClass):
            if other.list != self.list:
                raise ValueError("classes live on different towers")
            return other
        if isinstance(other, (int, KOScalar)):
            return KOClass.of(self.list, ONE_GEN, other)
        raise TypeError(f"cannot combine KOClass with {type(other).__name__}")

    def __add__(self, other):
        other = self._same(other)
        acc = list(self.terms.items()) + list(other.terms.items())
        return KOClass(self.list, acc, self.undetermined or other.undetermined)

    __radd__ = __add__

    def __neg__(self):
        return KOClass(self.list, [(g, -s) for g, s in self.terms.items()], self.undetermined)

    def __sub__(self, other):
        return self + (-self._same(other))

    def scale(self, s) -> "KOClass":
        s = s if isinstance(s, KOScalar) else KOScalar(s)
        return KOClass(self.list, [(g, s * c) for g, c in self.terms.items()], self.undetermined)

    def __mul__(self, other):
        if isinstance(other, (int, KOScalar)):
            return self.scale(other)
        other = self._same(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, KOScalar)):
            return self.scale(other)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def key(self):
        return tuple((g, s.terms) for g, s in self.terms.items())

    def __eq__(self, other):
        if isinstance(other, (int, KOScalar)):
            other = self._same(other)
        if not isinstance(other, KOClass):
            return NotImplemented
        return self.list == other.list and self.key() == other.key()

    def __hash__(self):
        return hash((self.list, self.key()))

    def degrees(self) -> List[int]:
        out = set()
        for g, s in self.terms.items():
            for (tok, ny), _ in s.terms:
                out.add(g.degree + KOScalar.gen(tok, ny).degree())
        return sorted(out)

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"{self} is not homogeneous")
        return degs[0]

    def torsion_part(self) -> "KOClass":
        """The e- and e^2-coordinates; the part complexification cannot see."""
        acc = []
        for g, s in self.terms.items():
            t = KOScalar({key: c for key, c in s.terms if key[0] in (E, E2)})
            acc.append((g, t))
        return KOClass(self.list, acc)

    def complexify(self) -> KClass:
        c = self._c
        if c is None:
            alg = k_algebra(self.list)
            c = alg.zero_class()
            for g, s in self.terms.items():
                cs = s.complexify()
                if cs:
                    c = c + generator_complex(self.list, g) * cs
            object.__setattr__(self, "_c", c)
        return c

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for g, s in self.terms.items():
            for (tok, ny), c in s.terms:
                mono = KOScalar.gen(tok, ny, c)
                ms = str(mono)
                if g.kind == "one":
                    parts.append(ms)
                elif ms == "1":
                    parts.append(g.name)
                elif ms == "-1":
                    parts.append(f"-{g.name}")
                else:
                    parts.append(f"{ms}*{g.name}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        out = []
        for g, s in self.terms.items():
            for (tok, ny), c in s.terms:
                out.append({"generator": g.name, "scalar": str(KOScalar.gen(tok, ny, 1)), "coeff": c})
        return out


def complexify(cls: KOClass) -> KClass:
    return cls.complexify()


def unit_class(lst: BottList) -> KOClass:
    return KOClass.of(lst, ONE_GEN)


def d_class(lst: BottList, subset: Sequence[int], scalar=1) -> KOClass:
    if not subset:
        return KOClass.of(lst, ONE_GEN, scalar)
    return KOClass.of(lst, d_gen(subset), scalar)


def n_class(lst: BottList, subset: Sequence[int], j: int, i: int, scalar=1) -> KOClass:
    if family(lst) != "terminally_odd":
        raise UnsupportedFamilyError("n(R;j)_i exists on terminally odd towers only")
    g, carry = n_gen(subset, j, i)
    s = scalar if isinstance(scalar, KOScalar) else KOScalar(scalar)
    return KOClass.of(lst, g, s * KOScalar.y(carry))


def n_generators(lst: BottList) -> Iterator[KOGenerator]:
    """All stored ``n`` generators of a terminally odd tower."""
    for j in range(2, lst.height + 1):
        for mask in range(1 << (j - 2)):
            for i in range(4):
                yield KOGenerator("n", mask, j, i)


# exact linear algebra on complexifications


def _free_scalar(deg: int) -> Optional[KOScalar]:
    """The free generator of ``KO_*`` in cohomological degree ``deg``, if any."""
    if deg % 8 == 0:
        return KOScalar.y(-deg // 8)
    if deg % 8 == 4:
        return KOScalar.gen(X, (-deg - 4) // 8)
    return None


def _vector(cls: KClass, deg: int) -> Dict[int, int]:
    """Integer coordinates of a homogeneous class of degree ``deg`` on the ``g_T``."""
    out = {}
    for m, c in cls.terms.items():
        want = _popcount(m) - deg // 2
        for e, v in c.terms:
            if e != want:
                raise ConsistencyError(f"class is not homogeneous of degree {deg}")
            out[m] = v
    return out


class _Solver:
    """Exact left inverse of a full-column-rank integer matrix, built once."""

    def __init__(self, columns: List[Tuple[KOClass, Dict[int, int]]], nrows: int):
        self.labels = [c for c, _ in columns]
        self.cols = [v for _, v in columns]
        self.nrows = nrows
        n = len(columns)
        # choose n independent rows greedily
        rows: List[int] = []
        echelon: List[Tuple[int, List[Fraction]]] = []
        for r in range(nrows):
            vec = [Fraction(col.get(r, 0)) for col in self.cols]
            for p, prow in echelon:
                if vec[p]:
                    f = vec[p] / prow[p]
                    vec = [a - f * b for a, b in zip(vec, prow)]
            piv = next((i for i, a in enumerate(vec) if a), None)
            if piv is not None:
                echelon.append((piv, vec))
                rows.append(r)
                if len(rows) == n:
                    break
        if len(rows) != n:
            raise ConsistencyError("complexified basis is rank deficient")
        self.rows = rows
        sq = [[Fraction(self.cols[c].get(r, 0)) for c in range(n)] for r in rows]
        self.inv = _invert(sq)

    def solve(self, vec: Dict[int, int]) -> List[int]:
        rhs = [Fraction(vec.get(r, 0)) for r in self.rows]
        sol = [sum((a * b for a, b in zip(row, rhs)), Fraction(0)) for row in self.inv]
        if any(s.denominator != 1 for s in sol):
            raise ConsistencyError("product has non-integral coordinates")
        ints = [int(s) for s in sol]
        check: Dict[int, int] = {}
        for coeff, col in zip(ints, self.cols):
            if coeff:
                for r, v in col.items():
                    check[r] = check.get(r, 0) + coeff * v
        if {r: v for r, v in check.items() if v} != {r: v for r, v in vec.items() if v}:
            raise ConsistencyError("product is outside the complexified span")
        return ints


def _invert(a: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(a)
    m = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col])
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [row[n:] for row in m]


@lru_cache(maxsize=512)
def _to_solver(lst: BottList, deg: int) -> _Solver:
    """Free basis of the terminally odd module in degree ``deg``, complexified."""
    columns = []
    for base in (ONE_GEN, KOGenerator("d", 1)):
        s = _free_scalar(deg - base.degree)
        if s is not None:
            cls = KOClass.of(lst, base, s)
            columns.append((cls, _vector(cls.complexify(), deg)))
    for j in range(2, lst.height + 1):
        for mask in range(1 << (j - 2)):
            cls = n_class(lst, mask_to_subset(mask), j, _popcount(mask) - deg // 2)
            columns.append((cls, _vector(cls.complexify(), deg)))
    return _Solver(columns, 1 << lst.height)


def decompose(lst: BottList, target: KClass, deg: int) -> KOClass:
    """The free class of degree ``deg`` whose complexification is ``target``."""
    solver = _to_solver(lst, deg)
    coeffs = solver.solve(_vector(target, deg))
    out = KOClass(lst)
    for c, cls in zip(coeffs, solver.labels):
        if c:
            out = out + cls.scale(c)
    return out


# products


def to_product(gen: KOGenerator, gen2: KOGenerator, lst: BottList) -> KOClass:
    """Exact product of two generators on a terminally odd tower."""
    if family(lst) != "terminally_odd":
        raise UnsupportedFamilyError("to_product needs a terminally odd list")
    if gen.kind == "one":
        return KOClass.of(lst, gen2)
    if gen2.kind == "one":
        return KOClass.of(lst, gen)
    if gen.kind == "d" and gen2.kind == "d":
        return KOClass(lst)
    if gen.kind == "n" and gen2.kind == "d":
        gen, gen2 = gen2, gen
    if gen.kind == "d" and gen2.j > 2:
        # d1 n(R;j)_i = n(1 u R;j)_i, or 0 when 1 is already in R
        if gen2.mask & 1:
            return KOClass(lst)
        return KOClass.of(lst, KOGenerator("n", gen2.mask | 1, gen2.j, gen2.i))
    return _solved_product(lst, gen, gen2)


@lru_cache(maxsize=65536)
def _solved_product(lst: BottList, gen: KOGenerator, gen2: KOGenerator) -> KOClass:
    target = generator_complex(lst, gen) * generator_complex(lst, gen2)
    deg = gen.degree + gen2.degree
    if not target:
        return KOClass(lst)
    return decompose(lst, target, deg)


def solved_product(gen: KOGenerator, gen2: KOGenerator, lst: BottList) -> KOClass:
    """Product read off from complexifications only, without closed forms."""
    return _solved_product(lst, gen, gen2)


def multiply(a: KOClass, b: KOClass) -> KOClass:
    lst = a.list
    if family(lst) == "totally_even":
        return _te_multiply(a, b)
    out = KOClass(lst)
    for g, s in a.terms.items():
        for g2, s2 in b.terms.items():
            ss = s * s2
            if ss:
                out = out + to_product(g, g2, lst).scale(ss)
    return out


# totally even towers


def _is_prefix_of(lst: BottList, model: BottList, j: int) -> bool:
    return all(lst.column(h) == model.column(h) for h in range(1, j + 1))


def _r_scalar(i: int) -> KOScalar:
    """Realification of ``z^{i+1}``: 2, e^2, x, 0 repeating with period 4 up to ``y``."""
    q, r = divmod(i + 1, 4)
    base = {0: KOScalar(2), 1: KOScalar.gen(E2), 2: KOScalar.x(), 3: KOScalar()}[r]
    return base * KOScalar.y(q)


def a_family_u(lst: BottList, i: int, j: int) -> Dict[int, KOScalar]:
    """``u_i(gamma_j)`` on the A-family as a mask -> scalar dict.

    ``u_i(gamma_j) = (r(z^{i+1}) + u_{i+1}(gamma_{j-1})) d_j`` with ``u_i(gamma_0) = 0``.
    """
    if j == 0:
        return {}
    bit = 1 << (j - 1)
    out = {bit: _r_scalar(i)}
    for m, s in a_family_u(lst, i + 1, j - 1).items():
        out[m | bit] = out.get(m | bit, KOScalar()) + s
    return {m: s for m, s in out.items() if s}


class TERelation(NamedTuple):
    value: KOClass
    determined: bool


def _half_word_class(lst: BottList, j: int) -> KClass:
    """``w = z^{-1}(prod (1 + z g_i)^{a(i,j)/2} - 1)``."""
    k = lst.height
    half = tuple(c // 2 for c in lst.column(j)) + (0,) * (k - j + 1)
    alg = k_algebra(lst)
    return (bundle_class(lst, half) - alg.unit()) * ZINV


@lru_cache(maxsize=256)
def _te_free_solver(lst: BottList, j: int) -> _Solver:
    columns = []
    for mask in range(1, 1 << (j - 1)):
        s = _free_scalar(2 - 2 * _popcount(mask))
        if s is not None:
            cls = KOClass.of(lst, KOGenerator("d", mask), s)
            columns.append((cls, _vector(cls.complexify(), 2)))
    return _Solver(columns, 1 << lst.height)


def te_relation_free(lst: BottList, j: int) -> KOClass:
    """Free part of ``U_j``, solved from ``c(U_j) = w + conj(w)``."""
    if family(lst) != "totally_even":
        raise UnsupportedFamilyError("te_relation needs a totally even list")
    w = _half_word_class(lst, j)
    target = w + conjugate(w)
    if not target:
        return KOClass(lst)
    solver = _te_free_solver(lst, j)
    coeffs = solver.solve(_vector(target, 2))
    out = KOClass(lst)
    for c, cls in zip(coeffs, solver.labels):
        if c:
            out = out + cls.scale(c)
    return out


@lru_cache(maxsize=1024)
def te_relation(lst: BottList, j: int) -> TERelation:
    """``U_j`` with ``d_j^2 = U_j d_j`` on a totally even tower.

    The e-torsion part is exact when stage ``j`` is trivial and on the
    A-family; otherwise only the free part is returned and the result is
    flagged undetermined.
    """
    if not 1 <= j <= lst.height:
        raise IndexError(f"stage {j} out of range")
    free = te_relation_free(lst, j)
    if not any(lst.column(j)):
        return TERelation(KOClass(lst), True)
    if _is_prefix_of(lst, a_family(lst.height), j):
        rec = KOClass(lst, [(KOGenerator("d", m), s) for m, s in a_family_u(lst, -1, j - 1).items()])
        if rec.complexify() != free.complexify():
            raise ConsistencyError(f"A-family recursion disagrees with complexification at stage {j}")
        return TERelation(rec, True)
    return TERelation(KOClass(lst, free.terms, undetermined=True), False)


@lru_cache(maxsize=256)
def te_algebra(lst: BottList) -> Tuple[QuotientAlgebra, bool]:
    """Multiplication engine for ``KO^*`` of a totally even tower and its exactness."""
    alg = QuotientAlgebra(lst, KOScalar(1), "d", "KO")
    exact = True
    for j in range(1, lst.height + 1):
        rel = te_relation(lst, j)
        exact = exact and rel.determined
        terms = {}
        for g, s in rel.value.terms.items():
            terms[0 if g.kind == "one" else g.mask] = s
        alg.add_relation(GradedClass(alg, terms))
    return alg, exact


def _uses_undetermined(alg: QuotientAlgebra, lst: BottList, r: int, s: int) -> bool:
    """Whether reducing ``d_R d_S`` rewrites a square whose relation lacks its torsion."""
    common = r & s
    if not common:
        return False
    j = common.bit_length()
    if not te_relation(lst, j).determined:
        return True
    bit = 1 << (j - 1)
    if _uses_undetermined(alg, lst, r ^ bit, s ^ bit):
        return True
    rel = alg._rx[j - 1]
    return any(
        _uses_undetermined(alg, lst, u, t) for u in alg.mono_mul(r ^ bit, s ^ bit) for t in rel
    )


def _te_multiply(a: KOClass, b: KOClass) -> KOClass:
    lst = a.list
    alg, exact = te_algebra(lst)

    def lift(cls):
        return {0 if g.kind == "one" else g.mask: s for g, s in cls.terms.items()}

    ta, tb = lift(a), lift(b)
    prod = GradedClass(alg, alg.mul_terms(ta, tb))
    terms = [
        (ONE_GEN if m == 0 else KOGenerator("d", m), s) for m, s in prod.terms.items()
    ]
    flag = a.undetermined or b.undetermined
    if not exact and not flag:
        flag = any(_uses_undetermined(alg, lst, r, s) for r in ta for s in tb)
    return KOClass(lst, terms, flag)


# KO^{-2}


class BasisElement(NamedTuple):
    element: KOClass
    order: int  # 0 for infinite cyclic

    def __str__(self):
        return f"{self.element} ({'Z' if self.order == 0 else f'Z/{self.order}'})"


def ko_minus2_basis(lst: BottList, reduced: bool = True) -> List[BasisElement]:
    """Additive basis of ``KO^{-2}``; unreduced adds the ``e^2`` class of the point."""
    fam = family(lst)
    out: List[BasisElement] = []
    if not reduced:
        out.append(BasisElement(KOClass.of(lst, ONE_GEN, KOScalar.gen(E2)), 2))
    k = lst.height
    if k == 0:
        return out
    if fam == "totally_even":
        for mask in sorted(range(1, 1 << k), key=lambda m: (_popcount(m), m)):
            size = _popcount(mask)
            r = size % 4
            gen = KOGenerator("d", mask)
            if r == 1:
                out.append(BasisElement(KOClass.of(lst, gen, KOScalar.gen(X, (size - 1) // 4)), 0))
            elif r == 3:
                out.append(BasisElement(KOClass.of(lst, gen, KOScalar.y((size + 1) // 4)), 0))
            elif r == 0:
                out.append(BasisElement(KOClass.of(lst, gen, KOScalar.gen(E2, size // 4)), 2))
        return out
    out.append(BasisElement(KOClass.of(lst, KOGenerator("d", 1), KOScalar.x()), 0))
    for j in range(2, k + 1):
        for mask in range(1 << (j - 2)):
            R = mask_to_subset(mask)
            out.append(BasisElement(n_class(lst, R, j, len(R) + 1), 0))
    return out


def ko_minus2_group(lst: BottList, reduced: bool = True) -> GroupDescriptor:
    basis = ko_minus2_basis(lst, reduced)
    free = sum(1 for b in basis if b.order == 0)
    return GroupDescriptor(free, tuple(b.order for b in basis if b.order))
