"""Coefficient rings: F2, Laurent polynomials in z, and the KO coefficient ring.

Plain Python ``int`` serves as the integral coefficient ring throughout.
Every scalar here is immutable and hashable, so classes built on top of
them can be compared and deduplicated by value.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple


class InhomogeneousError(ValueError):
    """Raised when a degree is requested for a non-homogeneous value."""


class F2:
    """The field with two elements."""

    __slots__ = ("v",)

    def __init__(self, v=0):
        object.__setattr__(self, "v", int(v) & 1)

    def __setattr__(self, name, value):
        raise AttributeError("F2 is immutable")

    @staticmethod
    def _lift(other):
        if isinstance(other, F2):
            return other
        if isinstance(other, int):
            return F2(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return F2(self.v ^ other.v)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return F2(self.v & other.v)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.v)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.v == other.v

    def __hash__(self):
        return hash(("F2", self.v))

    def __repr__(self):
        return f"F2({self.v})"

    def degree(self) -> int:
        return 0


def _clean(terms: Mapping[int, object]) -> Tuple[Tuple[int, object], ...]:
    return tuple(sorted((e, c) for e, c in terms.items() if c))


def _exact_int(c) -> int:
    if isinstance(c, Fraction):
        if c.denominator != 1:
            raise ValueError(f"non-integral coefficient {c}")
        return c.numerator
    return int(c)


class Laurent:
    """Integral Laurent polynomial in ``z``; ``z`` has cohomological degree -2.

    >>> z = Laurent.z()
    >>> (z**2 * z**-2) == 1
    True
    """

    __slots__ = ("terms", "_hash")
    _coerce = staticmethod(_exact_int)

    def __init__(self, terms: Mapping[int, object] | Iterable | int = ()):
        if isinstance(terms, (int, Fraction)):
            terms = {0: terms}
        elif not isinstance(terms, Mapping):
            terms = dict(terms)
        coerce = self._coerce
        object.__setattr__(
            self, "terms", _clean({int(e): coerce(c) for e, c in terms.items()})
        )
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Laurent is immutable")

    @classmethod
    def _raw(cls, terms: Dict[int, object]):
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", _clean(terms))
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def z(cls, power: int = 1):
        return cls._raw({power: cls._coerce(1)})

    @classmethod
    def one(cls):
        return cls._raw({0: cls._coerce(1)})

    @classmethod
    def zero(cls):
        return cls._raw({})

    def _lift(self, other):
        if isinstance(other, Laurent):
            return other
        if isinstance(other, int):
            return type(self)(other)
        if isinstance(other, Fraction):
            return RationalLaurent(other)
        return NotImplemented

    def _cls(self, other):
        if isinstance(other, RationalLaurent):
            return RationalLaurent
        return type(self)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return self._cls(other)._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({e: -c for e, c in self.terms})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self._raw({e: c * other for e, c in self.terms})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc: Dict[int, object] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return self._cls(other)._raw(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1 or abs(self.terms[0][1]) != 1:
                raise ValueError("only monomials with unit coefficient are invertible")
            e, c = self.terms[0]
            return self._raw({e * n: c if n % 2 else c * c})
        out = self.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((Laurent, self.terms))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"{type(self).__name__}({dict(self.terms)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            else:
                zs = "z" if e == 1 else f"z^{e}"
                parts.append(zs if c == 1 else ("-" + zs if c == -1 else f"{c}*{zs}"))
        return " + ".join(parts).replace("+ -", "- ")

    def conjugate(self):
        """Apply ``z -> -z``."""
        return self._raw({e: (-c if e % 2 else c) for e, c in self.terms})

    def degree(self) -> int:
        exps = {e for e, _ in self.terms}
        if len(exps) != 1:
            raise InhomogeneousError(f"{self} is not homogeneous")
        return -2 * exps.pop()

    def coeff(self, e: int):
        for ee, c in self.terms:
            if ee == e:
                return c
        return 0

    def to_json(self) -> Dict[str, str]:
        return {str(e): str(c) for e, c in self.terms}


class RationalLaurent(Laurent):
    """Laurent polynomial in ``z`` with exact rational coefficients."""

    __slots__ = ()
    _coerce = staticmethod(Fraction)


# KO_* = Z[e, x, y^{+-1}] / (2e, e^3, ex, x^2 - 4y), basis tokens below.
ONE, E, E2, X = "1", "e", "e2", "x"
_TOKEN_DEGREE = {ONE: 0, E: -1, E2: -2, X: -4}
_TOKEN_ORDER = {ONE: 0, E: 1, E2: 2, X: 3}

# token * token -> (token, integer factor, y-power shift) or None for zero
_TOKEN_MUL = {
    (ONE, ONE): (ONE, 1, 0),
    (ONE, E): (E, 1, 0),
    (ONE, E2): (E2, 1, 0),
    (ONE, X): (X, 1, 0),
    (E, E): (E2, 1, 0),
    (E, E2): None,
    (E, X): None,
    (E2, E2): None,
    (E2, X): None,
    (X, X): (ONE, 4, 1),
}


def _token_mul(t1, t2):
    key = (t1, t2) if _TOKEN_ORDER[t1] <= _TOKEN_ORDER[t2] else (t2, t1)
    return _TOKEN_MUL[key]


class KOScalar:
    """Element of the real K-theory coefficient ring.

    Stored on the basis ``{y^n, e y^n, e^2 y^n, x y^n}`` with ``e``-type
    coefficients reduced mod 2. Degrees: e -1, x -4, y -8. Negative
    powers of ``y`` are permitted (Bott periodicity).
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Tuple[str, int], int] | int = ()):
        if isinstance(terms, int):
            terms = {(ONE, 0): terms}
        object.__setattr__(self, "terms", self._normal(dict(terms)))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("KOScalar is immutable")

    @staticmethod
    def _normal(terms):
        out = {}
        for (tok, n), c in terms.items():
            if tok not in _TOKEN_DEGREE:
                raise ValueError(f"unknown KO token {tok!r}")
            c = int(c)
            if tok in (E, E2):
                c %= 2
            if c:
                out[(tok, int(n))] = c
        return tuple(sorted(out.items(), key=lambda kv: (kv[0][1], _TOKEN_ORDER[kv[0][0]])))

    @classmethod
    def gen(cls, token: str, ypow: int = 0, coeff: int = 1):
        return cls({(token, ypow): coeff})

    @classmethod
    def e(cls):
        return cls.gen(E)

    @classmethod
    def x(cls):
        return cls.gen(X)

    @classmethod
    def y(cls, n: int = 1):
        return cls.gen(ONE, n)

    @staticmethod
    def _lift(other):
        if isinstance(other, KOScalar):
            return other
        if isinstance(other, int):
            return KOScalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for k, c in other.terms:
            acc[k] = acc.get(k, 0) + c
        return KOScalar(acc)

    __radd__ = __add__

    def __neg__(self):
        return KOScalar({k: -c for k, c in self.terms})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ko_scalar_mul(self, other)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((KOScalar, self.terms)))
        return self._hash

    def __repr__(self):
        return f"KOScalar({dict(self.terms)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (tok, n), c in self.terms:
            factors = []
            if tok == E2:
                factors.append("e2")
            elif tok != ONE:
                factors.append(tok)
            if n:
                factors.append(f"y^{n}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def degree(self) -> int:
        degs = {_TOKEN_DEGREE[tok] - 8 * n for (tok, n), _ in self.terms}
        if len(degs) != 1:
            raise InhomogeneousError(f"{self} is not homogeneous")
        return degs.pop()

    def complexify(self) -> Laurent:
        """Image under complexification: e -> 0, x -> 2z^2, y -> z^4."""
        acc: Dict[int, int] = {}
        for (tok, n), c in self.terms:
            if tok == ONE:
                acc[4 * n] = acc.get(4 * n, 0) + c
            elif tok == X:
                acc[4 * n + 2] = acc.get(4 * n + 2, 0) + 2 * c
        return Laurent(acc)

    def is_torsion(self) -> bool:
        return all(tok in (E, E2) for (tok, _), _ in self.terms)


def ko_scalar_mul(p: KOScalar, q: KOScalar) -> KOScalar:
    """Normal-form product under 2e = 0, e^3 = 0, ex = 0, x^2 = 4y."""
    acc: Dict[Tuple[str, int], int] = {}
    for (t1, n1), c1 in p.terms:
        for (t2, n2), c2 in q.terms:
            rule = _token_mul(t1, t2)
            if rule is None:
                continue
            tok, f, dy = rule
            key = (tok, n1 + n2 + dy)
            acc[key] = acc.get(key, 0) + f * c1 * c2
    return KOScalar(acc)


def ko_point_group(m: int) -> Tuple[int, int]:
    """Return ``(free_rank, torsion_order)`` of KO_m of a point (0 = none)."""
    r = m % 8
    if r in (0, 4):
        return 1, 0
    if r in (1, 2):
        return 0, 2
    return 0, 0
