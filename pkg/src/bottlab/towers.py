"""Combinatorial model of a Bott tower.

A tower of height ``k`` is fixed by the triangular integer array
``a(i, j)``, ``1 <= i < j <= k``.  Stage ``j`` carries the tuple
``(a(1, j), ..., a(j-1, j))``; the text form separates stages by ``;``
and entries by ``,`` so that ``"1;0,1"`` is the bounded flag tower of
height 3.
"""

from __future__ import annotations

import json
import logging
import os
import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

log = logging.getLogger(__name__)

DEFAULT_CAP = 16
CAP_ENV = "BOTTLAB_CAP"


class ListShapeError(ValueError):
    """A raw list does not have the triangular stage shape."""

    def __init__(self, message: str, stage: Optional[int] = None):
        super().__init__(message)
        self.stage = stage


class HeightCapError(ValueError):
    """The requested height exceeds the configured cap."""


def height_cap(cap: Optional[int] = None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get(CAP_ENV)
    return int(env) if env else DEFAULT_CAP


def check_cap(k: int, cap: Optional[int] = None) -> None:
    limit = height_cap(cap)
    if k > limit:
        raise HeightCapError(f"height {k} exceeds cap {limit}")
    if k > 12:
        # one class is up to 2^k Laurent entries; enumeration holds up to 4^k keys
        est = (4 ** k) * (2 ** k) * 64
        log.warning("height %d: enumeration may need roughly %.1f GB", k, est / 2**30)


@dataclass(frozen=True)
class BottList:
    """The integer list ``a`` defining a Bott tower.

    ``stages[j - 2]`` holds ``(a(1, j), ..., a(j-1, j))`` for ``2 <= j <= height``.
    """

    height: int
    stages: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.height < 0:
            raise ListShapeError("height must be non-negative")
        stages = tuple(tuple(int(v) for v in s) for s in self.stages)
        object.__setattr__(self, "stages", stages)
        expected = max(self.height - 1, 0)
        if len(stages) != expected:
            raise ListShapeError(
                f"height {self.height} needs {expected} stages, got {len(stages)}"
            )
        for idx, s in enumerate(stages):
            j = idx + 2
            if len(s) != j - 1:
                raise ListShapeError(
                    f"stage {j} must have {j - 1} entries, got {len(s)}", stage=j
                )

    @property
    def k(self) -> int:
        return self.height

    def a(self, i: int, j: int) -> int:
        """Entry ``a(i, j)`` (1-based, ``i < j``)."""
        if not 1 <= i < j <= self.height:
            raise IndexError(f"a({i},{j}) out of range for height {self.height}")
        return self.stages[j - 2][i - 1]

    def column(self, j: int) -> Tuple[int, ...]:
        """The tuple ``a_{j-1} = (a(1,j), ..., a(j-1,j))``; empty for ``j = 1``."""
        if not 1 <= j <= self.height:
            raise IndexError(f"stage {j} out of range for height {self.height}")
        return () if j == 1 else self.stages[j - 2]

    def entries(self) -> Iterator[Tuple[int, int, int]]:
        for j in range(2, self.height + 1):
            for i in range(1, j):
                yield i, j, self.a(i, j)

    # parity classes

    @property
    def is_totally_even(self) -> bool:
        return all(v % 2 == 0 for _, _, v in self.entries())

    @property
    def is_terminally_odd(self) -> bool:
        # a(0,1) does not exist, so the test starts at j = 2
        return all(self.a(j - 1, j) % 2 for j in range(2, self.height + 1))

    @property
    def trivial_parity(self) -> bool:
        return self.height <= 1

    @property
    def parity(self) -> str:
        if self.trivial_parity:
            return "trivial"
        if self.is_totally_even:
            return "totally_even"
        if self.is_terminally_odd:
            return "terminally_odd"
        return "mixed"

    # serialisation

    def to_text(self) -> str:
        return ";".join(",".join(str(v) for v in s) for s in self.stages)

    def to_json(self) -> List[List[int]]:
        return [list(s) for s in self.stages]

    @classmethod
    def from_stages(cls, stages: Sequence[Sequence[int]], height: Optional[int] = None):
        stages = [tuple(s) for s in stages]
        if height is None:
            height = len(stages) + 1
        return cls(height, tuple(stages))

    @classmethod
    def parse(cls, text: str, height: Optional[int] = None) -> "BottList":
        """Parse either the ``;``/``,`` text form or a JSON array of arrays."""
        text = text.strip()
        if text.startswith("["):
            try:
                raw = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ListShapeError(f"bad JSON list: {exc}") from None
            return validate_list(raw, height)
        if not text:
            return validate_list([], height)
        stages = []
        for n, chunk in enumerate(text.split(";")):
            try:
                stages.append([int(v) for v in chunk.split(",")])
            except ValueError:
                raise ListShapeError(f"non-integer entry in stage {n + 2}", stage=n + 2) from None
        return validate_list(stages, height)

    def __str__(self):
        return f"BottList[{self.height}]({self.to_text()})"


def validate_list(raw, height: Optional[int] = None) -> BottList:
    """Check the triangular shape of ``raw`` and build a :class:`BottList`.

    ``raw`` is a sequence of stages; an empty sequence is the height-1 tower
    unless ``height`` says otherwise (``height=0`` is the point).
    """
    if not isinstance(raw, (list, tuple)):
        raise ListShapeError("list must be a sequence of stages")
    for n, s in enumerate(raw):
        if not isinstance(s, (list, tuple)) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in s
        ):
            raise ListShapeError(f"stage {n + 2} must be a list of integers", stage=n + 2)
    if height is None:
        height = len(raw) + 1
    if height == 0 and raw:
        raise ListShapeError("height 0 has no stages")
    return BottList(height, tuple(tuple(s) for s in raw))


def fiber_tower(lst: BottList, k0: int) -> BottList:
    """Fibre of the projection ``M^n -> M^{k0}``: drop the first ``k0`` entries of each later stage."""
    n = lst.height
    if not 0 <= k0 <= n:
        raise ValueError(f"k0={k0} out of range for height {n}")
    m = n - k0
    stages = [
        tuple(lst.a(i + k0, j + k0) for i in range(1, j)) for j in range(2, m + 1)
    ]
    return BottList(m, tuple(stages))


def stage_bundle(lst: BottList, j: int) -> Tuple[int, ...]:
    """Exponent word of the ``j``-th stage bundle, padded to the tower height."""
    col = lst.column(j)
    return col + (0,) * (lst.height - len(col))


# presets


def cp1_power(k: int) -> BottList:
    return BottList(k, tuple((0,) * (j - 1) for j in range(2, k + 1)))


def bounded_flag(k: int, sign: int = 1) -> BottList:
    return BottList(k, tuple((0,) * (j - 2) + (sign,) for j in range(2, k + 1)))


def a_family(k: int) -> BottList:
    return BottList(k, tuple((0,) * (j - 2) + (2,) for j in range(2, k + 1)))


def big_entry(k: int, rng: random.Random, bound: int = 6) -> BottList:
    """Random list with ``|a(j-1, j)| >= 3`` at every stage."""
    stages = []
    for j in range(2, k + 1):
        lower = [rng.randint(-bound, bound) for _ in range(j - 2)]
        last = rng.choice([-1, 1]) * rng.randint(3, 3 + bound)
        stages.append(tuple(lower) + (last,))
    return BottList(k, tuple(stages))


def random_list(k: int, rng: random.Random, bound: int = 4) -> BottList:
    return BottList(
        k, tuple(tuple(rng.randint(-bound, bound) for _ in range(j - 1)) for j in range(2, k + 1))
    )


FAMILIES = {
    "cp1-power": cp1_power,
    "bounded-flag": bounded_flag,
    "A-family": a_family,
}


def family_list(name: str, k: int, seed: int = 0) -> BottList:
    if name == "big-entry":
        return big_entry(k, random.Random(f"{seed}:{k}"))
    try:
        return FAMILIES[name](k)
    except KeyError:
        raise ValueError(f"unknown family {name!r}") from None


@dataclass(frozen=True)
class Omniorientation:
    """Conjugation flags for the summands of the canonical tangent splitting.

    ``delta[h]`` flips the summand conj(gamma_h); ``epsilon[h]`` flips
    conj(gamma_h) (x) gamma(a_{h-1}).
    """

    delta: Tuple[int, ...]
    epsilon: Tuple[int, ...]

    def __post_init__(self):
        d = tuple(int(v) for v in self.delta)
        e = tuple(int(v) for v in self.epsilon)
        if len(d) != len(e):
            raise ValueError("delta and epsilon must have equal length")
        if any(v not in (0, 1) for v in d + e):
            raise ValueError("flags must be 0 or 1")
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "epsilon", e)

    @property
    def k(self) -> int:
        return len(self.delta)

    @classmethod
    def canonical(cls, k: int) -> "Omniorientation":
        return cls((0,) * k, (0,) * k)

    @classmethod
    def from_index(cls, k: int, idx: int) -> "Omniorientation":
        """Decode ``idx`` in ``[0, 4^k)``: low ``k`` bits delta, high ``k`` bits epsilon."""
        d = tuple((idx >> h) & 1 for h in range(k))
        e = tuple((idx >> (k + h)) & 1 for h in range(k))
        return cls(d, e)

    def index(self) -> int:
        k = self.k
        return sum(v << h for h, v in enumerate(self.delta)) + sum(
            v << (k + h) for h, v in enumerate(self.epsilon)
        )

    @classmethod
    def parse(cls, text: str) -> "Omniorientation":
        try:
            d, e = text.strip().split(";")
        except ValueError:
            raise ValueError("omniorientation must look like '<bits>;<bits>'") from None
        return cls(tuple(int(c) for c in d), tuple(int(c) for c in e))

    def to_text(self) -> str:
        return "".join(map(str, self.delta)) + ";" + "".join(map(str, self.epsilon))


def all_omniorientations(k: int) -> Iterator[Omniorientation]:
    for idx in range(4 ** k):
        yield Omniorientation.from_index(k, idx)
