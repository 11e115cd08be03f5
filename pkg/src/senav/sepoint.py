"""Starting/ending point algebra for one level of the possibility space.

A level over elements ``0..budget`` with starting value ``base`` covers
``2**(budget + 1)`` consecutive enumeration positions.  Its first four
positions are computed directly; from the third element on, element ``j``
contributes a pair of S/E points covering positions ``2**j .. 2**(j+1) - 1``,
each pair member spanning ``2**(j - 1)`` positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .core import SUM_LIMIT, PreprocessedInstance


class SEPoint(NamedTuple):
    start: int
    end: int
    # distance between start and end is 2**(dist_exp + 1) - 1 positions
    dist_exp: int
    # enumeration index of ``start``
    preceding: int

    @property
    def distance(self) -> int:
        return (2 << self.dist_exp) - 1

    @property
    def end_index(self) -> int:
        return self.preceding + (2 << self.dist_exp) - 1

    def label(self) -> str:
        return f"{self.preceding}({self.start}, {self.end}){self.distance}"


class LevelState(NamedTuple):
    """Constant-space iterator over the S/E pairs of one level.

    ``(a, b)`` and ``(c, d)`` are the two current points, ``util`` holds the
    shifted incoming element and ``preceding`` the index of ``c``.
    """

    a: int
    b: int
    c: int
    d: int
    util: int
    elem_idx: int
    dist_exp: int
    base_shift: int
    preceding: int

    def pair(self) -> tuple[SEPoint, SEPoint]:
        first = SEPoint(self.a, self.b, self.dist_exp, self.preceding - (1 << (self.dist_exp + 1)))
        return first, SEPoint(self.c, self.d, self.dist_exp, self.preceding)


def _checked(value: int) -> int:
    if not -SUM_LIMIT < value < SUM_LIMIT:
        raise OverflowError(f"subset sum {value} leaves the 127-bit range")
    return value


def seed(abs_elements: Sequence[int], base_shift: int, preceding_base: int = 0) -> LevelState:
    """State after the third element (index 2): the first pair of the level."""
    e0, e1, e2 = abs_elements[0], abs_elements[1], abs_elements[2]
    a = e2 + base_shift
    return LevelState(
        a=a,
        b=a + e0,
        c=a + e1,
        d=_checked(a + e1 + e0),
        util=a,
        elem_idx=2,
        dist_exp=0,
        base_shift=base_shift,
        preceding=preceding_base + 6,
    )


def step(state: LevelState, element_abs: int) -> tuple[LevelState, tuple[SEPoint, SEPoint]]:
    """Advance to the next element and return the pair it produces."""
    base = state.base_shift
    e = element_abs + base
    dist_exp = state.dist_exp + 1
    first_pre = state.preceding + (1 << dist_exp)
    new = LevelState(
        a=e,
        b=(state.d - state.a) + e,
        c=state.a + e - base,
        d=_checked(state.d + e - base),
        util=e,
        elem_idx=state.elem_idx + 1,
        dist_exp=dist_exp,
        base_shift=base,
        preceding=first_pre + (1 << (dist_exp + 1)),
    )
    return new, (
        SEPoint(new.a, new.b, dist_exp, first_pre),
        SEPoint(new.c, new.d, dist_exp, new.preceding),
    )


@dataclass(frozen=True)
class LevelDescriptor:
    """A level to walk: values start at ``start``, elements ``0..budget`` are used."""

    start: int
    budget: int
    preceding: int = 0


def head_points(abs_elements: Sequence[int], desc: LevelDescriptor) -> tuple[SEPoint, SEPoint]:
    """The two distance-1 points holding a level's first four possibilities."""
    s, e0, e1 = desc.start, abs_elements[0], abs_elements[1]
    return (
        SEPoint(s, s + e0, 0, desc.preceding),
        SEPoint(s + e1, s + e1 + e0, 0, desc.preceding + 2),
    )


def iter_pairs(abs_elements: Sequence[int], desc: LevelDescriptor) -> Iterator[tuple[SEPoint, SEPoint]]:
    if desc.budget < 2:
        return
    state = seed(abs_elements, desc.start, desc.preceding)
    yield state.pair()
    for j in range(3, desc.budget + 1):
        state, pair = step(state, abs_elements[j])
        yield pair


@dataclass(frozen=True)
class Level:
    head: tuple[int, int, int, int]
    pairs: tuple[tuple[SEPoint, SEPoint], ...]

    def values(self) -> list[int]:
        out = list(self.head)
        for first, second in self.pairs:
            out += [first.start, first.end, second.start, second.end]
        return out

    def points(self) -> list[SEPoint]:
        return [p for pair in self.pairs for p in pair]


def level(abs_elements: Sequence[int], desc: LevelDescriptor) -> Level:
    if desc.budget < 1:
        raise ValueError("a level needs at least two elements")
    p, q = head_points(abs_elements, desc)
    return Level((p.start, p.end, q.start, q.end), tuple(iter_pairs(abs_elements, desc)))


def first_level(prep: PreprocessedInstance) -> Level:
    """All ``4n - 4`` top-level values, shifted by the negative total."""
    if prep.n < 3:
        raise ValueError(f"first_level needs at least 3 non-zero elements, got {prep.n}")
    return level(prep.abs_elements, LevelDescriptor(prep.neg_shift, prep.n - 1, 0))


def expand(sep: SEPoint, prep: PreprocessedInstance | None = None) -> LevelDescriptor:
    """Zoom-in descriptor of ``sep``: the prefix pattern translated to its start.

    Values already carry the top-level shift, so the inner level adds none.
    """
    if sep.dist_exp <= 0:
        raise ValueError(f"{sep.label()} has no interior possibilities to expand")
    return LevelDescriptor(sep.start, sep.dist_exp, sep.preceding)
