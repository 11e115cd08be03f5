"""Instance ingestion, zero filtering, sign transformation and trivial shortcuts.

Every mixed-sign set is read in absolute value and shifted by the total of
its negative elements, so that the possibility space behaves like a single,
positive-signed set.  Zeros never reach the search; they only multiply the
final count by ``2**zero_count``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

ELEMENT_LIMIT = 1 << 63
SUM_LIMIT = 1 << 127


def _check_bounds(elements) -> None:
    total = 0
    for x in elements:
        if not isinstance(x, int) or isinstance(x, bool):
            raise TypeError(f"elements must be integers, got {x!r}")
        if abs(x) >= ELEMENT_LIMIT:
            raise OverflowError(f"element {x} does not fit a 63-bit magnitude")
        total += abs(x)
    if total >= SUM_LIMIT:
        raise OverflowError("sum of absolute values does not fit a 127-bit signed range")


@dataclass(frozen=True)
class Instance:
    elements: tuple[int, ...]
    targets: tuple[int, ...]
    allow_empty: bool = True

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "targets", tuple(self.targets))
        if not self.targets:
            raise ValueError("at least one target is required")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"duplicate targets in {list(self.targets)}")
        for t in self.targets:
            if not isinstance(t, int) or isinstance(t, bool):
                raise TypeError(f"targets must be integers, got {t!r}")
        _check_bounds(self.elements)


@dataclass(frozen=True)
class PreprocessedInstance:
    """Zero-free elements stably sorted by magnitude, plus the bookkeeping to undo it."""

    sorted_elements: tuple[int, ...]
    neg_shift: int
    zero_count: int
    odd_element_count: int
    origin_index: tuple[int, ...]
    abs_elements: tuple[int, ...] = field(init=False, repr=False)
    pos_sum: int = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "abs_elements", tuple(abs(x) for x in self.sorted_elements))
        object.__setattr__(self, "pos_sum", sum(x for x in self.sorted_elements if x > 0))

    @property
    def n(self) -> int:
        return len(self.sorted_elements)

    @property
    def raw_size(self) -> int:
        return len(self.sorted_elements) + self.zero_count

    @property
    def abs_total(self) -> int:
        return self.pos_sum - self.neg_shift

    def in_bounds(self, target: int) -> bool:
        return self.neg_shift <= target <= self.pos_sum


def preprocess(instance: Instance | None = None, *, elements=None) -> PreprocessedInstance:
    """Filter zeros, total the negatives and sort by absolute value.

    Either an :class:`Instance` or a bare ``elements`` sequence may be given.
    Ties in magnitude keep their input order (``sorted`` is stable).
    """
    raw = instance.elements if instance is not None else tuple(elements or ())
    _check_bounds(raw)
    zero_count = 0
    neg_shift = 0
    odd = 0
    kept = []
    for pos, x in enumerate(raw):
        if x == 0:
            zero_count += 1
            continue
        if x < 0:
            neg_shift += x
        if x % 2:
            odd += 1
        kept.append((pos, x))
    kept.sort(key=lambda px: abs(px[1]))
    return PreprocessedInstance(
        sorted_elements=tuple(x for _, x in kept),
        neg_shift=neg_shift,
        zero_count=zero_count,
        odd_element_count=odd,
        origin_index=tuple(p for p, _ in kept),
    )


class TrivialKind(enum.Enum):
    NOT_TRIVIAL = "NotTrivial"
    PURE_ZERO = "PureZero"
    EVEN_ODD_UNSAT = "EvenOddUnsat"
    OUT_OF_BOUNDS = "OutOfBounds"
    EMPTY_SET_ONLY = "EmptySetOnly"


@dataclass(frozen=True)
class TrivialVerdict:
    """Shortcut result; ``count`` is the final count over raw subsets (empty set included)."""

    kind: TrivialKind
    count: int = 0

    @property
    def decided(self) -> bool:
        return self.kind is not TrivialKind.NOT_TRIVIAL


def detect_trivial(prep: PreprocessedInstance, target: int) -> TrivialVerdict:
    if prep.n == 0 and target == 0:
        return TrivialVerdict(TrivialKind.PURE_ZERO, 1 << prep.zero_count)
    if prep.odd_element_count == 0 and target % 2:
        return TrivialVerdict(TrivialKind.EVEN_ODD_UNSAT, 0)
    if not prep.in_bounds(target):
        return TrivialVerdict(TrivialKind.OUT_OF_BOUNDS, 0)
    if target == 0 and prep.neg_shift == 0:
        # every non-empty subset of a positive set sums above zero
        return TrivialVerdict(TrivialKind.EMPTY_SET_ONLY, 1 << prep.zero_count)
    return TrivialVerdict(TrivialKind.NOT_TRIVIAL)
