"""Trivial counting over runs of equal-magnitude elements.

When element ``j`` repeats element ``j - 1`` (same magnitude ``v``), the block
it opens re-enumerates earlier blocks verbatim except for its last
``2**r`` positions, ``r`` being the index of the element before the run.
Only that tail is explored; the counts hidden in the redundant part are
recovered from the explored counts with alternating binomial coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .sepoint import LevelState


def coefficients(m: int) -> list[int]:
    """Coefficients used at repetition step ``m`` (``m`` repeats after the first)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    n = m + 1
    out = []
    p = 1
    for k in range(1, m + 1):
        p = p * (n - k) // k
        out.append(p)
    return out


@dataclass
class TrivialAccumulator:
    """Counts gathered during one run.

    ``a_counts[0]`` is the full count of the block before the run; each later
    entry is the count of one explored tail.
    """

    a_counts: list[int] = field(default_factory=list)
    repeat_count: int = 2
    last_part_dist_exp: int = 0

    def push(self, count: int) -> None:
        self.a_counts.append(count)
        self.repeat_count = len(self.a_counts)


def trivial_total(acc: TrivialAccumulator) -> int:
    """Solutions inside the skipped redundant subsets of a finished run."""
    a = acc.a_counts
    if len(a) < 2 or not any(a[:-1]):
        return 0
    blocks = [a[0]]
    total = 0
    for i in range(1, len(a)):
        redundant = 0
        for k, c in enumerate(coefficients(i), start=1):
            term = c * blocks[i - k]
            redundant += term if k % 2 else -term
        blocks.append(redundant + a[i])
        total += redundant
    return total


def detect_repetition(state: LevelState, next_abs: int) -> bool:
    return next_abs + state.base_shift == state.a
