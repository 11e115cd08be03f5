"""Mapping enumeration indices back to the elements that form a subset."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import PreprocessedInstance
from .errors import RangeError


@dataclass(frozen=True)
class SolutionRecord:
    target: int
    preceding_index: int
    # character i is the enumeration bit of sorted element i
    bitmask: str
    elements: tuple[int, ...]
    # raw input positions of ``elements``
    positions: tuple[int, ...]
    is_empty: bool

    def describe(self) -> str:
        if self.is_empty:
            return "Empty Set Zero"
        return " + ".join(str(x) for x in self.elements)

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "index": self.preceding_index,
            "bitmask": self.bitmask,
            "elements": list(self.elements),
            "positions": list(self.positions),
            "empty": self.is_empty,
        }


def index_to_bitmask(index: int, n: int) -> str:
    """Binary digits of ``index``, lowest bit first."""
    if index < 0 or index >> n:
        raise RangeError(f"index {index} outside [0, 2**{n})")
    return format(index, f"0{n}b")[::-1] if n else ""


def inclusion(bitmask: str, prep: PreprocessedInstance) -> list[bool]:
    """Which sorted elements are in the subset; bits of negative elements are flipped."""
    if len(bitmask) != prep.n:
        raise ValueError(f"bitmask has {len(bitmask)} bits for {prep.n} elements")
    return [(ch == "1") != (x < 0) for ch, x in zip(bitmask, prep.sorted_elements)]


def bitmask_to_elements(bitmask: str, prep: PreprocessedInstance) -> list[int]:
    return [x for x, used in zip(prep.sorted_elements, inclusion(bitmask, prep)) if used]


def subset_to_index(included: Sequence[bool], prep: PreprocessedInstance) -> int:
    """Inverse of :func:`inclusion` followed by :func:`index_to_bitmask`."""
    index = 0
    for i, (used, x) in enumerate(zip(included, prep.sorted_elements)):
        if used != (x < 0):
            index |= 1 << i
    return index


def make_record(prep: PreprocessedInstance, index: int, target: int) -> SolutionRecord:
    bits = index_to_bitmask(index, prep.n)
    used = inclusion(bits, prep)
    elements = tuple(x for x, u in zip(prep.sorted_elements, used) if u)
    if sum(elements) != target:
        raise RuntimeError(f"index {index} decodes to sum {sum(elements)}, expected {target}")
    positions = tuple(p for p, u in zip(prep.origin_index, used) if u)
    return SolutionRecord(target, index, bits, elements, positions, not elements)
