"""Independent baselines for subset-sum counting and structural checks.

None of these share code with the navigator; they are what its results are
checked against.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from typing import Sequence

import numpy as np

from .core import PreprocessedInstance
from .errors import SizeError

BRUTE_LIMIT = 24
MITM_LIMIT = 30
DP_SPAN_LIMIT = 1 << 22


class Baseline(enum.Enum):
    BRUTE_FORCE = "brute"
    DP = "dp"
    MITM = "mitm"
    BACKTRACKING = "backtracking"


def enumerate_all(elements: Sequence[int], base: int = 0) -> list[int]:
    """Every subset sum, position ``i`` holding the sum over the set bits of ``i``."""
    if len(elements) > BRUTE_LIMIT:
        raise SizeError(f"full enumeration is limited to {BRUTE_LIMIT} elements")
    sums = [base]
    for x in elements:
        sums += [s + x for s in sums]
    return sums


def _subset_sums(elements: Sequence[int]) -> Counter:
    sums = Counter({0: 1})
    for x in elements:
        nxt = Counter(sums)
        for s, c in sums.items():
            nxt[s + x] += c
        sums = nxt
    return sums


def _brute(elements, target):
    return enumerate_all(elements).count(target)


def _dp(elements, target):
    lo = sum(x for x in elements if x < 0)
    hi = sum(x for x in elements if x > 0)
    if not lo <= target <= hi:
        return 0
    span = hi - lo + 1
    if span > DP_SPAN_LIMIT:
        raise SizeError(f"DP table would span {span} sums")
    # object dtype keeps counts exact past 2**63
    table = np.zeros(span, dtype=object)
    table[-lo] = 1
    for x in elements:
        shifted = np.zeros(span, dtype=object)
        if x > 0:
            shifted[x:] = table[:-x]
        elif x < 0:
            shifted[:x] = table[-x:]
        else:
            shifted = table
        table = table + shifted
    return int(table[target - lo])


def _mitm(elements, target):
    if len(elements) > MITM_LIMIT:
        raise SizeError(f"meet-in-the-middle is limited to {MITM_LIMIT} elements")
    half = len(elements) // 2
    left = _subset_sums(elements[:half])
    right = _subset_sums(elements[half:])
    return sum(c * right.get(target - s, 0) for s, c in left.items())


def _backtrack(elements, target):
    items = sorted(elements, key=abs, reverse=True)
    n = len(items)
    # reachable range of the suffix starting at i
    lo = [0] * (n + 1)
    hi = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        lo[i] = lo[i + 1] + min(items[i], 0)
        hi[i] = hi[i + 1] + max(items[i], 0)
    count = 0
    stack = [(0, target)]
    while stack:
        i, rest = stack.pop()
        if not lo[i] <= rest <= hi[i]:
            continue
        if i == n:
            count += rest == 0
            continue
        stack.append((i + 1, rest))
        stack.append((i + 1, rest - items[i]))
    return count


_IMPL = {
    Baseline.BRUTE_FORCE: _brute,
    Baseline.DP: _dp,
    Baseline.MITM: _mitm,
    Baseline.BACKTRACKING: _backtrack,
}


def baseline_count(elements: Sequence[int], target: int, baseline: Baseline = Baseline.DP, allow_empty: bool = True) -> int:
    """Number of raw subsets (zeros included) summing to ``target``."""
    count = _IMPL[Baseline(baseline)](list(elements), target)
    if target == 0 and not allow_empty:
        count -= 1
    return count


def check_symmetry(prep: PreprocessedInstance) -> bool:
    """Positions ``i`` and ``2**n - 1 - i`` add to the total of the shifted set."""
    sums = enumerate_all(prep.abs_elements, prep.neg_shift)
    last = len(sums) - 1
    total = prep.neg_shift + prep.pos_sum
    return all(sums[i] + sums[last - i] == total for i in range(len(sums)))


def check_period(prep: PreprocessedInstance) -> bool:
    """Every block of ``2**k`` positions repeats the first block, translated."""
    sums = enumerate_all(prep.abs_elements)
    n = len(prep.abs_elements)
    for k in range(1, n):
        width = 1 << k
        for start in range(width, len(sums), width):
            shift = sums[start]
            if any(sums[start + i] - shift != sums[i] for i in range(width)):
                return False
    return True


def all_subsets(elements: Sequence[int]):
    """Yield ``(positions, values)`` for every subset; for tiny cross-checks."""
    idx = range(len(elements))
    for r in range(len(elements) + 1):
        for combo in itertools.combinations(idx, r):
            yield combo, [elements[i] for i in combo]
