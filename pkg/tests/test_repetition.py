import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from senav.core import preprocess
from senav.navigator import EventKind, Mode, SearchConfig, solve
from senav.oracle import baseline_count
from senav.repetition import TrivialAccumulator, coefficients, trivial_total

ROWS = [[1], [2, 1], [3, 3, 1], [4, 6, 4, 1], [5, 10, 10, 5, 1], [6, 15, 20, 15, 6, 1]]


@pytest.mark.parametrize("m, row", list(enumerate(ROWS, start=1)))
def test_coefficient_rows(m, row):
    assert coefficients(m) == row


@pytest.mark.parametrize("m", range(1, 12))
def test_coefficients_are_binomial(m):
    assert coefficients(m) == [comb(m, k) for k in range(1, m + 1)]


def test_coefficients_reject_zero():
    with pytest.raises(ValueError):
        coefficients(0)


def test_trivial_total_zero_when_only_last_count():
    assert trivial_total(TrivialAccumulator([0, 0, 3])) == 0
    assert trivial_total(TrivialAccumulator([5])) == 0


def test_trivial_total_single_repeat():
    # one repeat: the whole pre-run block reappears once
    assert trivial_total(TrivialAccumulator([2, 1])) == 2
    acc = TrivialAccumulator([1])
    acc.push(0)
    acc.push(0)
    assert acc.repeat_count == 3
    # each later block re-enumerates the first once more
    assert trivial_total(acc) == 2


@given(st.lists(st.integers(0, 6), min_size=2, max_size=8))
def test_trivial_identity(n):
    # n[c]: target count among subsets that use c + 1 copies of the repeated value
    blocks = [sum(comb(i, c) * n[c] for c in range(i + 1)) for i in range(len(n))]
    assert trivial_total(TrivialAccumulator(list(n))) == sum(blocks[1:]) - sum(n[1:])


@pytest.mark.parametrize(
    "elements, target, expected",
    [([5, 5, 5, 5, 10], 10, 7), ([5, 5, 5, 5, 10], 20, 7), ([3, 3, 3], 6, 3), ([-2, 2, 5], 0, 2),
     ([1] * 9 + [10], 9, 1), ([1] * 9 + [10], 5, 126), ([2, 2, 2, 2, 2, 2], 6, 20)],
)
def test_repetition_counts(elements, target, expected):
    out = solve(preprocess(elements=elements), SearchConfig(Mode.COUNT, (target,)))
    assert out.final_count == expected == baseline_count(elements, target, "brute")


def test_repetition_events_are_balanced():
    events = []
    solve(preprocess(elements=[1, 4, 4, 4, 4, 9]), SearchConfig(Mode.COUNT, (9,)), sink=events.append)
    begins = sum(e.kind is EventKind.REPETITION_BEGIN for e in events)
    ends = sum(e.kind is EventKind.REPETITION_END for e in events)
    assert begins == ends >= 1


def test_random_multisets():
    rng = random.Random(7)
    for _ in range(150):
        pool = [rng.randint(-9, 9) for _ in range(rng.randint(1, 4))]
        elements = [rng.choice(pool) for _ in range(rng.randint(3, 12))]
        hi = sum(abs(x) for x in elements)
        t = rng.randint(-hi, hi)
        out = solve(preprocess(elements=elements), SearchConfig(Mode.COUNT, (t,)))
        assert out.final_count == baseline_count(elements, t, "brute"), (elements, t)
