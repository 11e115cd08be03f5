import pytest
from hypothesis import given, strategies as st

from senav.core import preprocess
from senav.oracle import enumerate_all
from senav.sepoint import SEPoint, expand, first_level, level, seed, step

from conftest import level_view, parse_listing

ONE_TO_EIGHT = (
    "0, 1, 2, 3, (3, 4)_1, (5, 6)_1, (4, 7)_3, (7, 10)_3, (5, 11)_7, (9, 15)_7, (6, 16)_15, (11, 21)_15,"
    " (7, 22)_31, (13, 28)_31, (8, 29)_63, (15, 36)_63"
)


def test_first_level_one_to_eight():
    assert level_view(first_level(preprocess(elements=range(1, 9)))) == parse_listing(ONE_TO_EIGHT)


def test_distances_one_to_eight():
    lv = first_level(preprocess(elements=range(1, 9)))
    assert [p.distance for p in lv.points()] == [1, 1, 3, 3, 7, 7, 15, 15, 31, 31, 63, 63]
    assert len(lv.values()) == 4 * 8 - 4


@pytest.mark.parametrize(
    "sep, listing",
    [
        (SEPoint(7, 22, 4, 64),
         "7, 8, 9, 10, (10, 11)_1, (12, 13)_1, (11, 14)_3, (14, 17)_3, (12, 18)_7, (16, 22)_7"),
        (SEPoint(13, 28, 4, 96),
         "13, 14, 15, 16, (16, 17)_1, (18, 19)_1, (17, 20)_3, (20, 23)_3, (18, 24)_7, (22, 28)_7"),
        (SEPoint(8, 29, 5, 128),
         "8, 9, 10, 11, (11, 12)_1, (13, 14)_1, (12, 15)_3, (15, 18)_3, (13, 19)_7, (17, 23)_7, (14, 24)_15, (19, 29)_15"),
        (SEPoint(15, 36, 5, 192),
         "15, 16, 17, 18, (18, 19)_1, (20, 21)_1, (19, 22)_3, (22, 25)_3, (20, 26)_7, (24, 30)_7, (21, 31)_15, (26, 36)_15"),
    ],
)
def test_expand_worked_points(sep, listing):
    prep = preprocess(elements=range(1, 9))
    assert level_view(level(prep.abs_elements, expand(sep))) == parse_listing(listing)


def test_labels_and_indices():
    lv = first_level(preprocess(elements=range(1, 9)))
    by_label = {p.label(): p for p in lv.points()}
    assert "96(13, 28)31" in by_label
    assert by_label["64(7, 22)31"].end_index == 95


@pytest.mark.parametrize(
    "elements, listing",
    [
        ([1, 6, 31, 16, 8, 4, 2],
         "0, 1, 2, 3, (4, 5)_1, (6, 7)_1, (6, 9)_3, (10, 13)_3, (8, 15)_7, (14, 21)_7, (16, 29)_15, (24, 37)_15, (31, 52)_31, (47, 68)_31"),
        ([-1, 2, -3, 4, -5, 6],
         "-9, -8, -7, -6, (-6, -5)_1, (-4, -3)_1, (-5, -2)_3, (-2, 1)_3, (-4, 2)_7, (0, 6)_7, (-3, 7)_15, (2, 12)_15"),
        ([2, 3, 5, 7, 11],
         "0, 2, 3, 5, (5, 7)_1, (8, 10)_1, (7, 12)_3, (12, 17)_3, (11, 21)_7, (18, 28)_7"),
        ([5, 5, 5, 5, 10],
         "0, 5, 5, 10, (5, 10)_1, (10, 15)_1, (5, 15)_3, (10, 20)_3, (10, 25)_7, (15, 30)_7"),
        ([17, 25, 31, 47, 59, 71, 89, 97],
         "0, 17, 25, 42, (31, 48)_1, (56, 73)_1, (47, 89)_3, (78, 120)_3, (59, 132)_7, (106, 179)_7, (71, 191)_15,"
         " (130, 250)_15, (89, 268)_31, (160, 339)_31, (97, 347)_63, (186, 436)_63"),
        ([1, 2, 4, 8, 16, 100, 100, 100, -36, 0],
         "-36, -35, -34, -33, (-32, -31)_1, (-30, -29)_1, (-28, -25)_3, (-24, -21)_3, (-20, -13)_7, (-12, -5)_7,"
         " (0, 15)_15, (16, 31)_15, (64, 95)_31, (100, 131)_31, (64, 131)_63, (164, 231)_63, (64, 231)_127, (164, 331)_127"),
    ],
)
def test_first_level_worked_sets(elements, listing):
    assert level_view(first_level(preprocess(elements=elements))) == parse_listing(listing)


def test_mixed_sign_set_flattened():
    # the worked listing for this set labels each pair one distance step higher;
    # its values, read in order, are the level's values
    listed = (
        "(-6, -5)_1, (-5, -4)_1, (-4, -3)_3, (-3, -2)_3, (-4, -2)_7, (-2, 0)_7,"
        " (-3, 1)_15, (-1, 3)_15, (-3, 3)_31, (0, 6)_31"
    )
    flat = [v for s, e, _ in parse_listing(listed)[1] for v in (s, e)]
    lv = first_level(preprocess(elements=[-1, -2, -3, 1, 2, 3]))
    assert lv.values() == flat
    assert [p.distance for p in lv.points()] == [1, 1, 3, 3, 7, 7, 15, 15]


def test_step_recurrence():
    st0 = seed((1, 2, 3, 4), 0)
    assert st0.pair() == (SEPoint(3, 4, 0, 4), SEPoint(5, 6, 0, 6))
    st1, (a, b) = step(st0, 4)
    assert (a.start, a.end, b.start, b.end) == (4, 7, 7, 10)
    assert (a.preceding, b.preceding) == (8, 12)


def test_errors():
    with pytest.raises(ValueError):
        first_level(preprocess(elements=[1, 2]))
    with pytest.raises(ValueError):
        expand(SEPoint(1, 2, 0, 0))
    with pytest.raises(OverflowError):
        seed((1, 2, 2**127), 0)


@given(st.lists(st.integers(-40, 40).filter(bool), min_size=3, max_size=10))
def test_level_matches_enumeration(elements):
    prep = preprocess(elements=elements)
    sums = enumerate_all(prep.abs_elements, prep.neg_shift)
    lv = first_level(prep)
    assert list(lv.head) == sums[:4]
    for p in lv.points():
        assert sums[p.preceding] == p.start
        assert sums[p.end_index] == p.end


@given(st.lists(st.integers(1, 40), min_size=4, max_size=9), st.data())
def test_expand_matches_enumeration(elements, data):
    prep = preprocess(elements=elements)
    sums = enumerate_all(prep.abs_elements, prep.neg_shift)
    pts = [p for p in first_level(prep).points() if p.dist_exp > 0]
    p = data.draw(st.sampled_from(pts))
    inner = level(prep.abs_elements, expand(p))
    assert list(inner.head) == sums[p.preceding:p.preceding + 4]
    for q in inner.points():
        assert sums[q.preceding] == q.start and sums[q.end_index] == q.end
    if inner.points():
        assert inner.points()[-1].end_index == p.end_index
    else:
        assert len(inner.head) == p.distance + 1
