import random

import pytest
from hypothesis import given, strategies as st

from senav.errors import NoSolution, ParseError, SizeError
from senav.satbridge import (CnfFormula, PartialAssignment, PropKind, Provenance, clause_values, decode_clause,
                             map_literals, parse_dimacs, propagate, root_signatures, solve_sat, to_dimacs,
                             truth_table_count)

WORKED_PARTIALS = ["ₑTTT*", "ₑTTFF", "ₑTFFF", "ₑFFF*", "ₑFFTT", "ₑFTT*"]


def random_cnf(rng, max_vars=12):
    n = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(1, 4 * n)):
        vs = rng.sample(range(1, n + 1), rng.randint(1, min(n, 4)))
        clauses.append([v * rng.choice((1, -1)) for v in vs])
    return CnfFormula(n, clauses)


def test_literal_values():
    assert map_literals(4).elements() == [1, -2, 4, -8, 16, -32, 64, -128]
    assert map_literals(1).elements() == [1, -2]
    lm = map_literals(5)
    assert (lm.value(5), lm.value(5, False)) == (256, -512)
    with pytest.raises(SizeError):
        map_literals(32)


def test_clause_values(worked_formula):
    assert clause_values(worked_formula) == [9, -126, 36, -114]
    assert clause_values(CnfFormula(1, [[1]])) == [1]
    assert clause_values(CnfFormula(2, [[-1, -2]])) == [-10]


def test_decode(worked_formula):
    lm = map_literals(4)
    assert decode_clause(9, lm) == {1, -2, 3}
    assert decode_clause(-126, lm) == {-1, 2, -4}
    with pytest.raises(ValueError):
        decode_clause(0, lm)
    with pytest.raises(ValueError):
        decode_clause(-1, lm)  # x1 together with its negation
    with pytest.raises(NoSolution):
        decode_clause(1000, lm)


def test_signatures(worked_formula):
    sigs = root_signatures(worked_formula.clauses[0], worked_formula)
    assert len(sigs.signatures) == 8
    assert [s.literals for s in sigs.signatures if s.present] == [(1, -2, 3)]
    assert [s.literals for s in sigs.signatures if s.cancelled] == [(-1, 2, -3)]
    assert sum(not s.present and not s.cancelled for s in sigs.signatures) == 6
    assert len(root_signatures((2,), worked_formula).signatures) == 2


def test_every_signature_present_is_unsat():
    f = CnfFormula(2, [[1, 2], [1, -2], [-1, 2], [-1, -2]])
    assert root_signatures(f.clauses[0], f).unsatisfiable
    out = solve_sat(f)
    assert not out.satisfiable and out.total_count == 0


def test_propagate_examples():
    lead = PartialAssignment.parse("ᵢTFT*")
    step = propagate(CnfFormula(4, [[-1, 2, -4], [2, -3, 4]]), lead, fixpoint=False)
    assert step.kind is PropKind.PROGRESS and step.partial.stars() == "TFTF"
    res = propagate(CnfFormula(4, [[2, -3, 4]]), PartialAssignment.parse("ᵢTFTF"))
    assert res.kind is PropKind.CONFLICT and res.clause == 0
    done = propagate(CnfFormula(2, [[1], [1, 2]]), PartialAssignment.parse("T*"))
    assert done.kind is PropKind.ALL_SATISFIED
    stalled = propagate(CnfFormula(3, [[2, 3]]), PartialAssignment.parse("T**"))
    assert stalled.kind is PropKind.STALLED


def test_worked_formula(worked_formula):
    out = solve_sat(worked_formula)
    assert out.labels() == WORKED_PARTIALS
    assert out.total_count == 9 == truth_table_count(worked_formula)
    assert out.false_positives == ["ᵢTFTF"]


def test_contradiction():
    out = solve_sat(CnfFormula(1, [[1], [-1]]))
    assert not out.satisfiable


def test_no_clauses():
    assert solve_sat(CnfFormula(3, [])).total_count == 8


def test_partial_assignment():
    p = PartialAssignment.parse("ₑT*F")
    assert p.provenance is Provenance.EXTERNAL and p.free == 1
    assert sorted(p.expand()) == [(True, False, False), (True, True, False)]
    with pytest.raises(ValueError):
        p.assign(1, False)
    assert p.overlaps(PartialAssignment.parse("TT*"))
    assert not p.overlaps(PartialAssignment.parse("F**"))


def test_dimacs_parse():
    text = "c demo\np cnf 4 4\n1 -2 3 0\n-1 2 -4 0\n2 -3 4 0 -1 3\n-4 0\n"
    f = parse_dimacs(text)
    assert f.clauses == ((1, -2, 3), (-1, 2, -4), (2, -3, 4), (-1, 3, -4))
    assert parse_dimacs(to_dimacs(f)) == f
    assert parse_dimacs("p cnf 2 2\n1 -1 0\n2 2 0\n").clauses == ((2,),)


@pytest.mark.parametrize(
    "text, line",
    [("1 2 0\n", 1), ("p cnf 2 1\n1 0\n0\n", 3), ("p cnf 2 1\n1 x 0\n", 2), ("p cnf 1 1\n2 0\n", 2), ("", 1)],
)
def test_dimacs_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_dimacs(text)
    assert info.value.line == line


def test_formula_validation():
    with pytest.raises(ValueError):
        CnfFormula(2, [[]])
    with pytest.raises(ValueError):
        CnfFormula(2, [[1, -1]])
    with pytest.raises(ValueError):
        CnfFormula(2, [[3]])


def test_truth_table_agreement():
    rng = random.Random(5)
    for _ in range(200):
        f = random_cnf(rng)
        out = solve_sat(f)
        assert out.total_count == truth_table_count(f)
        for p in out.partial_solutions:
            assert all(f.evaluate(a) for a in p.expand())


@given(st.integers(1, 8), st.data())
def test_decode_inverts_clause_values(n, data):
    lits = data.draw(st.lists(st.integers(1, n), min_size=1, max_size=n, unique=True))
    clause = [v * data.draw(st.sampled_from((1, -1))) for v in lits]
    f = CnfFormula(n, [clause])
    lm = map_literals(n)
    (value,) = clause_values(f, lm)
    assert decode_clause(value, lm) == set(clause)


@given(st.integers(1, 6), st.data())
def test_encoding_injective(n, data):
    lm = map_literals(n)
    seen = {}
    for _ in range(20):
        vs = data.draw(st.lists(st.integers(1, n), min_size=1, max_size=n, unique=True))
        clause = frozenset(v * data.draw(st.sampled_from((1, -1))) for v in vs)
        value = sum(lm.literal_value(l) for l in clause)
        assert seen.setdefault(value, clause) == clause
