"""CNF-SAT encoded as subset sum, and the root-clause solving method.

Literal ``x_i`` maps to ``+4**(i-1)`` and ``¬x_i`` to ``-2 * 4**(i-1)``, so
every clause has a unique value (its literals' sum) and a clause can be read
back from its value with the subset-sum navigator.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, TextIO

from .errors import NoSolution, ParseError, SizeError

MAX_VARS = 31
MAX_ROOT_VARS = 20
EXPAND_LIMIT = 20


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        for i, clause in enumerate(self.clauses):
            if not clause:
                raise ValueError(f"clause {i + 1} is empty")
            seen = set()
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {i + 1}: literal {lit} outside 1..{self.num_vars}")
                if -lit in seen:
                    raise ValueError(f"clause {i + 1} contains {abs(lit)} and its negation")
                seen.add(lit)

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


def parse_dimacs(text: str | TextIO) -> CnfFormula:
    """Read DIMACS CNF.

    Tautological clauses are dropped and repeated literals merged; an empty
    clause (a lone ``0``) is rejected.
    """
    if not isinstance(text, str):
        text = text.read()
    num_vars = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("%"):
            break
        if stripped.startswith("p"):
            parts = stripped.split()
            if num_vars is not None:
                raise ParseError("duplicate problem line", lineno, 1)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("expected 'p cnf <vars> <clauses>'", lineno, 1)
            try:
                # the declared clause count is advisory
                num_vars, _ = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer counts in problem line", lineno, 1) from None
            continue
        if num_vars is None:
            raise ParseError("clause before problem line", lineno, 1)
        col = 0
        for tok in line.split():
            col = line.index(tok, col) + 1
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno, col) from None
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", lineno, col)
                lits = set(current)
                if not any(-l in lits for l in lits):
                    clauses.append(tuple(dict.fromkeys(current)))
                current = []
            elif abs(lit) > num_vars:
                raise ParseError(f"literal {lit} exceeds {num_vars} variables", lineno, col)
            else:
                current.append(lit)
            col += len(tok) - 1
    if num_vars is None:
        raise ParseError("missing problem line", 1, 1)
    if current:
        # tolerate a missing final terminator
        lits = set(current)
        if not any(-l in lits for l in lits):
            clauses.append(tuple(dict.fromkeys(current)))
    return CnfFormula(num_vars, tuple(clauses))


def to_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.num_vars} {len(formula.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in formula.clauses]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LiteralMap:
    num_vars: int

    def __post_init__(self):
        if self.num_vars > MAX_VARS:
            raise SizeError(f"literal values need 2*{self.num_vars} bits; limit is {MAX_VARS} variables")

    def value(self, var: int, positive: bool = True) -> int:
        if not 1 <= var <= self.num_vars:
            raise ValueError(f"variable {var} outside 1..{self.num_vars}")
        return 1 << (2 * (var - 1)) if positive else -(1 << (2 * var - 1))

    def literal_value(self, lit: int) -> int:
        return self.value(abs(lit), lit > 0)

    def elements(self) -> list[int]:
        """The literal values in variable order, positive literal first."""
        return [v for i in range(1, self.num_vars + 1) for v in (self.value(i), self.value(i, False))]


def map_literals(num_vars: int) -> LiteralMap:
    return LiteralMap(num_vars)


def clause_values(formula: CnfFormula, lmap: Optional[LiteralMap] = None) -> list[int]:
    lmap = lmap or LiteralMap(formula.num_vars)
    return [sum(lmap.literal_value(l) for l in c) for c in formula.clauses]


def decode_clause(value: int, lmap: LiteralMap) -> frozenset[int]:
    """Literals whose values sum to ``value``, found by the subset-sum search."""
    from .core import preprocess
    from .navigator import Mode, SearchConfig, solve

    if value == 0:
        raise ValueError("0 is the value of the empty clause")
    elements = lmap.elements()
    out = solve(preprocess(elements=elements), SearchConfig(Mode.DECISION, (value,)))
    if not out.witnesses:
        raise NoSolution(f"no clause over {lmap.num_vars} variables has value {value}")
    lits = frozenset(
        (p // 2 + 1) * (1 if p % 2 == 0 else -1) for p in out.witnesses[0].positions
    )
    if any(-l in lits for l in lits):
        raise ValueError(f"value {value} decodes to a tautology {sorted(lits, key=abs)}")
    return lits


class Provenance(enum.Enum):
    INTERNAL = "I"
    EXTERNAL = "E"

    @property
    def mark(self) -> str:
        return "ᵢ" if self is Provenance.INTERNAL else "ₑ"


@dataclass(frozen=True)
class PartialAssignment:
    values: tuple[Optional[bool], ...]
    provenance: Provenance = Provenance.EXTERNAL

    @property
    def free(self) -> int:
        return sum(v is None for v in self.values)

    def assign(self, var: int, value: bool) -> "PartialAssignment":
        cur = self.values[var - 1]
        if cur is not None and cur != value:
            raise ValueError(f"x{var} already assigned {cur}")
        vals = list(self.values)
        vals[var - 1] = value
        return PartialAssignment(tuple(vals), self.provenance)

    def stars(self) -> str:
        return "".join("*" if v is None else "T" if v else "F" for v in self.values)

    def label(self) -> str:
        return self.provenance.mark + self.stars()

    def expand(self) -> Iterator[tuple[bool, ...]]:
        slots = [i for i, v in enumerate(self.values) if v is None]
        for combo in itertools.product((True, False), repeat=len(slots)):
            vals = list(self.values)
            for i, v in zip(slots, combo):
                vals[i] = v
            yield tuple(vals)

    def overlaps(self, other: "PartialAssignment") -> bool:
        return all(a is None or b is None or a == b for a, b in zip(self.values, other.values))

    @classmethod
    def parse(cls, label: str) -> "PartialAssignment":
        prov = Provenance.EXTERNAL
        if label and label[0] in "ᵢₑ":
            prov = Provenance.INTERNAL if label[0] == "ᵢ" else Provenance.EXTERNAL
            label = label[1:]
        table = {"T": True, "F": False, "*": None}
        return cls(tuple(table[ch] for ch in label), prov)


@dataclass(frozen=True)
class ClauseSignature:
    variables: tuple[int, ...]
    # polarity[i] is True when variables[i] appears positively
    polarity: tuple[bool, ...]
    present: bool
    opposite_present: bool

    @property
    def literals(self) -> tuple[int, ...]:
        return tuple(v if p else -v for v, p in zip(self.variables, self.polarity))

    @property
    def opposite(self) -> tuple[int, ...]:
        return tuple(-l for l in self.literals)

    @property
    def cancelled(self) -> bool:
        return self.opposite_present

    def lead(self, num_vars: int) -> PartialAssignment:
        """Assignment that makes every literal of the signature true."""
        vals: list[Optional[bool]] = [None] * num_vars
        for v, p in zip(self.variables, self.polarity):
            vals[v - 1] = p
        return PartialAssignment(tuple(vals), Provenance.INTERNAL if self.present else Provenance.EXTERNAL)

    def describe(self) -> str:
        body = " ∨ ".join(f"x{l}" if l > 0 else f"¬x{-l}" for l in self.literals)
        return f"({body})"


@dataclass(frozen=True)
class SignatureAnalysis:
    signatures: tuple[ClauseSignature, ...]

    @property
    def unsatisfiable(self) -> bool:
        return all(s.cancelled for s in self.signatures)

    @property
    def leads(self) -> list[ClauseSignature]:
        return [s for s in self.signatures if not s.cancelled]


def root_signatures(clause: Sequence[int], formula: CnfFormula, lmap: Optional[LiteralMap] = None) -> SignatureAnalysis:
    """All polarity variants of ``clause`` and whether each is in the formula.

    Order: the root's first variable positive with the remaining polarities
    running T before F, then the complete opposites in the same order.
    """
    variables = tuple(abs(l) for l in clause)
    k = len(variables)
    if k > MAX_ROOT_VARS:
        raise SizeError(f"root clause has {k} variables; limit is {MAX_ROOT_VARS}")
    lmap = lmap or LiteralMap(formula.num_vars)
    present_values = set(clause_values(formula, lmap))

    def value_of(pol):
        return sum(lmap.value(v, p) for v, p in zip(variables, pol))

    firsts = [(True,) + rest for rest in itertools.product((True, False), repeat=k - 1)]
    order = firsts + [tuple(not p for p in pol) for pol in firsts]
    sigs = []
    for pol in order:
        opp = tuple(not p for p in pol)
        sigs.append(ClauseSignature(variables, pol, value_of(pol) in present_values, value_of(opp) in present_values))
    return SignatureAnalysis(tuple(sigs))


class PropKind(enum.Enum):
    PROGRESS = "Progress"
    STALLED = "Stalled"
    ALL_SATISFIED = "AllSatisfied"
    CONFLICT = "Conflict"


@dataclass(frozen=True)
class Propagation:
    kind: PropKind
    partial: PartialAssignment
    # index of the clause that forced the last assignment or was dissatisfied
    clause: Optional[int] = None
    forced: tuple[tuple[int, bool], ...] = ()


def propagate(formula: CnfFormula, partial: PartialAssignment, fixpoint: bool = True) -> Propagation:
    """Forced assignments until nothing changes.

    A clause whose literals are all false but one unassigned forces that
    literal; a clause with every literal false is a conflict.  With
    ``fixpoint=False`` the first forced assignment returns ``Progress``.
    """
    vals = list(partial.values)
    forced: list[tuple[int, bool]] = []
    last = None
    changed = True
    while changed:
        changed = False
        open_clauses = 0
        for ci, clause in enumerate(formula.clauses):
            unassigned = None
            n_unassigned = 0
            satisfied = False
            for lit in clause:
                v = vals[abs(lit) - 1]
                if v is None:
                    n_unassigned += 1
                    unassigned = lit
                elif v == (lit > 0):
                    satisfied = True
                    break
            if satisfied:
                continue
            if n_unassigned == 0:
                return Propagation(PropKind.CONFLICT, PartialAssignment(tuple(vals), partial.provenance), ci, tuple(forced))
            if n_unassigned == 1:
                vals[abs(unassigned) - 1] = unassigned > 0
                forced.append((abs(unassigned), unassigned > 0))
                last = ci
                changed = True
                if not fixpoint:
                    return Propagation(PropKind.PROGRESS, PartialAssignment(tuple(vals), partial.provenance), ci, tuple(forced))
                continue
            open_clauses += 1
    result = PartialAssignment(tuple(vals), partial.provenance)
    return Propagation(PropKind.STALLED if open_clauses else PropKind.ALL_SATISFIED, result, last, tuple(forced))


def _branch_var(formula: CnfFormula, partial: PartialAssignment) -> int:
    vals = partial.values
    best = None
    for clause in formula.clauses:
        if any(vals[abs(l) - 1] == (l > 0) for l in clause):
            continue
        for lit in clause:
            if vals[abs(lit) - 1] is None and (best is None or abs(lit) < best):
                best = abs(lit)
    assert best is not None
    return best


@dataclass
class SatOutcome:
    satisfiable: bool
    partial_solutions: list[PartialAssignment]
    total_count: int
    root: tuple[int, ...] = ()
    signatures: Optional[SignatureAnalysis] = None
    # labels of leads or branches that ran into a dissatisfied clause
    false_positives: list[str] = field(default_factory=list)

    def labels(self) -> list[str]:
        return [p.label() for p in self.partial_solutions]


def _distinct_count(partials: list[PartialAssignment], num_vars: int) -> int:
    disjoint = all(
        not a.overlaps(b) for i, a in enumerate(partials) for b in partials[i + 1:]
    )
    if disjoint:
        return sum(1 << p.free for p in partials)
    if num_vars > EXPAND_LIMIT:
        raise SizeError("overlapping partials over more than 20 variables")
    seen: set = set()
    for p in partials:
        seen.update(p.expand())
    return len(seen)


def solve_sat(formula: CnfFormula, root_index: int = 0) -> SatOutcome:
    """Root-clause method: seed a lead per usable signature, propagate, branch."""
    n = formula.num_vars
    if not formula.clauses:
        free = PartialAssignment((None,) * n)
        return SatOutcome(True, [free], 1 << n)
    lmap = LiteralMap(n)
    root = formula.clauses[root_index]
    analysis = root_signatures(root, formula, lmap)
    if analysis.unsatisfiable:
        return SatOutcome(False, [], 0, tuple(root), analysis)
    partials: list[PartialAssignment] = []
    fps: list[str] = []
    for sig in analysis.leads:
        stack = [sig.lead(n)]
        while stack:
            cur = stack.pop()
            res = propagate(formula, cur)
            if res.kind is PropKind.CONFLICT:
                fps.append(res.partial.label())
            elif res.kind is PropKind.ALL_SATISFIED:
                partials.append(res.partial)
            else:
                var = _branch_var(formula, res.partial)
                # pushed last is explored first
                stack.append(res.partial.assign(var, True))
                stack.append(res.partial.assign(var, False))
    total = _distinct_count(partials, n)
    return SatOutcome(total > 0, partials, total, tuple(root), analysis, fps)


def truth_table_count(formula: CnfFormula) -> int:
    if formula.num_vars > 24:
        raise SizeError("truth table limited to 24 variables")
    return sum(formula.evaluate(a) for a in itertools.product((True, False), repeat=formula.num_vars))
