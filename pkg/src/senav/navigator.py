"""Depth-first navigation of the possibility space through S/E points.

Each level is walked by a generator that yields zoom-in requests and
receives the solution counts found inside the zoomed point; the driver keeps
the generators on an explicit LIFO stack.  Counts are tracked per target so
several targets can share one traversal.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import PreprocessedInstance, TrivialKind, detect_trivial
from .errors import LimitReached
from .mapping import SolutionRecord, make_record, subset_to_index
from .repetition import TrivialAccumulator, detect_repetition, trivial_total
from .sepoint import LevelDescriptor, SEPoint, expand, head_points, seed, step


class Mode(enum.Enum):
    DECISION = "decide"
    COUNT = "count"
    ENUMERATE = "enumerate"


class Action(enum.Enum):
    SKIP = "Skip"
    SOLUTION_AT_START = "SolutionAtStart"
    SOLUTION_AT_END = "SolutionAtEnd"
    ZOOM_IN = "ZoomIn"
    FALSE_POSITIVE_LEAF = "FalsePositiveLeaf"
    STOP_LEVEL = "StopLevel"


class EventKind(enum.Enum):
    VISIT = "Visit"
    ZOOM_IN = "ZoomIn"
    SOLUTION = "Solution"
    FALSE_POSITIVE = "FalsePositive"
    SKIP_LEVEL_REMAINDER = "SkipLevelRemainder"
    REPETITION_BEGIN = "RepetitionBegin"
    REPETITION_END = "RepetitionEnd"


@dataclass(frozen=True)
class TraceEvent:
    depth: int
    kind: EventKind
    sep: Optional[SEPoint] = None
    target: Optional[int] = None
    # enumeration index of a solution
    index: Optional[int] = None
    # trivial solutions added when a repetition ends
    count: Optional[int] = None


@dataclass
class SearchConfig:
    mode: Mode = Mode.COUNT
    targets: tuple[int, ...] = ()
    solution_limit: Optional[int] = None
    trace: bool = False
    parallel: bool = False
    # witnesses kept in count mode; enumerate mode keeps up to solution_limit
    witness_cap: Optional[int] = 1000
    workers: Optional[int] = None

    def __post_init__(self):
        self.mode = Mode(self.mode)
        self.targets = tuple(self.targets)
        if len(set(self.targets)) != len(self.targets):
            raise ValueError("targets must be duplicate-free")
        if self.solution_limit is not None and self.solution_limit < 1:
            raise ValueError("solution_limit must be >= 1")


@dataclass
class Outcome:
    targets: tuple[int, ...]
    zero_count: int
    allow_empty: bool = True
    satisfiable: dict = field(default_factory=dict)
    actual: dict = field(default_factory=dict)
    trivial: dict = field(default_factory=dict)
    pure_zero: dict = field(default_factory=dict)
    final: dict = field(default_factory=dict)
    false_positives: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    max_depth: int = 0
    nodes_visited: int = 0
    interrupted: bool = False
    limit_reached: bool = False

    def _single(self, table):
        if len(self.targets) != 1:
            raise ValueError("ambiguous for a multi-target outcome; index the per-target dict")
        return table[self.targets[0]]

    @property
    def final_count(self) -> int:
        return self._single(self.final)

    @property
    def is_satisfiable(self) -> bool:
        return self._single(self.satisfiable)

    @property
    def actual_count(self) -> int:
        return sum(self.actual.values())

    @property
    def trivial_count(self) -> int:
        return sum(self.trivial.values())

    @property
    def false_positive_count(self) -> int:
        return sum(self.false_positives.values())

    def empty_correction(self, target: int) -> int:
        return 1 if (target == 0 and not self.allow_empty) else 0

    def formula(self, target: int) -> str:
        """``(actual + trivial) × 2^zeros`` with the pure-zero constant and empty-set policy."""
        s = f"({self.actual[target]} + {self.trivial[target]}"
        if self.pure_zero[target]:
            s += " + 1"
        s += f") × 2^{self.zero_count}"
        if self.empty_correction(target):
            s += " − 1"
        return s

    def for_target(self, target: int) -> "Outcome":
        pick = lambda d: {target: d[target]}
        return Outcome(
            targets=(target,),
            zero_count=self.zero_count,
            allow_empty=self.allow_empty,
            satisfiable=pick(self.satisfiable),
            actual=pick(self.actual),
            trivial=pick(self.trivial),
            pure_zero=pick(self.pure_zero),
            final=pick(self.final),
            false_positives=pick(self.false_positives),
            verdicts=pick(self.verdicts),
            witnesses=[w for w in self.witnesses if w.target == target],
            max_depth=self.max_depth,
            nodes_visited=self.nodes_visited,
            interrupted=self.interrupted,
            limit_reached=self.limit_reached,
        )


def classify(sep: SEPoint, target: int, first_of_pair: bool = False) -> Action:
    if sep.start <= target <= sep.end:
        if target == sep.start:
            return Action.SOLUTION_AT_START
        if target == sep.end:
            return Action.SOLUTION_AT_END
        return Action.ZOOM_IN if sep.dist_exp > 0 else Action.FALSE_POSITIVE_LEAF
    if first_of_pair and sep.start > target:
        # later points of this level only start higher
        return Action.STOP_LEVEL
    return Action.SKIP


def _merge(into: dict, src: Optional[dict]) -> None:
    if src:
        for t, c in src.items():
            into[t] = into.get(t, 0) + c


class _Search:
    """State of one traversal: accumulators, witnesses and the frame generators."""

    def __init__(self, prep, config, allow_empty=True, sink=None, cancel=None, on_solution=None):
        self.prep = prep
        self.abs = prep.abs_elements
        self.mode = config.mode
        self.config = config
        self.allow_empty = allow_empty
        self.sink = sink
        self.cancel = cancel
        self.on_solution = on_solution
        self.actual: dict = {}
        self.trivial: dict = {}
        self.fp: dict = {}
        self.witnesses: list[SolutionRecord] = []
        self.nodes = 0
        self.max_depth = 0
        self.done = False
        self.interrupted = False
        self.limit_reached = False
        self.unresolved: set = set()
        self.empty_index = subset_to_index([False] * prep.n, prep)
        if self.mode is Mode.ENUMERATE:
            self.cap = config.solution_limit
        elif self.mode is Mode.DECISION:
            self.cap = None
        else:
            self.cap = config.witness_cap

    # bookkeeping

    def emit(self, depth, kind, sep=None, target=None, index=None, count=None):
        if self.sink is not None:
            self.sink(TraceEvent(depth, kind, sep, target, index, count))

    def solution(self, target, index, depth, sep):
        self.actual[target] = self.actual.get(target, 0) + 1
        self.emit(depth, EventKind.SOLUTION, sep, target, index)
        is_empty = index == self.empty_index
        if is_empty and not self.allow_empty and self.prep.zero_count == 0:
            return
        if self.mode is Mode.DECISION:
            self.unresolved.discard(target)
            if not self.unresolved:
                self.done = True
        if is_empty and not self.allow_empty:
            return
        if self.cap is None or len(self.witnesses) < self.cap:
            rec = make_record(self.prep, index, target)
            self.witnesses.append(rec)
            if self.on_solution is not None:
                self.on_solution(rec)
            if self.mode is Mode.ENUMERATE and self.cap is not None and len(self.witnesses) >= self.cap:
                self.limit_reached = True
                self.done = True

    # one S/E point

    def visit(self, sep: SEPoint, active: list, depth: int, first: bool):
        """Classify ``sep`` against the active targets.

        Returns ``(active, found, zoom)``: the targets still alive on this
        level, counts of solutions at the point's ends, and the targets that
        need a zoom-in.
        """
        self.nodes += 1
        s, e = sep.start, sep.end
        if first and s > active[0]:
            active = [t for t in active if t >= s]
            if not active:
                return active, None, None
        if s > active[-1] or e < active[0]:
            return active, None, None
        found = None
        zoom = None
        visited = False
        decision = self.mode is Mode.DECISION
        for t in active:
            if t < s:
                continue
            if t > e:
                break
            if decision and t not in self.unresolved:
                continue
            if not visited:
                self.emit(depth, EventKind.VISIT, sep)
                visited = True
            if t == s:
                found = found or {}
                found[t] = found.get(t, 0) + 1
                self.solution(t, sep.preceding, depth, sep)
            elif t == e:
                found = found or {}
                found[t] = found.get(t, 0) + 1
                self.solution(t, sep.end_index, depth, sep)
            elif sep.dist_exp:
                zoom = zoom or []
                zoom.append(t)
            else:
                self.fp[t] = self.fp.get(t, 0) + 1
                self.emit(depth, EventKind.FALSE_POSITIVE, sep, t)
            if self.done:
                return active, found, None
        return active, found, zoom

    # one level

    def level(self, desc: LevelDescriptor, targets: list, depth: int):
        """Generator walking one level; returns its per-target solution counts."""
        if depth > self.max_depth:
            self.max_depth = depth
        abs_ = self.abs
        total: dict = {}
        active = list(targets)
        p0, p1 = head_points(abs_, desc)
        for point, first in ((p0, True), (p1, False)):
            active, found, zoom = self.visit(point, active, depth, first)
            _merge(total, found)
            if zoom:
                _merge(total, (yield point, zoom, depth + 1))
            if self.done:
                return total
            if not active:
                self.emit(depth, EventKind.SKIP_LEVEL_REMAINDER, point)
                return total
        prev_block: dict = {}
        run: Optional[dict] = None
        run_from = 0
        state = None
        for j in range(2, desc.budget + 1):
            if self.done:
                return total
            if state is None:
                state = seed(abs_, desc.start, desc.preceding)
                pair = state.pair()
                repeating = False
            else:
                repeating = detect_repetition(state, abs_[j])
                state, pair = step(state, abs_[j])
            if repeating:
                if run is None:
                    run_from = j - 1
                    run = {t: TrivialAccumulator([prev_block.get(t, 0)], last_part_dist_exp=run_from - 1)
                           for t in active}
                    self.emit(depth, EventKind.REPETITION_BEGIN, pair[0])
                copies = j - run_from + 1
                tail = SEPoint(
                    desc.start + copies * abs_[j],
                    state.d,
                    run_from - 1,
                    desc.preceding + (1 << (j + 1)) - (1 << run_from),
                )
                found_here: dict = {}
                active, found, zoom = self.visit(tail, active, depth, False)
                _merge(found_here, found)
                if zoom:
                    _merge(found_here, (yield tail, zoom, depth + 1))
                _merge(total, found_here)
                for t, acc in run.items():
                    acc.push(found_here.get(t, 0))
                continue
            if run is not None:
                self._close_run(run, total, depth)
                run = None
            block: dict = {}
            for point, first in ((pair[0], True), (pair[1], False)):
                active, found, zoom = self.visit(point, active, depth, first)
                _merge(block, found)
                if zoom:
                    _merge(block, (yield point, zoom, depth + 1))
                if self.done:
                    _merge(total, block)
                    return total
                if not active:
                    _merge(total, block)
                    self.emit(depth, EventKind.SKIP_LEVEL_REMAINDER, point)
                    return total
            _merge(total, block)
            prev_block = block
        if run is not None:
            self._close_run(run, total, depth)
        return total

    def _close_run(self, run: dict, total: dict, depth: int) -> None:
        added = 0
        for t, acc in run.items():
            extra = trivial_total(acc)
            if extra:
                self.trivial[t] = self.trivial.get(t, 0) + extra
                total[t] = total.get(t, 0) + extra
                added += extra
        self.emit(depth, EventKind.REPETITION_END, count=added)

    # driver

    def drive(self, root, responder=None):
        """Run ``root`` and every frame it spawns on an explicit stack.

        ``responder``, when given, answers the root's zoom requests instead of
        descending (used by the parallel split).
        """
        stack = [root]
        reply = None
        result: dict = {}
        cancel = self.cancel
        while stack:
            if self.done:
                break
            if cancel is not None and cancel.is_set():
                self.interrupted = True
                break
            try:
                sep, zoom, depth = stack[-1].send(reply)
            except StopIteration as stop:
                stack.pop()
                reply = result = stop.value
                continue
            self.emit(depth - 1, EventKind.ZOOM_IN, sep)
            if responder is not None and len(stack) == 1:
                reply = responder(sep, zoom, depth)
                continue
            stack.append(self.level(expand(sep), zoom, depth))
            reply = None
        return result

    def bypass(self, targets: list) -> None:
        """Direct enumeration for fewer than three non-zero elements."""
        n = self.prep.n
        want = set(targets)
        for index in range(1 << n):
            value = self.prep.neg_shift + sum(a for i, a in enumerate(self.abs) if index >> i & 1)
            self.nodes += 1
            if value in want and (self.mode is not Mode.DECISION or value in self.unresolved):
                self.solution(value, index, 0, None)
                if self.done:
                    return


def _subtree(prep, config, allow_empty, sep, zoom, depth):
    search = _Search(prep, config, allow_empty)
    counts = search.drive(search.level(expand(sep), zoom, depth))
    return counts, search.actual, search.trivial, search.fp, search.witnesses, search.nodes, search.max_depth


def solve(
    prep: PreprocessedInstance,
    config: SearchConfig,
    *,
    allow_empty: bool = True,
    sink: Optional[Callable[[TraceEvent], None]] = None,
    cancel=None,
    on_solution: Optional[Callable[[SolutionRecord], None]] = None,
) -> Outcome:
    """Search all of ``config.targets`` in one traversal.

    ``cancel`` is any object with ``is_set()`` (e.g. ``threading.Event``);
    when it fires the partial outcome is returned with ``interrupted`` set.
    Raises :class:`LimitReached` (carrying the partial outcome) when
    enumerate mode hits ``solution_limit``.
    """
    if not config.targets:
        raise ValueError("no targets to search")
    if config.trace and sink is None:
        raise ValueError("trace requested without an event sink")
    search = _Search(prep, config, allow_empty, sink if config.trace or sink else None, cancel, on_solution)
    verdicts = {t: detect_trivial(prep, t) for t in config.targets}
    live = sorted(t for t, v in verdicts.items() if not v.decided)
    pure = {t: int(verdicts[t].kind is TrivialKind.PURE_ZERO) for t in config.targets}
    for t, v in verdicts.items():
        if v.kind is TrivialKind.EMPTY_SET_ONLY:
            search.unresolved.add(t)
            search.solution(t, search.empty_index, 0, None)
    search.done = False
    search.limit_reached = False
    if live:
        search.unresolved = set(live)
        if prep.n < 3:
            search.bypass(live)
        else:
            top = LevelDescriptor(prep.neg_shift, prep.n - 1, 0)
            use_pool = config.parallel and config.mode is Mode.COUNT and search.sink is None
            if use_pool:
                _parallel_drive(search, prep, config, allow_empty, top, live)
            else:
                search.drive(search.level(top, live, 0))
    outcome = Outcome(targets=tuple(config.targets), zero_count=prep.zero_count, allow_empty=allow_empty)
    for t in config.targets:
        actual = search.actual.get(t, 0)
        trivial = search.trivial.get(t, 0)
        final = (actual + trivial + pure[t]) << prep.zero_count
        if t == 0 and not allow_empty and final:
            final -= 1
        outcome.actual[t] = actual
        outcome.trivial[t] = trivial
        outcome.pure_zero[t] = pure[t]
        outcome.final[t] = final
        outcome.satisfiable[t] = final > 0
        outcome.false_positives[t] = search.fp.get(t, 0)
        outcome.verdicts[t] = verdicts[t]
    outcome.witnesses = search.witnesses
    outcome.max_depth = search.max_depth
    outcome.nodes_visited = search.nodes
    outcome.interrupted = search.interrupted
    outcome.limit_reached = search.limit_reached
    if search.limit_reached:
        raise LimitReached(outcome)
    return outcome


def _parallel_drive(search, prep, config, allow_empty, top, live):
    """Fan the top level's zoom-ins out to worker processes.

    The top level is walked twice: once to collect its zoom requests (their
    choice never depends on counts) and once to feed the merged results back
    in request order, so repetition bookkeeping sees the true counts.
    """
    requests = []

    def collect(sep, zoom, depth):
        requests.append((sep, zoom, depth))
        return {}

    dry = _Search(prep, config, allow_empty)
    dry.drive(dry.level(top, live, 0), responder=collect)
    workers = config.workers or min(len(requests), os.cpu_count() or 1) or 1
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_subtree, prep, config, allow_empty, *r) for r in requests]
        results = [f.result() for f in futures]
    replies = iter(results)

    def answer(sep, zoom, depth):
        counts, actual, trivial, fp, witnesses, nodes, depth_reached = next(replies)
        _merge(search.actual, actual)
        _merge(search.trivial, trivial)
        _merge(search.fp, fp)
        room = None if search.cap is None else max(search.cap - len(search.witnesses), 0)
        search.witnesses.extend(witnesses if room is None else witnesses[:room])
        search.nodes += nodes
        search.max_depth = max(search.max_depth, depth_reached)
        return counts

    search.drive(search.level(top, live, 0), responder=answer)


def solve_multi(prep: PreprocessedInstance, config: SearchConfig, **kwargs) -> dict[int, Outcome]:
    """One shared traversal for several targets, split into per-target outcomes."""
    outcome = solve(prep, config, **kwargs)
    return {t: outcome.for_target(t) for t in sorted(config.targets)}
