"""Command-line front end: ``se-nav [instance] --mode count ...``."""

from __future__ import annotations

import argparse
import json
import signal
import sys
import threading
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence, TextIO

from . import oracle
from .core import Instance, TrivialKind, preprocess
from .errors import LimitReached, ParseError, SizeError
from .mapping import make_record
from .navigator import EventKind, Mode, Outcome, SearchConfig, TraceEvent, solve

SCHEMA = "se-nav/1"
WITNESS_CAP = 1000

EXIT_OK, EXIT_UNSAT, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2, 3

REASONS = {
    TrivialKind.PURE_ZERO: "Pure Zero Subset Sum Instance! Subset Sum Instance Has Target Sum Zero And A Set Containing Only Zeros.",
    TrivialKind.EVEN_ODD_UNSAT: "All Even Number Elements Cannot Result To An Odd Target Sum.",
    TrivialKind.OUT_OF_BOUNDS: "Target Sum Lies Outside The Reachable Range.",
    TrivialKind.EMPTY_SET_ONLY: "Only The Empty Set Sums To Zero In A Positive Set.",
}

ORACLES = {
    "brute": [oracle.Baseline.BRUTE_FORCE],
    "dp": [oracle.Baseline.DP],
    "mitm": [oracle.Baseline.MITM],
    "all": list(oracle.Baseline),
}


def _parse_ints(text: str, lineno: int, sep: Optional[str]) -> list[int]:
    out = []
    pos = 0
    for tok in text.split(sep):
        tok_s = tok.strip()
        col = text.index(tok, pos) + 1 + (len(tok) - len(tok.lstrip()))
        pos = text.index(tok, pos) + len(tok)
        if not tok_s:
            raise ParseError("missing integer", lineno, col)
        try:
            out.append(int(tok_s))
        except ValueError:
            raise ParseError(f"not an integer: {tok_s!r}", lineno, col) from None
    return out


def parse_instance_text(text: str) -> Instance:
    """Line format (targets, then elements) or a JSON object."""
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        # a full report echoes the instance under "instance"
        data = data.get("instance", data)
        try:
            targets = data["targets"]
            elements = data.get("elements", [])
        except (KeyError, AttributeError):
            raise ParseError("JSON instance needs 'targets' and 'elements'", 1, 1) from None
        if isinstance(targets, int):
            targets = [targets]
        for name, seq in (("targets", targets), ("elements", elements)):
            if not isinstance(seq, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in seq):
                raise ParseError(f"'{name}' must be a list of integers", 1, 1)
        try:
            return Instance(tuple(elements), tuple(targets), bool(data.get("allow_empty", True)))
        except ValueError as exc:
            raise ParseError(str(exc), 1, 1) from None
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines or not lines[0].strip():
        raise ParseError("first line must list the target sums", 1, 1)
    if len(lines) > 2:
        raise ParseError("expected at most two lines", 3, 1)
    targets = _parse_ints(lines[0], 1, ",")
    for i, t in enumerate(targets):
        if t in targets[:i]:
            raise ParseError(f"duplicate target {t}", 1, 1)
    elements = _parse_ints(lines[1], 2, None) if len(lines) > 1 and lines[1].strip() else []
    return Instance(tuple(elements), tuple(targets))


def parse_instance(source: Optional[str] = None, stdin: Optional[TextIO] = None) -> Instance:
    if source is None or source == "-":
        text = (stdin or sys.stdin).read()
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    return parse_instance_text(text)


def render_event(ev: TraceEvent, prep) -> str:
    pad = "\t" * (ev.depth + 1)
    if ev.kind is EventKind.VISIT:
        return pad + ev.sep.label()
    if ev.kind is EventKind.SOLUTION:
        rec = make_record(prep, ev.index, ev.target)
        return f"{pad}Target Sum found! = {ev.index}({ev.target})0 = {rec.describe()}"
    if ev.kind is EventKind.FALSE_POSITIVE:
        return pad + "False Positive!"
    if ev.kind is EventKind.REPETITION_BEGIN:
        return pad + "Repetition Detected! Trivial Count To Be Updated When Repetition Ends."
    if ev.kind is EventKind.REPETITION_END:
        if ev.count:
            return pad + "End Of Repetition! Trivial Count Updated."
        return pad + "End Of Repetition! No Trivial Solutions Within, Trivial Count Up To Date."
    if ev.kind is EventKind.ZOOM_IN:
        return f"{pad}Zoom In: {ev.sep.label()}"
    return pad + "Skipping Rest Of Level."


@dataclass
class RunReport:
    instance: Instance
    mode: Mode
    outcome: Outcome
    timing: dict = field(default_factory=dict)
    baselines: list = field(default_factory=list)

    def to_dict(self) -> dict:
        o = self.outcome
        return {
            "schema": SCHEMA,
            "instance": {
                "targets": list(self.instance.targets),
                "elements": list(self.instance.elements),
                "allow_empty": self.instance.allow_empty,
            },
            "mode": self.mode.value,
            "results": [
                {
                    "target": t,
                    "satisfiable": o.satisfiable[t],
                    "verdict": o.verdicts[t].kind.value,
                    "zeros": o.zero_count,
                    "actual": o.actual[t],
                    "trivial": o.trivial[t],
                    "pure_zero": o.pure_zero[t],
                    "final": o.final[t],
                    "formula": o.formula(t),
                    "false_positives": o.false_positives[t],
                }
                for t in o.targets
            ],
            "witnesses": [w.to_dict() for w in o.witnesses[:WITNESS_CAP]],
            "max_depth": o.max_depth,
            "nodes_visited": o.nodes_visited,
            "interrupted": o.interrupted,
            "limit_reached": o.limit_reached,
            "timing": self.timing,
            "baselines": self.baselines,
        }


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="se-nav", description="Exact subset-sum search over starting/ending points.")
    p.add_argument("instance", nargs="?", help="instance file (line or JSON format); stdin when omitted")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="count")
    p.add_argument("--limit", type=int, help="stop after N witnesses (enumerate mode)")
    p.add_argument("--trace", action="store_true", help="print every search event, tab-indented by depth")
    p.add_argument("--parallel", action="store_true", help="split top-level zoom-ins over processes (count mode)")
    p.add_argument("--oracle", choices=["off", "brute", "dp", "mitm", "all"], default="off")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--sat", metavar="DIMACS", help="solve a CNF formula through the clause-value encoding")
    p.add_argument("--benchmark", action="store_true", help="time the navigator against the baselines")
    p.add_argument("--no-empty", action="store_true", help="do not count the empty subset")
    return p


def _cross_check(instance: Instance, outcome: Outcome, which: str, mode: Mode) -> tuple[list, bool]:
    rows = []
    ok = True
    for base in ORACLES[which]:
        for t in outcome.targets:
            try:
                c = oracle.baseline_count(instance.elements, t, base, instance.allow_empty)
            except SizeError as exc:
                rows.append({"baseline": base.value, "target": t, "count": None, "status": f"skipped: {exc}"})
                continue
            if mode is Mode.COUNT and not outcome.interrupted:
                agree = c == outcome.final[t]
            else:
                agree = (c > 0) == outcome.satisfiable[t] or outcome.interrupted or outcome.limit_reached
            ok &= agree
            rows.append({"baseline": base.value, "target": t, "count": c, "status": "agree" if agree else "MISMATCH"})
    return rows, ok


def _run_sat(args, out) -> int:
    from .satbridge import clause_values, map_literals, parse_dimacs, solve_sat, truth_table_count

    with open(args.sat, encoding="utf-8") as fh:
        formula = parse_dimacs(fh)
    lmap = map_literals(formula.num_vars)
    res = solve_sat(formula)
    code = EXIT_OK if res.satisfiable else EXIT_UNSAT
    check = None
    if args.oracle != "off":
        truth = truth_table_count(formula)
        check = {"truth_table": truth, "status": "agree" if truth == res.total_count else "MISMATCH"}
        if truth != res.total_count:
            code = EXIT_MISMATCH
    if args.json:
        doc = {
            "schema": SCHEMA,
            "num_vars": formula.num_vars,
            "literal_values": lmap.elements(),
            "clause_values": clause_values(formula, lmap),
            "satisfiable": res.satisfiable,
            "partials": res.labels(),
            "false_positives": res.false_positives,
            "total_count": res.total_count,
            "oracle": check,
        }
        print(json.dumps(doc, ensure_ascii=False, indent=2), file=out)
        return code
    print(f"Literal Values: {lmap.elements()}", file=out)
    print(f"Clause Values: {clause_values(formula, lmap)}", file=out)
    if res.signatures is not None:
        for sig in res.signatures.signatures:
            flag = "cancelled" if sig.cancelled else ("internal" if sig.present else "external")
            print(f"\t{sig.describe()} {flag}", file=out)
    for fp in res.false_positives:
        print(f"False positive: {fp}", file=out)
    print("Partial Solutions: " + ", ".join(res.labels()), file=out)
    print(f"Satisfiable: {'yes' if res.satisfiable else 'no'}", file=out)
    print(f"Number Of Satisfying Assignments: {res.total_count}", file=out)
    if check:
        print(f"Truth table: {check['truth_table']} ({check['status']})", file=out)
    return code


def _print_text(report: RunReport, prep, out, streamed: bool) -> None:
    o = report.outcome
    for t in o.targets:
        if len(o.targets) > 1:
            print(f"\nTarget Sum: {t}", file=out)
        verdict = o.verdicts[t]
        if verdict.decided:
            print(REASONS[verdict.kind], file=out)
        if report.mode is Mode.DECISION:
            print(f"Satisfiable: {'yes' if o.satisfiable[t] else 'no'}", file=out)
            for w in o.witnesses:
                if w.target == t:
                    print(f"Witness: {w.preceding_index}({t})0 = {w.describe()}", file=out)
            continue
        if not streamed:
            for w in o.witnesses:
                if w.target == t:
                    print(f"Target Sum found! = {w.preceding_index}({t})0 = {w.describe()}", file=out)
        print(f"\nZeros Count: {o.zero_count}", file=out)
        print(f"Trivially Counted Solutions: {o.trivial[t]}", file=out)
        print(f"Actual Count Of Solutions Before Processing: {o.actual[t]}", file=out)
        print(f"Number Of Possible Solutions Found: {o.final[t]} = {o.formula(t)}", file=out)
    if o.interrupted:
        print("\nSearch interrupted; counts are partial.", file=out)
    if o.limit_reached:
        print(f"\nStopped after {len(o.witnesses)} witnesses (--limit).", file=out)
    for row in report.baselines:
        print(f"Oracle {row['baseline']} T={row['target']}: {row['count']} ({row['status']})", file=out)


def run(argv: Optional[Sequence[str]] = None, stdin: Optional[TextIO] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.benchmark:
            from .benchmark import format_table, run_benchmark

            rows = run_benchmark()
            if args.json:
                print(json.dumps({"schema": SCHEMA, "benchmark": [r.to_dict() for r in rows]}, indent=2), file=out)
            else:
                print(format_table(rows), file=out)
            return EXIT_OK
        if args.sat:
            return _run_sat(args, out)
        return _run_subset_sum(args, stdin, out)
    except (ParseError, ValueError, TypeError, OverflowError, OSError, SizeError) as exc:
        print(f"se-nav: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def _run_subset_sum(args, stdin, out) -> int:
    timing = {}
    t0 = time.perf_counter()
    instance = parse_instance(args.instance, stdin)
    if args.no_empty:
        instance = Instance(instance.elements, instance.targets, False)
    timing["parse"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    prep = preprocess(instance)
    timing["preprocess"] = time.perf_counter() - t0
    mode = Mode(args.mode)
    config = SearchConfig(mode, instance.targets, solution_limit=args.limit, trace=args.trace and not args.json,
                          parallel=args.parallel, witness_cap=WITNESS_CAP)
    streamed = mode is Mode.ENUMERATE and not args.json

    def stream(rec):
        print(f"Target Sum found! = {rec.preceding_index}({rec.target})0 = {rec.describe()}", file=out, flush=True)

    def sink(ev):
        print(render_event(ev, prep), file=out, flush=True)

    if not args.json:
        print("Elements: " + "".join(f"{x}; " for x in instance.elements), file=out)
        print("Target Sum: " + ", ".join(map(str, instance.targets)), file=out)
    cancel = threading.Event()
    previous = None
    if threading.current_thread() is threading.main_thread():
        previous = signal.signal(signal.SIGINT, lambda *_: cancel.set())
    t0 = time.perf_counter()
    try:
        outcome = solve(
            prep, config, allow_empty=instance.allow_empty,
            sink=sink if args.trace and not args.json else None,
            cancel=cancel,
            on_solution=stream if streamed and not args.trace else None,
        )
    except LimitReached as stop:
        outcome = stop.outcome
    finally:
        if previous is not None:
            signal.signal(signal.SIGINT, previous)
    timing["search"] = time.perf_counter() - t0
    report = RunReport(instance, mode, outcome, timing)
    ok = True
    if args.oracle != "off":
        t0 = time.perf_counter()
        report.baselines, ok = _cross_check(instance, outcome, args.oracle, mode)
        timing["oracle"] = time.perf_counter() - t0
    if args.json:
        print(json.dumps(report.to_dict(), indent=2), file=out)
    else:
        _print_text(report, prep, out, streamed or args.trace)
    if not ok:
        return EXIT_MISMATCH
    return EXIT_OK if any(outcome.satisfiable.values()) else EXIT_UNSAT


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
