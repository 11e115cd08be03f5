"""Wall-time comparison of the navigator against the exact baselines.

Trend inspection only: nothing here gates a test.
"""

from __future__ import annotations

import random
import threading
import time
from dataclasses import asdict, dataclass
from typing import Optional

from . import oracle
from .core import preprocess
from .errors import SizeError
from .navigator import Mode, SearchConfig, solve

SIZES = (16, 24, 32)
# plain backtracking needs tens of seconds past this size
BACKTRACK_LIMIT = 28


@dataclass
class BenchRow:
    n: int
    method: str
    seconds: Optional[float]
    count: Optional[int]
    status: str = "ok"
    nodes: Optional[int] = None

    def to_dict(self) -> dict:
        return asdict(self)


def make_instance(n: int, rng: random.Random, high: int = 1000) -> tuple[list[int], int]:
    elements = [rng.randint(1, high) for _ in range(n)]
    # a target near half the total sits where the counts are densest
    return elements, sum(elements) // 2


def _navigator(elements, target, budget):
    cancel = threading.Event()
    timer = threading.Timer(budget, cancel.set)
    timer.start()
    try:
        out = solve(preprocess(elements=elements), SearchConfig(Mode.COUNT, (target,), witness_cap=0), cancel=cancel)
    finally:
        timer.cancel()
    return out


def run_benchmark(sizes=SIZES, seed: int = 0, budget: float = 10.0) -> list[BenchRow]:
    rng = random.Random(seed)
    rows = []
    for n in sizes:
        elements, target = make_instance(n, rng)
        t0 = time.perf_counter()
        out = _navigator(elements, target, budget)
        dt = time.perf_counter() - t0
        status = "timeout" if out.interrupted else "ok"
        rows.append(BenchRow(n, "navigator", dt, None if out.interrupted else out.final_count, status, out.nodes_visited))
        for base in (oracle.Baseline.DP, oracle.Baseline.MITM, oracle.Baseline.BACKTRACKING):
            if base is oracle.Baseline.BACKTRACKING and n > BACKTRACK_LIMIT:
                rows.append(BenchRow(n, base.value, None, None, f"skipped: backtracking is limited to {BACKTRACK_LIMIT} elements"))
                continue
            t0 = time.perf_counter()
            try:
                c = oracle.baseline_count(elements, target, base)
            except SizeError as exc:
                rows.append(BenchRow(n, base.value, None, None, f"skipped: {exc}"))
                continue
            rows.append(BenchRow(n, base.value, time.perf_counter() - t0, c))
    return rows


def format_table(rows: list[BenchRow]) -> str:
    head = f"{'n':>3}  {'method':<13}{'seconds':>10}  {'count':>12}  {'nodes':>10}  status"
    lines = [head, "-" * len(head)]
    for r in rows:
        secs = "-" if r.seconds is None else f"{r.seconds:.4f}"
        count = "-" if r.count is None else str(r.count)
        nodes = "-" if r.nodes is None else str(r.nodes)
        lines.append(f"{r.n:>3}  {r.method:<13}{secs:>10}  {count:>12}  {nodes:>10}  {r.status}")
    return "\n".join(lines)
