"""Exact subset-sum counting by navigating starting/ending points of the possibility space."""

from .core import Instance, PreprocessedInstance, TrivialKind, TrivialVerdict, detect_trivial, preprocess
from .errors import LimitReached, NoSolution, ParseError, RangeError, SizeError
from .mapping import SolutionRecord, bitmask_to_elements, index_to_bitmask, make_record
from .navigator import Action, EventKind, Mode, Outcome, SearchConfig, TraceEvent, classify, solve, solve_multi
from .sepoint import SEPoint, expand, first_level

__all__ = [
    "Action", "EventKind", "Instance", "LimitReached", "Mode", "NoSolution", "Outcome",
    "ParseError", "PreprocessedInstance", "RangeError", "SEPoint", "SearchConfig", "SizeError",
    "SolutionRecord", "TraceEvent", "TrivialKind", "TrivialVerdict", "bitmask_to_elements",
    "classify", "detect_trivial", "expand", "first_level", "index_to_bitmask", "make_record",
    "preprocess", "solve", "solve_multi", "count",
]


def count(elements, target: int, allow_empty: bool = True) -> int:
    """Final number of subsets of ``elements`` summing to ``target``."""
    prep = preprocess(elements=elements)
    return solve(prep, SearchConfig(Mode.COUNT, (target,), witness_cap=0), allow_empty=allow_empty).final_count
