from typing import Callable, Dict, Optional

from refgen.algorithms.common import (
    candidate_pool,
    covers,
    ensure_head_noun,
    is_distinguishing,
    rules_out,
)
from refgen.algorithms.full_brevity import full_brevity
from refgen.algorithms.greedy import greedy_heuristic
from refgen.algorithms.incremental import find_best_value, incremental
from refgen.algorithms.local_brevity import local_brevity
from refgen.models import GenerationResult, GenerationTask

ALGORITHM_NAMES = ("full-brevity", "greedy", "local-brevity", "incremental")


def run_algorithm(
    name: str, task: GenerationTask, full_brevity_max_length: Optional[int] = None
) -> GenerationResult:
    runners: Dict[str, Callable[[GenerationTask], GenerationResult]] = {
        "full-brevity": lambda t: full_brevity(t, max_length=full_brevity_max_length),
        "greedy": greedy_heuristic,
        "local-brevity": local_brevity,
        "incremental": incremental,
    }
    runner = runners.get(name)
    if runner is None:
        raise ValueError(f"Unknown algorithm {name!r}; expected one of {', '.join(ALGORITHM_NAMES)}")
    return runner(task)


__all__ = [
    "ALGORITHM_NAMES",
    "candidate_pool",
    "covers",
    "ensure_head_noun",
    "find_best_value",
    "full_brevity",
    "greedy_heuristic",
    "incremental",
    "is_distinguishing",
    "local_brevity",
    "rules_out",
    "run_algorithm",
]
