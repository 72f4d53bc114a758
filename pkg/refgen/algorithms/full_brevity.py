import logging
from itertools import combinations
from typing import Optional

from refgen.algorithms.common import candidate_pool, failure, rules_out, success
from refgen.models import GenerationResult, GenerationTask, RunCounters

logger = logging.getLogger(__name__)

ALGORITHM = "full-brevity"


def full_brevity(task: GenerationTask, max_length: Optional[int] = None) -> GenerationResult:
    """Shortest distinguishing description over the candidate pool.

    Subsets are checked by increasing size; within a size, in lexicographic
    order of preferred-attribute positions, so the first hit is deterministic.
    `max_length` caps the subset size; exceeding it is a failure.
    """
    counters = RunCounters()
    if not task.contrast:
        return success(ALGORITHM, [], counters)

    pool = candidate_pool(task, counters)
    ruled = [rules_out(task, task.contrast, pair, counters) for pair in pool]
    limit = len(pool) if max_length is None else min(max_length, len(pool))
    logger.debug(f"Full brevity for {task.referent}: pool of {len(pool)}, limit {limit}")

    for size in range(1, limit + 1):
        for indices in combinations(range(len(pool)), size):
            counters.candidates_enumerated += 1
            counters.distinguishing_checks += 1
            covered = frozenset().union(*(ruled[i] for i in indices))
            if covered >= task.contrast:
                return success(ALGORITHM, [pool[i] for i in indices], counters)

    logger.debug(f"Full brevity failed for {task.referent} after {counters.candidates_enumerated} subsets")
    return failure(ALGORITHM, counters)
