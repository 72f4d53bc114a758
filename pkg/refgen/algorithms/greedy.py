import logging

from refgen.algorithms.common import candidate_pool, failure, rules_out, success
from refgen.models import GenerationResult, GenerationTask, RunCounters

logger = logging.getLogger(__name__)

ALGORITHM = "greedy"


def greedy_heuristic(task: GenerationTask) -> GenerationResult:
    """Repeatedly add the pool pair that rules out the most remaining distractors.

    Ties go to the earlier preferred attribute. Fails once the pool is
    exhausted with distractors left.
    """
    counters = RunCounters()
    candidates = candidate_pool(task, counters)
    remaining = set(task.contrast)
    chosen = []

    while True:
        if not remaining:
            return success(ALGORITHM, chosen, counters)
        if not candidates:
            logger.debug(f"Greedy failed for {task.referent}: {sorted(remaining)} left")
            return failure(ALGORITHM, counters)

        best_index = 0
        best_ruled = None
        for index, pair in enumerate(candidates):
            ruled = rules_out(task, remaining, pair, counters)
            if best_ruled is None or len(ruled) > len(best_ruled):
                best_index, best_ruled = index, ruled

        pair = candidates.pop(best_index)
        chosen.append(pair)
        remaining -= best_ruled
        logger.debug(f"Greedy chose {pair}, {len(remaining)} distractor(s) left")
