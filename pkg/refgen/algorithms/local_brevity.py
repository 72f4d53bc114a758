import logging
from itertools import combinations
from typing import List, Optional

from refgen.algorithms.common import candidate_pool, covers, failure, success
from refgen.algorithms.greedy import greedy_heuristic
from refgen.errors import PreconditionError
from refgen.hearer import basic_level_value, user_knows
from refgen.kb import path_to_root
from refgen.models import (
    AttributeValuePair,
    Description,
    GenerationResult,
    GenerationTask,
    Knowledge,
    RunCounters,
)

logger = logging.getLogger(__name__)

ALGORITHM = "local-brevity"

Pairs = List[AttributeValuePair]


def _drop_one(task: GenerationTask, pairs: Pairs, counters: RunCounters) -> Optional[Pairs]:
    for index in range(len(pairs)):
        trial = pairs[:index] + pairs[index + 1:]
        if covers(task, trial, counters):
            logger.debug(f"Local brevity removed {pairs[index]}")
            return trial
    return None


def _merge(
    task: GenerationTask, pairs: Pairs, pool: Pairs, counters: RunCounters
) -> Optional[Pairs]:
    for size in range(2, len(pairs) + 1):
        for indices in combinations(range(len(pairs)), size):
            rest = [pair for index, pair in enumerate(pairs) if index not in indices]
            taken = {pair.attribute for pair in rest}
            for candidate in pool:
                if candidate in pairs or candidate.attribute in taken:
                    continue
                counters.candidates_enumerated += 1
                trial = rest + [candidate]
                if covers(task, trial, counters):
                    logger.debug(f"Local brevity replaced {size} pairs by {candidate}")
                    return trial
    return None


def _generalizations(task: GenerationTask, pair: AttributeValuePair) -> List[str]:
    """Strict ancestors of the pair's value up to the referent's basic level,
    basic level first."""
    taxonomy = task.scene.taxonomies[pair.attribute]
    path = path_to_root(taxonomy, pair.value)
    basic = basic_level_value(task.scene, task.referent, pair.attribute)
    if basic not in path[1:]:
        return []
    return list(reversed(path[1:path.index(basic) + 1]))


def _generalize(task: GenerationTask, pairs: Pairs, counters: RunCounters) -> Optional[Pairs]:
    for index, pair in enumerate(pairs):
        for value in _generalizations(task, pair):
            general = AttributeValuePair(attribute=pair.attribute, value=value)
            if user_knows(task.scene, task.referent, general, counters) != Knowledge.TRUE:
                continue
            trial = pairs[:index] + [general] + pairs[index + 1:]
            if covers(task, trial, counters):
                logger.debug(f"Local brevity generalized {pair} to {general}")
                return trial
    return None


def local_brevity(task: GenerationTask, initial: Optional[Description] = None) -> GenerationResult:
    """Improve a distinguishing description until no preference rule applies.

    Each pass applies the first rule that fires: drop a redundant pair,
    replace two or more pairs by one pool pair, or move a value toward the
    basic level. Without `initial`, the greedy heuristic supplies it.
    """
    counters = RunCounters()
    if initial is None:
        seed = greedy_heuristic(task)
        counters.absorb(seed.counters)
        if seed.description is None:
            return failure(ALGORITHM, counters)
        initial = seed.description
    elif not covers(task, initial.pairs, counters):
        raise PreconditionError("initial description does not distinguish the referent")

    pool = candidate_pool(task, counters)
    pairs = list(initial.pairs)
    rules = (
        lambda current: _drop_one(task, current, counters),
        lambda current: _merge(task, current, pool, counters),
        lambda current: _generalize(task, current, counters),
    )
    while True:
        for rule in rules:
            improved = rule(pairs)
            if improved is not None:
                pairs = improved
                break
        else:
            return success(ALGORITHM, pairs, counters)
