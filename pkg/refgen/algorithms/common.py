"""Shared pieces of the generation algorithms: RulesOut, the distinguishing
check, the per-attribute candidate pool and head-noun completion."""

import logging
from typing import FrozenSet, Iterable, List, Literal, Optional

from refgen.hearer import basic_level_value, user_knows
from refgen.kb import applies, path_to_root
from refgen.models import (
    TYPE_ATTRIBUTE,
    AttributeValuePair,
    Description,
    GenerationResult,
    GenerationTask,
    Knowledge,
    RunCounters,
)

logger = logging.getLogger(__name__)

CheckMode = Literal["system", "hearer"]


def rules_out(
    task: GenerationTask,
    remaining: Iterable[str],
    pair: AttributeValuePair,
    counters: Optional[RunCounters] = None,
) -> FrozenSet[str]:
    """Members of `remaining` the hearer knows do not have the pair.

    Members whose status is unknown to the hearer are kept.
    """
    if pair.is_no_value:
        return frozenset()
    if counters is not None:
        counters.pairs_considered += 1
    return frozenset(
        entity_id
        for entity_id in remaining
        if user_knows(task.scene, entity_id, pair, counters) == Knowledge.FALSE
    )


def covers(
    task: GenerationTask,
    pairs: Iterable[AttributeValuePair],
    counters: Optional[RunCounters] = None,
) -> bool:
    """Hearer-mode distinguishing check over a bare sequence of pairs."""
    if counters is not None:
        counters.distinguishing_checks += 1
    pairs = list(pairs)
    for pair in pairs:
        if pair.is_no_value:
            return False
        if user_knows(task.scene, task.referent, pair, counters) != Knowledge.TRUE:
            return False
    remaining = set(task.contrast)
    for pair in pairs:
        if not remaining:
            break
        remaining -= rules_out(task, remaining, pair, counters)
    return not remaining


def is_distinguishing(
    task: GenerationTask,
    desc: Description,
    mode: CheckMode = "hearer",
    counters: Optional[RunCounters] = None,
) -> bool:
    if mode == "hearer":
        return covers(task, desc.pairs, counters)

    if counters is not None:
        counters.distinguishing_checks += 1
    scene = task.scene
    if not all(applies(scene, task.referent, pair) for pair in desc.pairs):
        return False
    return all(
        any(not applies(scene, distractor, pair) for pair in desc.pairs)
        for distractor in task.contrast
    )


def best_known_value(
    task: GenerationTask,
    attribute: str,
    counters: Optional[RunCounters] = None,
) -> Optional[AttributeValuePair]:
    """Most discriminating value the hearer knows for the referent; ties go
    to the least specific value. None when no value on the path is known."""
    scene = task.scene
    recorded = scene.entities[task.referent].properties.get(attribute)
    taxonomy = scene.taxonomies.get(attribute)
    if recorded is None or taxonomy is None:
        return None

    best: Optional[AttributeValuePair] = None
    best_count = -1
    for value in reversed(path_to_root(taxonomy, recorded)):
        pair = AttributeValuePair(attribute=attribute, value=value)
        if user_knows(scene, task.referent, pair, counters) != Knowledge.TRUE:
            continue
        count = len(rules_out(task, task.contrast, pair, counters))
        if count > best_count:
            best, best_count = pair, count
    return best


def candidate_pool(
    task: GenerationTask, counters: Optional[RunCounters] = None
) -> List[AttributeValuePair]:
    """One pair per preferred attribute, in preferred order."""
    pool = []
    for attribute in task.scene.preferred_attributes:
        pair = best_known_value(task, attribute, counters)
        if pair is not None:
            pool.append(pair)
    logger.debug(f"Candidate pool for {task.referent}: {[str(p) for p in pool]}")
    return pool


def head_noun_value(task: GenerationTask, counters: Optional[RunCounters] = None) -> str:
    """The referent's basic-level type, or its nearest ancestor the hearer
    knows when the basic level itself is unknown to them."""
    scene = task.scene
    basic = basic_level_value(scene, task.referent, TYPE_ATTRIBUTE)
    taxonomy = scene.taxonomies[TYPE_ATTRIBUTE]
    for value in path_to_root(taxonomy, basic):
        pair = AttributeValuePair(attribute=TYPE_ATTRIBUTE, value=value)
        if user_knows(scene, task.referent, pair, counters) == Knowledge.TRUE:
            return value
    return basic


def ensure_head_noun(task: GenerationTask, desc: Description) -> Description:
    if desc.value_of(TYPE_ATTRIBUTE) is not None:
        return desc
    head = AttributeValuePair(attribute=TYPE_ATTRIBUTE, value=head_noun_value(task))
    return Description(pairs=(*desc.pairs, head))


def success(algorithm: str, pairs: Iterable[AttributeValuePair], counters: RunCounters) -> GenerationResult:
    return GenerationResult(
        algorithm=algorithm, description=Description(pairs=tuple(pairs)), counters=counters
    )


def failure(algorithm: str, counters: RunCounters) -> GenerationResult:
    return GenerationResult(algorithm=algorithm, description=None, counters=counters)
