import logging
from typing import AbstractSet, Optional

from refgen.algorithms.common import failure, head_noun_value, rules_out
from refgen.hearer import basic_level_value, more_specific_value, user_knows
from refgen.models import (
    NO_VALUE,
    TYPE_ATTRIBUTE,
    AttributeValuePair,
    Description,
    GenerationResult,
    GenerationTask,
    Knowledge,
    RunCounters,
)

logger = logging.getLogger(__name__)

ALGORITHM = "incremental"


def _knows(task: GenerationTask, attribute: str, value: str, counters: Optional[RunCounters]) -> bool:
    if value == NO_VALUE:
        return False
    pair = AttributeValuePair(attribute=attribute, value=value)
    return user_knows(task.scene, task.referent, pair, counters) == Knowledge.TRUE


def _specialize(
    task: GenerationTask,
    remaining: AbstractSet[str],
    attribute: str,
    position: str,
    value: str,
    counters: Optional[RunCounters],
) -> str:
    more_specific = more_specific_value(task.scene, task.referent, attribute, position)
    if more_specific is None:
        return value
    new_value = _specialize(
        task,
        remaining,
        attribute,
        more_specific,
        more_specific if _knows(task, attribute, more_specific, counters) else NO_VALUE,
        counters,
    )
    new_ruled = rules_out(task, remaining, AttributeValuePair(attribute=attribute, value=new_value), counters)
    old_ruled = rules_out(task, remaining, AttributeValuePair(attribute=attribute, value=value), counters)
    return new_value if len(new_ruled) > len(old_ruled) else value


def find_best_value(
    task: GenerationTask,
    remaining: AbstractSet[str],
    attribute: str,
    initial_value: str,
    counters: Optional[RunCounters] = None,
) -> str:
    """Best value for `attribute`, starting at `initial_value` and moving down
    the referent's path only while a more specific value rules out strictly
    more of `remaining`. Returns NO_VALUE when the hearer knows none of them.

    When the hearer does not know `initial_value` the walk restarts from the
    root of the referent's path, so a known ancestor can still be chosen.
    """
    if _knows(task, attribute, initial_value, counters):
        return _specialize(task, remaining, attribute, initial_value, initial_value, counters)
    if initial_value != NO_VALUE:
        logger.debug(f"{attribute}={initial_value} unknown to the hearer, restarting from the root")
    return _specialize(task, remaining, attribute, NO_VALUE, NO_VALUE, counters)


def incremental(task: GenerationTask) -> GenerationResult:
    """Walk the preferred attributes once, keeping every pair that rules out
    a remaining distractor. Pairs are never retracted.

    Once the contrast set is empty a type pair is guaranteed, using the
    referent's basic-level type (or the nearest type the hearer knows) if
    none was selected.
    """
    counters = RunCounters()
    scene = task.scene
    referent = scene.entities[task.referent]
    remaining = set(task.contrast)
    chosen = []

    for attribute in scene.preferred_attributes:
        if remaining and attribute in referent.properties and attribute in scene.taxonomies:
            initial = basic_level_value(scene, task.referent, attribute)
            value = find_best_value(task, remaining, attribute, initial, counters)
            pair = AttributeValuePair(attribute=attribute, value=value)
            ruled = rules_out(task, remaining, pair, counters)
            if ruled:
                chosen.append(pair)
                remaining -= ruled
                logger.debug(f"Incremental added {pair}, {len(remaining)} distractor(s) left")

        if not remaining:
            head_noun_added = all(pair.attribute != TYPE_ATTRIBUTE for pair in chosen)
            if head_noun_added:
                chosen.append(
                    AttributeValuePair(attribute=TYPE_ATTRIBUTE, value=head_noun_value(task, counters))
                )
            return GenerationResult(
                algorithm=ALGORITHM,
                description=Description(pairs=tuple(chosen)),
                counters=counters,
                head_noun_added=head_noun_added,
            )

    logger.debug(f"Incremental failed for {task.referent}: {sorted(remaining)} left")
    return failure(ALGORITHM, counters)
