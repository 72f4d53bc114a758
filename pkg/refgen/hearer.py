"""Hearer model interface: UserKnows, BasicLevelValue and MoreSpecificValue."""

import logging
from typing import Optional

from refgen.errors import InvalidReferenceError, InvalidSpecializationError
from refgen.kb import applies, path_to_root
from refgen.models import (
    NO_VALUE,
    AttributeValuePair,
    Entity,
    Knowledge,
    RunCounters,
    Scene,
    Taxonomy,
)

logger = logging.getLogger(__name__)


def _lookup(scene: Scene, entity_id: str, attribute: str) -> tuple[Entity, Taxonomy]:
    entity = scene.entities.get(entity_id)
    if entity is None:
        raise InvalidReferenceError(f"unknown entity {entity_id!r}")
    taxonomy = scene.taxonomies.get(attribute)
    if taxonomy is None:
        raise InvalidReferenceError(f"unknown attribute {attribute!r}")
    return entity, taxonomy


def user_knows(
    scene: Scene,
    entity_id: str,
    pair: AttributeValuePair,
    counters: Optional[RunCounters] = None,
) -> Knowledge:
    """Tri-state answer to whether the hearer knows or can perceive the pair of the entity."""
    if counters is not None:
        counters.user_knows_calls += 1
    _lookup(scene, entity_id, pair.attribute)
    hearer = scene.hearer

    for fact in hearer.known_facts:
        if fact.entity == entity_id and fact.attribute == pair.attribute and fact.value == pair.value:
            return fact.knowledge

    if hearer.mode == "explicit":
        return Knowledge.UNKNOWN
    if hearer.mode == "depth-limited":
        distinguishable = hearer.depth_limits.get(pair.attribute)
        if distinguishable is not None and pair.value not in distinguishable:
            return Knowledge.UNKNOWN
    return Knowledge.TRUE if applies(scene, entity_id, pair) else Knowledge.FALSE


def basic_level_value(scene: Scene, entity_id: str, attribute: str) -> str:
    entity, taxonomy = _lookup(scene, entity_id, attribute)
    recorded = entity.properties.get(attribute)
    if recorded is None:
        raise InvalidReferenceError(f"{entity_id} has no value for {attribute}")

    path = path_to_root(taxonomy, recorded)
    general = None
    for override in scene.hearer.basic_overrides:
        if override.attribute != attribute:
            continue
        if override.entity == entity_id:
            return override.value
        # hearer-wide overrides only apply to entities whose path they lie on
        if override.entity is None and override.value in path and general is None:
            general = override.value
    if general is not None:
        return general

    for value in path:
        if value in taxonomy.basic_level:
            return value
    return recorded


def more_specific_value(scene: Scene, entity_id: str, attribute: str, value: str) -> Optional[str]:
    """Next value down the path from `value` toward the entity's recorded value.

    From no-value the walk starts at the root of the recorded value's path.
    Returns None once the recorded value has been reached.
    """
    entity, taxonomy = _lookup(scene, entity_id, attribute)
    recorded = entity.properties.get(attribute)
    if recorded is None:
        raise InvalidReferenceError(f"{entity_id} has no value for {attribute}")

    path = path_to_root(taxonomy, recorded)
    if value == NO_VALUE:
        return path[-1]
    if value not in path:
        raise InvalidSpecializationError(
            f"{value!r} does not subsume {entity_id}'s {attribute} value {recorded!r}"
        )
    index = path.index(value)
    if index == 0:
        return None
    return path[index - 1]
