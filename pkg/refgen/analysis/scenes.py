"""Seeded scene generators for property tests and the benchmark sweep."""

import logging
import random
from typing import Dict, List, Tuple

from refgen.models import (
    TYPE_ATTRIBUTE,
    ComplexityParams,
    Entity,
    HearerModel,
    RandomSceneParams,
    Scene,
    Taxonomy,
)

logger = logging.getLogger(__name__)


def attribute_names(count: int) -> List[str]:
    """type, a1, a2, ... in generation (and preferred) order."""
    return [TYPE_ATTRIBUTE] + [f"a{index}" for index in range(1, count)]


def _forest(attribute: str, depth: int, branching: int) -> Tuple[Taxonomy, List[List[str]]]:
    levels: List[List[str]] = [[f"{attribute}-{index}" for index in range(branching)]]
    parent: Dict[str, str] = {}
    for _ in range(1, depth):
        below = []
        for value in levels[-1]:
            for index in range(branching):
                child = f"{value}-{index}"
                parent[child] = value
                below.append(child)
        levels.append(below)

    basic_level = frozenset()
    if attribute == TYPE_ATTRIBUTE:
        basic_level = frozenset(levels[_basic_depth(depth)])
    nodes = frozenset(value for level in levels for value in level)
    return Taxonomy(attribute=attribute, nodes=nodes, parent=parent, basic_level=basic_level), levels


def _basic_depth(depth: int) -> int:
    return 0 if depth == 1 else 1


def generate_random_scene(params: RandomSceneParams, seed: int) -> Scene:
    """Reproducible scene with `params.n_entities` entities o1, o2, ...

    Every attribute gets a forest of `branching` roots, each node with
    `branching` children, `taxonomy_depth` levels deep. The type forest
    marks one basic level. Each entity draws each attribute value uniformly
    from all nodes of that attribute's forest.
    """
    rng = random.Random(seed)
    attributes = attribute_names(params.n_attributes)
    taxonomies: Dict[str, Taxonomy] = {}
    levels: Dict[str, List[List[str]]] = {}
    for attribute in attributes:
        taxonomies[attribute], levels[attribute] = _forest(
            attribute, params.taxonomy_depth, params.branching
        )

    entities: Dict[str, Entity] = {}
    for index in range(1, params.n_entities + 1):
        entity_id = f"o{index}"
        properties = {
            attribute: rng.choice(sorted(taxonomies[attribute].nodes)) for attribute in attributes
        }
        entities[entity_id] = Entity(id=entity_id, properties=properties)

    hearer = HearerModel()
    if params.hearer_mode == "depth-limited":
        cutoff = _basic_depth(params.taxonomy_depth)
        if params.hearer_depth is not None:
            cutoff = min(params.hearer_depth, params.taxonomy_depth) - 1
        hearer = HearerModel(
            mode="depth-limited",
            depth_limits={
                attribute: frozenset(value for level in levels[attribute][: cutoff + 1] for value in level)
                for attribute in attributes
            },
        )

    logger.debug(f"Random scene seed={seed}: {params.n_entities} entities, {len(attributes)} attributes")
    return Scene(
        entities=entities,
        taxonomies=taxonomies,
        preferred_attributes=tuple(attributes),
        hearer=hearer,
    )


def build_structured_scene(
    params: ComplexityParams, seed: int, referent_index: int = 0
) -> Tuple[Scene, str]:
    """Scene with n_a flat attributes and n_d distractors in which the
    shortest distinguishing description has exactly min(n_l, n_d) pairs.

    The discriminating attributes come last in the preferred order. Each
    distractor differs from the referent on exactly one of them; the seed
    decides which. Every other attribute is shared by all entities.
    """
    rng = random.Random(seed)
    attributes = attribute_names(params.n_a)
    n_l = min(params.n_l, params.n_d, params.n_a)
    discriminators = attributes[len(attributes) - n_l:] if n_l else []

    entity_ids = [f"o{index}" for index in range(1, params.n_d + 2)]
    referent = entity_ids[referent_index % len(entity_ids)]
    distractors = [entity_id for entity_id in entity_ids if entity_id != referent]
    rng.shuffle(distractors)
    differs = {entity_id: discriminators[index % n_l] for index, entity_id in enumerate(distractors)} if n_l else {}

    entities = {}
    for entity_id in entity_ids:
        properties = {attribute: f"{attribute}-v0" for attribute in attributes}
        if entity_id in differs:
            properties[differs[entity_id]] = f"{differs[entity_id]}-v1"
        entities[entity_id] = Entity(id=entity_id, properties=properties)

    taxonomies = {
        attribute: Taxonomy(attribute=attribute, nodes=frozenset({f"{attribute}-v0", f"{attribute}-v1"}))
        for attribute in attributes
    }
    scene = Scene(entities=entities, taxonomies=taxonomies, preferred_attributes=tuple(attributes))
    return scene, referent
