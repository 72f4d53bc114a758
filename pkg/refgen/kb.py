"""Knowledge model operations: subsumption, accuracy and scene well-formedness."""

import logging
from typing import List, Optional

import networkx as nx

from refgen.errors import Diagnostic, InvalidValueError
from refgen.models import (
    NO_VALUE,
    TYPE_ATTRIBUTE,
    AttributeValuePair,
    Knowledge,
    Scene,
    Taxonomy,
)

logger = logging.getLogger(__name__)


def path_to_root(taxonomy: Taxonomy, value: str) -> List[str]:
    """Return [value, parent, grandparent, ..., root]."""
    if value not in taxonomy.nodes:
        raise InvalidValueError(f"{value!r} is not a value of {taxonomy.attribute}")
    path = [value]
    seen = {value}
    current = taxonomy.parent.get(value)
    while current is not None:
        if current in seen:
            raise InvalidValueError(f"taxonomy {taxonomy.attribute} loops at {current!r}")
        path.append(current)
        seen.add(current)
        current = taxonomy.parent.get(current)
    return path


def subsumes(taxonomy: Taxonomy, ancestor: str, descendant: str) -> bool:
    if ancestor not in taxonomy.nodes:
        raise InvalidValueError(f"{ancestor!r} is not a value of {taxonomy.attribute}")
    return ancestor in path_to_root(taxonomy, descendant)


def applies(scene: Scene, entity_id: str, pair: AttributeValuePair) -> bool:
    entity = scene.entities.get(entity_id)
    if entity is None:
        return False
    recorded = entity.properties.get(pair.attribute)
    taxonomy = scene.taxonomies.get(pair.attribute)
    if recorded is None or taxonomy is None or pair.value not in taxonomy.nodes:
        return False
    return subsumes(taxonomy, pair.value, recorded)


def _taxonomy_violations(attribute: str, taxonomy: Taxonomy) -> List[Diagnostic]:
    violations: List[Diagnostic] = []
    if taxonomy.attribute != attribute:
        violations.append(
            Diagnostic(
                code="taxonomy-mismatch",
                subject=attribute,
                message=f"taxonomy is declared for {taxonomy.attribute}",
            )
        )
    if NO_VALUE in taxonomy.nodes:
        violations.append(
            Diagnostic(code="reserved-value", subject=attribute, message=f"{NO_VALUE} is reserved")
        )

    graph = nx.DiGraph()
    graph.add_nodes_from(taxonomy.nodes)
    for child, parent in sorted(taxonomy.parent.items()):
        if child not in taxonomy.nodes or parent not in taxonomy.nodes:
            missing = child if child not in taxonomy.nodes else parent
            violations.append(
                Diagnostic(
                    code="unknown-parent",
                    subject=f"{attribute}:{missing}",
                    message="parent link names an undeclared value",
                )
            )
            continue
        graph.add_edge(child, parent)

    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        loop = " -> ".join(edge[0] for edge in cycle)
        violations.append(
            Diagnostic(code="cyclic-taxonomy", subject=attribute, message=f"parent links loop: {loop}")
        )
        return violations

    for value in sorted(taxonomy.basic_level):
        if value not in taxonomy.nodes:
            violations.append(
                Diagnostic(code="unknown-value", subject=f"{attribute}:{value}", message="basic level")
            )
            continue
        nested = [up for up in nx.descendants(graph, value) if up in taxonomy.basic_level]
        if nested:
            violations.append(
                Diagnostic(
                    code="nested-basic-level",
                    subject=f"{attribute}:{value}",
                    message=f"basic-level ancestor {sorted(nested)[0]}",
                )
            )
    return violations


def _value_violation(
    scene: Scene, attribute: str, value: str, subject: str
) -> Optional[Diagnostic]:
    taxonomy = scene.taxonomies.get(attribute)
    if taxonomy is None:
        return Diagnostic(code="missing-taxonomy", subject=attribute, message=f"used by {subject}")
    if value not in taxonomy.nodes:
        return Diagnostic(
            code="unknown-value",
            subject=f"{subject}.{attribute}={value}",
            message=f"not in the {attribute} taxonomy",
        )
    return None


def check_scene(scene: Scene) -> List[Diagnostic]:
    """Return every invariant violation in the scene; empty iff well-formed.

    Explicit hearer facts that contradict the entity record are reported
    with severity "warning".
    """
    violations: List[Diagnostic] = []
    acyclic = set()
    for attribute, taxonomy in scene.taxonomies.items():
        found = _taxonomy_violations(attribute, taxonomy)
        violations.extend(found)
        if not any(v.code in ("cyclic-taxonomy", "unknown-parent") for v in found):
            acyclic.add(attribute)

    if not scene.entities:
        violations.append(Diagnostic(code="no-entities", message="scene declares no entities"))

    missing_taxonomies = set()
    for entity_id, entity in scene.entities.items():
        if entity.id != entity_id:
            violations.append(
                Diagnostic(code="entity-mismatch", subject=entity_id, message=f"entity is {entity.id}")
            )
        if TYPE_ATTRIBUTE not in entity.properties:
            violations.append(
                Diagnostic(code="missing-type", subject=entity_id, message="every entity needs a type")
            )
        for attribute, value in entity.properties.items():
            problem = _value_violation(scene, attribute, value, entity_id)
            if problem is None:
                continue
            if problem.code == "missing-taxonomy":
                if attribute in missing_taxonomies:
                    continue
                missing_taxonomies.add(attribute)
            violations.append(problem)

    preferred = scene.preferred_attributes
    if not preferred:
        violations.append(Diagnostic(code="empty-preferred", message="no preferred attributes"))
    elif TYPE_ATTRIBUTE not in preferred:
        violations.append(
            Diagnostic(code="missing-preferred-type", message="preferred attributes must include type")
        )
    seen = set()
    for attribute in preferred:
        if attribute in seen:
            violations.append(Diagnostic(code="duplicate-preferred-attribute", subject=attribute))
        seen.add(attribute)
        if attribute not in scene.taxonomies and attribute not in missing_taxonomies:
            violations.append(
                Diagnostic(code="unknown-attribute", subject=attribute, message="preferred attribute")
            )

    violations.extend(_hearer_violations(scene, acyclic))

    if violations:
        logger.debug(f"Scene check found {len(violations)} violation(s)")
    return violations


def _hearer_violations(scene: Scene, acyclic: set) -> List[Diagnostic]:
    hearer = scene.hearer
    violations: List[Diagnostic] = []

    for attribute, values in sorted(hearer.depth_limits.items()):
        taxonomy = scene.taxonomies.get(attribute)
        if taxonomy is None:
            violations.append(
                Diagnostic(code="unknown-attribute", subject=attribute, message="hearer depth limit")
            )
            continue
        for value in sorted(values - taxonomy.nodes):
            violations.append(
                Diagnostic(
                    code="unknown-value",
                    subject=f"hearer.{attribute}={value}",
                    message=f"not in the {attribute} taxonomy",
                )
            )

    for fact in hearer.known_facts:
        if fact.entity not in scene.entities:
            violations.append(
                Diagnostic(code="unknown-entity", subject=fact.entity, message="hearer fact")
            )
            continue
        problem = _value_violation(scene, fact.attribute, fact.value, f"fact.{fact.entity}")
        if problem is not None:
            violations.append(problem)
            continue
        if fact.attribute not in acyclic or fact.knowledge == Knowledge.UNKNOWN:
            continue
        accurate = applies(
            scene, fact.entity, AttributeValuePair(attribute=fact.attribute, value=fact.value)
        )
        if accurate != (fact.knowledge == Knowledge.TRUE):
            violations.append(
                Diagnostic(
                    code="contradicting-fact",
                    subject=f"{fact.entity}.{fact.attribute}={fact.value}",
                    message=f"hearer fact says {fact.knowledge.value}",
                    severity="warning",
                )
            )

    for override in hearer.basic_overrides:
        if override.entity is not None and override.entity not in scene.entities:
            violations.append(
                Diagnostic(code="unknown-entity", subject=override.entity, message="basic override")
            )
            continue
        owner = f"basic.{override.entity}" if override.entity else "basic"
        problem = _value_violation(scene, override.attribute, override.value, owner)
        if problem is not None:
            violations.append(problem)
            continue
        if override.entity is None or override.attribute not in acyclic:
            continue
        pair = AttributeValuePair(attribute=override.attribute, value=override.value)
        if not applies(scene, override.entity, pair):
            violations.append(
                Diagnostic(
                    code="invalid-basic-override",
                    subject=f"{override.entity}.{override.attribute}={override.value}",
                    message="basic level must subsume the entity's value",
                )
            )
    return violations


def errors_only(violations: List[Diagnostic]) -> List[Diagnostic]:
    return [violation for violation in violations if violation.severity == "error"]
