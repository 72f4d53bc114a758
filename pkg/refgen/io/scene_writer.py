from typing import List, Set

from refgen.models import HearerModel, Scene, Taxonomy

INDENT = "  "


def _taxonomy_lines(taxonomy: Taxonomy) -> List[str]:
    lines = [f"taxonomy {taxonomy.attribute}"]
    written: Set[str] = set()

    def mark(value: str) -> str:
        return f"{value}*" if value in taxonomy.basic_level else value

    def emit(value: str, depth: int) -> None:
        written.add(value)
        lines.append(f"{INDENT * depth}{mark(value)}")
        for child in taxonomy.children(value):
            emit(child, depth + 1)

    for root in taxonomy.roots():
        emit(root, 1)
    # values on a parent loop are unreachable from any root
    for value in sorted(taxonomy.nodes - written):
        lines.append(f"{INDENT}{mark(value)} < {taxonomy.parent[value]}")
    return lines


def _hearer_lines(hearer: HearerModel) -> List[str]:
    lines = [f"hearer {hearer.mode}"]
    for attribute, values in sorted(hearer.depth_limits.items()):
        lines.append(f"{INDENT}{attribute}: {' '.join(sorted(values))}".rstrip())
    for fact in hearer.known_facts:
        lines.append(
            f"{INDENT}fact {fact.entity} {fact.attribute} {fact.value} {fact.knowledge.value}"
        )
    for override in hearer.basic_overrides:
        owner = f" {override.entity}" if override.entity else ""
        lines.append(f"{INDENT}basic {override.attribute} {override.value}{owner}")
    return lines


def serialize_scene(scene: Scene) -> str:
    """Render a scene in the indented scene format; parse_scene reads it back
    to an equal Scene. Implicit flat taxonomies are written out explicitly."""
    lines: List[str] = []
    for taxonomy in scene.taxonomies.values():
        lines.extend(_taxonomy_lines(taxonomy))
    for entity in scene.entities.values():
        lines.append(f"entity {entity.id}")
        lines.extend(f"{INDENT}{attribute} {value}" for attribute, value in entity.properties.items())
    if scene.preferred_attributes:
        lines.append(f"preferred {' '.join(scene.preferred_attributes)}")
    if scene.hearer != HearerModel():
        lines.extend(_hearer_lines(scene.hearer))
    return "\n".join(lines) + "\n"
