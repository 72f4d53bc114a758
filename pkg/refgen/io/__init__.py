from refgen.io.scene_parser import SceneDocument, load_scene_document, parse_scene
from refgen.io.scene_writer import serialize_scene
from refgen.io.serializers import (
    SplRelation,
    SplTerm,
    parse_spl,
    realize_surface,
    serialize_pairs,
    serialize_spl,
    spl_term,
)

__all__ = [
    "SceneDocument",
    "SplRelation",
    "SplTerm",
    "load_scene_document",
    "parse_scene",
    "parse_spl",
    "realize_surface",
    "serialize_pairs",
    "serialize_scene",
    "serialize_spl",
    "spl_term",
]
