"""Parser for the indentation-based scene format.

    taxonomy type
      animal
        dog*
          chihuahua
    entity Object1
      type chihuahua
    preferred type colour size
    hearer depth-limited
      type: dog cat

Two spaces per level; `*` marks a basic-level value; `value < parent`
links a value to a parent explicitly. Hearer blocks also accept
`fact <entity> <attribute> <value> true|false|unknown` and
`basic <attribute> <value> [<entity>]`.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from lark import Lark, Token, Transformer
from lark.exceptions import LarkError, UnexpectedCharacters, UnexpectedInput
from lark.indenter import Indenter
from pydantic import BaseModel

from refgen.errors import Diagnostic, SceneParseError
from refgen.kb import check_scene, errors_only
from refgen.models import (
    BasicOverride,
    Entity,
    HearerModel,
    Knowledge,
    KnownFact,
    Scene,
    Taxonomy,
)

logger = logging.getLogger(__name__)

INDENT_WIDTH = 2
HEARER_MODES = ("perceptual", "depth-limited", "explicit")

SCENE_GRAMMAR = r"""
    start: _NL? _block*
    _block: taxonomy | entity | preferred | hearer

    taxonomy: "taxonomy" NAME _NL (_INDENT node+ _DEDENT)?
    node: NAME BASIC_MARK? parent_link? _NL (_INDENT node+ _DEDENT)?
    parent_link: "<" NAME

    entity: "entity" NAME _NL (_INDENT prop+ _DEDENT)?
    prop: NAME NAME _NL

    preferred: "preferred" NAME+ _NL

    hearer: "hearer" NAME _NL (_INDENT _hearer_item+ _DEDENT)?
    _hearer_item: limit | fact | basic
    limit: NAME ":" NAME* _NL
    fact: "fact" NAME NAME NAME KNOWLEDGE _NL
    basic: "basic" NAME NAME NAME? _NL

    BASIC_MARK: "*"
    KNOWLEDGE: "true" | "false" | "unknown"
    NAME: /[A-Za-z0-9_][A-Za-z0-9_\-]*/

    %import common.WS_INLINE
    %ignore WS_INLINE
    %declare _INDENT _DEDENT
    _NL: /(\r?\n[ \t]*)+/
"""

_TERMINAL_LABELS = {
    "_NL": "newline",
    "_INDENT": "indented block",
    "_DEDENT": "end of block",
    "NAME": "name",
    "BASIC_MARK": "'*'",
    "KNOWLEDGE": "true/false/unknown",
    "COLON": "':'",
    "LESSTHAN": "'<'",
    "$END": "end of file",
}


class SceneIndenter(Indenter):
    NL_type = "_NL"
    OPEN_PAREN_types: List[str] = []
    CLOSE_PAREN_types: List[str] = []
    INDENT_type = "_INDENT"
    DEDENT_type = "_DEDENT"
    tab_len = 8


_PARSER = Lark(SCENE_GRAMMAR, parser="lalr", postlex=SceneIndenter(), propagate_positions=True)


class SceneDocument(BaseModel):
    source: str
    scene: Optional[Scene] = None
    diagnostics: List[Diagnostic] = []

    @property
    def errors(self) -> List[Diagnostic]:
        return errors_only(self.diagnostics)

    @property
    def ok(self) -> bool:
        return self.scene is not None and not self.errors


@dataclass
class _NodeSpec:
    name: Token
    basic: bool
    parent: Optional[Token]
    children: List["_NodeSpec"]


@dataclass
class _Block:
    kind: str
    name: Token
    items: list = field(default_factory=list)


class _SceneTransformer(Transformer):
    def start(self, blocks):
        return blocks

    def parent_link(self, children):
        return children[0]

    def node(self, children):
        name, rest = children[0], children[1:]
        basic = False
        parent = None
        nested = []
        for child in rest:
            if isinstance(child, _NodeSpec):
                nested.append(child)
            elif child.type == "BASIC_MARK":
                basic = True
            else:
                parent = child
        return _NodeSpec(name=name, basic=basic, parent=parent, children=nested)

    def taxonomy(self, children):
        return _Block("taxonomy", children[0], children[1:])

    def prop(self, children):
        return (children[0], children[1])

    def entity(self, children):
        return _Block("entity", children[0], children[1:])

    def preferred(self, children):
        return _Block("preferred", children[0], list(children))

    def limit(self, children):
        return ("limit", children[0], children[1:])

    def fact(self, children):
        return ("fact", children[0], children[1:])

    def basic(self, children):
        return ("basic", children[0], children[1:])

    def hearer(self, children):
        return _Block("hearer", children[0], children[1:])


def _prescan(text: str) -> Tuple[str, List[Diagnostic]]:
    """Blank out comment lines and check indentation before the grammar runs."""
    diagnostics = []
    cleaned = []
    previous_indent = None
    for number, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            cleaned.append("")
            continue
        cleaned.append(line)
        leading = line[: len(line) - len(line.lstrip(" \t"))]
        if "\t" in leading:
            diagnostics.append(
                Diagnostic(
                    code="syntax-error",
                    subject="tabs",
                    message=f"tabs are not allowed in indentation; use {INDENT_WIDTH} spaces per level",
                    line=number,
                    column=leading.index("\t") + 1,
                )
            )
            continue
        indent = len(leading)
        if indent % INDENT_WIDTH:
            diagnostics.append(
                Diagnostic(
                    code="syntax-error",
                    subject="indentation",
                    message=f"indentation must be a multiple of {INDENT_WIDTH} spaces",
                    line=number,
                    column=indent + 1,
                )
            )
        elif indent > (previous_indent if previous_indent is not None else -INDENT_WIDTH) + INDENT_WIDTH:
            diagnostics.append(
                Diagnostic(
                    code="syntax-error",
                    subject="indentation",
                    message="unexpected indentation",
                    line=number,
                    column=indent + 1,
                )
            )
        previous_indent = indent
    return "\n".join(cleaned) + "\n", diagnostics


def _syntax_diagnostic(err: UnexpectedInput, line_count: int) -> Diagnostic:
    if isinstance(err, UnexpectedCharacters):
        expected = err.allowed or set()
        found = repr(err.char)
    else:
        expected = getattr(err, "expected", None) or set()
        token = getattr(err, "token", None)
        found = "end of file" if token is None or token.type == "$END" else repr(str(token))
    labels = sorted({_TERMINAL_LABELS.get(name, name.lower()) for name in expected})
    line = err.line if getattr(err, "line", -1) and err.line > 0 else line_count
    column = err.column if getattr(err, "column", -1) and err.column > 0 else 1
    message = f"unexpected {found}"
    if labels:
        message += f"; expected {', '.join(labels)}"
    return Diagnostic(code="syntax-error", message=message, line=line, column=column)


class _SceneBuilder:
    def __init__(self) -> None:
        self.diagnostics: List[Diagnostic] = []
        self.positions: Dict[str, int] = {}
        self.taxonomies: Dict[str, Taxonomy] = {}
        self.entities: Dict[str, Entity] = {}
        self.preferred: Tuple[str, ...] = ()
        self.hearer = HearerModel()
        self._seen_blocks: Dict[str, int] = {}

    def _report(self, code: str, subject: str, message: str, token: Token) -> None:
        self.diagnostics.append(
            Diagnostic(code=code, subject=subject, message=message, line=token.line, column=token.column)
        )

    def _once(self, kind: str, token: Token) -> bool:
        if kind in self._seen_blocks:
            self._report(
                f"duplicate-{kind}", "", f"first declared on line {self._seen_blocks[kind]}", token
            )
            return False
        self._seen_blocks[kind] = token.line
        return True

    def add_taxonomy(self, block: _Block) -> None:
        attribute = str(block.name)
        if attribute in self.taxonomies:
            self._report("duplicate-taxonomy", attribute, "taxonomy declared twice", block.name)
            return
        self.positions.setdefault(attribute, block.name.line)
        nodes: Dict[str, int] = {}
        parent: Dict[str, str] = {}
        basic = set()

        def visit(spec: _NodeSpec, enclosing: Optional[str]) -> None:
            name = str(spec.name)
            if name in nodes:
                self._report(
                    "duplicate-value",
                    f"{attribute}:{name}",
                    f"already declared on line {nodes[name]}; taxonomies are forests",
                    spec.name,
                )
            else:
                nodes[name] = spec.name.line
                self.positions.setdefault(f"{attribute}:{name}", spec.name.line)
            if spec.parent is not None and enclosing is not None:
                self._report(
                    "multiple-parents",
                    f"{attribute}:{name}",
                    f"nested under {enclosing} and linked to {spec.parent}",
                    spec.parent,
                )
            up = str(spec.parent) if spec.parent is not None else enclosing
            if up is not None:
                parent[name] = up
            if spec.basic:
                basic.add(name)
            for child in spec.children:
                visit(child, name)

        for spec in block.items:
            visit(spec, None)
        self.taxonomies[attribute] = Taxonomy(
            attribute=attribute,
            nodes=frozenset(nodes),
            parent=parent,
            basic_level=frozenset(basic),
        )

    def add_entity(self, block: _Block) -> None:
        entity_id = str(block.name)
        if entity_id in self.entities:
            self._report("duplicate-entity", entity_id, "entity declared twice", block.name)
            return
        self.positions.setdefault(entity_id, block.name.line)
        properties: Dict[str, str] = {}
        for attribute, value in block.items:
            if str(attribute) in properties:
                self._report(
                    "duplicate-property", f"{entity_id}.{attribute}", "attribute given twice", attribute
                )
                continue
            properties[str(attribute)] = str(value)
        self.entities[entity_id] = Entity(id=entity_id, properties=properties)

    def add_preferred(self, block: _Block) -> None:
        if self._once("preferred", block.name):
            self.positions["preferred"] = block.name.line
            self.preferred = tuple(str(name) for name in block.items)

    def add_hearer(self, block: _Block) -> None:
        if not self._once("hearer", block.name):
            return
        self.positions["hearer"] = block.name.line
        mode = str(block.name)
        if mode not in HEARER_MODES:
            self._report(
                "unknown-hearer-mode", mode, f"expected one of {', '.join(HEARER_MODES)}", block.name
            )
            return
        limits: Dict[str, frozenset] = {}
        facts: List[KnownFact] = []
        overrides: List[BasicOverride] = []
        for kind, head, rest in block.items:
            if kind == "limit":
                if str(head) in limits:
                    self._report("duplicate-limit", str(head), "depth limit given twice", head)
                    continue
                limits[str(head)] = frozenset(str(value) for value in rest)
            elif kind == "fact":
                attribute, value, knowledge = rest
                facts.append(
                    KnownFact(
                        entity=str(head),
                        attribute=str(attribute),
                        value=str(value),
                        knowledge=Knowledge(str(knowledge)),
                    )
                )
            else:
                value = rest[0]
                entity = str(rest[1]) if len(rest) > 1 else None
                overrides.append(BasicOverride(attribute=str(head), value=str(value), entity=entity))
        self.hearer = HearerModel(
            mode=mode,
            depth_limits=limits,
            known_facts=tuple(facts),
            basic_overrides=tuple(overrides),
        )

    def add_implicit_taxonomies(self) -> None:
        used: Dict[str, List[str]] = {}
        for entity in self.entities.values():
            for attribute, value in entity.properties.items():
                if attribute not in self.taxonomies:
                    used.setdefault(attribute, []).append(value)
        for attribute, values in used.items():
            self.taxonomies[attribute] = Taxonomy(attribute=attribute, nodes=frozenset(values))

    def build(self) -> Scene:
        self.add_implicit_taxonomies()
        return Scene(
            entities=self.entities,
            taxonomies=self.taxonomies,
            preferred_attributes=self.preferred,
            hearer=self.hearer,
        )

    def anchor(self, diagnostic: Diagnostic) -> Diagnostic:
        subject = diagnostic.subject
        if subject.startswith(("hearer", "fact.", "basic")) or diagnostic.code in (
            "contradicting-fact",
            "invalid-basic-override",
            "unknown-entity",
        ):
            line = self.positions.get("hearer", 0)
        elif diagnostic.code in ("empty-preferred", "missing-preferred-type", "duplicate-preferred-attribute"):
            line = self.positions.get("preferred", 0)
        else:
            line = 0
            for key in (subject, subject.split("=")[0], subject.split(".")[0], subject.split(":")[0]):
                if key in self.positions:
                    line = self.positions[key]
                    break
            if not line and diagnostic.code == "unknown-attribute":
                line = self.positions.get("preferred", 0)
        return diagnostic.model_copy(update={"line": line})


def load_scene_document(text: str) -> SceneDocument:
    """Parse scene text into a document; never raises."""
    cleaned, diagnostics = _prescan(text)
    if diagnostics:
        return SceneDocument(source=text, diagnostics=diagnostics)

    try:
        blocks = _SceneTransformer().transform(_PARSER.parse(cleaned))
    except UnexpectedInput as err:
        return SceneDocument(source=text, diagnostics=[_syntax_diagnostic(err, text.count("\n") + 1)])
    except LarkError as err:
        return SceneDocument(
            source=text, diagnostics=[Diagnostic(code="syntax-error", message=str(err))]
        )

    builder = _SceneBuilder()
    handlers = {
        "taxonomy": builder.add_taxonomy,
        "entity": builder.add_entity,
        "preferred": builder.add_preferred,
        "hearer": builder.add_hearer,
    }
    for block in blocks:
        handlers[block.kind](block)
    scene = builder.build()

    diagnostics = builder.diagnostics + [builder.anchor(d) for d in check_scene(scene)]
    logger.debug(
        f"Parsed scene: {len(scene.entities)} entities, {len(scene.taxonomies)} taxonomies, "
        f"{len(diagnostics)} diagnostic(s)"
    )
    return SceneDocument(source=text, scene=scene, diagnostics=diagnostics)


def parse_scene(text: str) -> Scene:
    document = load_scene_document(text)
    if document.errors or document.scene is None:
        raise SceneParseError(document.errors or document.diagnostics)
    return document.scene
