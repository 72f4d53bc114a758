"""Output renderings of a Description: pair list, SPL-style term and a
naive surface noun phrase."""

import itertools
from typing import Iterator, List, Optional, Tuple

from lark import Lark, Transformer
from lark.exceptions import LarkError
from pydantic import BaseModel, ConfigDict

from refgen.errors import PreconditionError
from refgen.models import TYPE_ATTRIBUTE, Description

DETERMINER = "definite"
CONTINUATION = 4


class SplTerm(BaseModel):
    model_config = ConfigDict(frozen=True)

    variable: str
    head: str
    determiner: Optional[str] = None
    relations: Tuple["SplRelation", ...] = ()


class SplRelation(BaseModel):
    model_config = ConfigDict(frozen=True)

    variable: str
    head: str
    domain: str
    range: SplTerm


SplTerm.model_rebuild()


SPL_GRAMMAR = r"""
    start: term
    term: "(" SYMBOL "/" SYMBOL (KEY value)* ")"
    ?value: term
          | SYMBOL -> atom
          | "(" term+ ")" -> term_list

    KEY: /:[a-z][a-z\-]*/
    SYMBOL: /[A-Za-z0-9][A-Za-z0-9_\-]*/

    %import common.WS
    %ignore WS
"""


class _SplTransformer(Transformer):
    def start(self, children):
        return children[0]

    def atom(self, children):
        return str(children[0])

    def term_list(self, children):
        return list(children)

    def term(self, children):
        variable, head = str(children[0]), str(children[1])
        keywords = dict(zip((str(key) for key in children[2::2]), children[3::2]))
        return {"variable": variable, "head": head, **keywords}


_SPL_PARSER = Lark(SPL_GRAMMAR, parser="lalr")


def _capitalize(symbol: str) -> str:
    return symbol[:1].upper() + symbol[1:]


def _variables() -> Iterator[str]:
    """X, Y, Z, X1, Y1, Z1, X2, ..."""
    for round_ in itertools.count():
        suffix = str(round_) if round_ else ""
        for letter in "XYZ":
            yield f"{letter}{suffix}"


def _require_type(desc: Description) -> str:
    type_value = desc.value_of(TYPE_ATTRIBUTE)
    if type_value is None:
        raise PreconditionError("description has no type pair; call ensure_head_noun first")
    return type_value


def serialize_pairs(desc: Description) -> str:
    return "\n".join(f"{pair.attribute}={pair.value}" for pair in desc.pairs)


def serialize_spl(desc: Description) -> str:
    """Render the description as an SPL term.

    Each non-type pair becomes one :relations entry whose head is the
    capitalized attribute and whose range is the capitalized value.
    Continuation lines are indented four columns past the opening paren
    of the enclosing term.
    """
    type_value = _require_type(desc)
    variables = _variables()
    head_variable = next(variables)
    lines = [
        f"({head_variable} / {_capitalize(type_value)}",
        f"{' ' * CONTINUATION}:determiner {DETERMINER}",
    ]
    modifiers = [pair for pair in desc.pairs if pair.attribute != TYPE_ATTRIBUTE]
    if not modifiers:
        lines[-1] += ")"
        return "\n".join(lines)

    opener = f"{' ' * CONTINUATION}:relations ("
    column = len(opener)
    inner = " " * (column + CONTINUATION)
    for index, pair in enumerate(modifiers):
        relation_variable, range_variable = next(variables), next(variables)
        prefix = opener if index == 0 else " " * column
        lines.append(f"{prefix}({relation_variable} / {_capitalize(pair.attribute)}")
        lines.append(f"{inner}:domain {head_variable}")
        lines.append(f"{inner}:range ({range_variable} / {_capitalize(pair.value)}))")
    lines[-1] += "))"
    return "\n".join(lines)


def _build_term(raw: dict) -> SplTerm:
    relations: List[SplRelation] = []
    for entry in raw.get(":relations", []):
        relations.append(
            SplRelation(
                variable=entry["variable"],
                head=entry["head"],
                domain=entry[":domain"],
                range=_build_term(entry[":range"]),
            )
        )
    return SplTerm(
        variable=raw["variable"],
        head=raw["head"],
        determiner=raw.get(":determiner"),
        relations=tuple(relations),
    )


def parse_spl(text: str) -> SplTerm:
    """Read an SPL term as written by serialize_spl."""
    try:
        raw = _SPL_PARSER.parse(text)
    except LarkError as err:
        raise ValueError(f"Malformed SPL term: {err}") from err
    return _build_term(_SplTransformer().transform(raw))


def spl_term(desc: Description) -> SplTerm:
    """The SplTerm serialize_spl renders for `desc`."""
    type_value = _require_type(desc)
    variables = _variables()
    head_variable = next(variables)
    relations = []
    for pair in desc.pairs:
        if pair.attribute == TYPE_ATTRIBUTE:
            continue
        relation_variable, range_variable = next(variables), next(variables)
        relations.append(
            SplRelation(
                variable=relation_variable,
                head=_capitalize(pair.attribute),
                domain=head_variable,
                range=SplTerm(variable=range_variable, head=_capitalize(pair.value)),
            )
        )
    return SplTerm(
        variable=head_variable,
        head=_capitalize(type_value),
        determiner=DETERMINER,
        relations=tuple(relations),
    )


def realize_surface(desc: Description) -> str:
    """Noun phrase with the last-selected modifier farthest from the noun."""
    type_value = _require_type(desc)
    modifiers = [pair.value for pair in desc.pairs if pair.attribute != TYPE_ATTRIBUTE]
    words = ["the", *reversed(modifiers), type_value]
    return " ".join(word.lower() for word in words)
