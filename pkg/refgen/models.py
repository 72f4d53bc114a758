import statistics
from enum import Enum
from typing import Dict, FrozenSet, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

TYPE_ATTRIBUTE = "type"
NO_VALUE = "no-value"

HearerMode = Literal["perceptual", "depth-limited", "explicit"]


class Knowledge(str, Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


class AttributeValuePair(BaseModel):
    model_config = ConfigDict(frozen=True)

    attribute: str = Field(min_length=1)
    value: str = Field(min_length=1)

    @property
    def is_no_value(self) -> bool:
        return self.value == NO_VALUE

    def __str__(self) -> str:
        return f"<{self.attribute}, {self.value}>"


class Taxonomy(BaseModel):
    """Subsumption forest over the values of one attribute."""

    model_config = ConfigDict(frozen=True)

    attribute: str
    nodes: FrozenSet[str]
    parent: Dict[str, str] = Field(default_factory=dict)
    basic_level: FrozenSet[str] = frozenset()

    def roots(self) -> List[str]:
        return sorted(node for node in self.nodes if node not in self.parent)

    def children(self, value: str) -> List[str]:
        return sorted(node for node, up in self.parent.items() if up == value)


class Entity(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str = Field(min_length=1)
    properties: Dict[str, str] = Field(default_factory=dict)


class KnownFact(BaseModel):
    model_config = ConfigDict(frozen=True)

    entity: str
    attribute: str
    value: str
    knowledge: Knowledge


class BasicOverride(BaseModel):
    model_config = ConfigDict(frozen=True)

    attribute: str
    value: str
    entity: Optional[str] = None


class HearerModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    mode: HearerMode = "perceptual"
    depth_limits: Dict[str, FrozenSet[str]] = Field(default_factory=dict)
    known_facts: Tuple[KnownFact, ...] = ()
    basic_overrides: Tuple[BasicOverride, ...] = ()


class Scene(BaseModel):
    model_config = ConfigDict(frozen=True)

    entities: Dict[str, Entity]
    taxonomies: Dict[str, Taxonomy]
    preferred_attributes: Tuple[str, ...]
    hearer: HearerModel = HearerModel()

    def entity_ids(self) -> List[str]:
        return list(self.entities)


class GenerationTask(BaseModel):
    model_config = ConfigDict(frozen=True)

    scene: Scene
    referent: str
    contrast: FrozenSet[str]

    @model_validator(mode="after")
    def _check_ids(self) -> "GenerationTask":
        if self.referent in self.contrast:
            raise ValueError(f"referent {self.referent} is also in the contrast set")
        missing = sorted(
            entity_id
            for entity_id in {self.referent, *self.contrast}
            if entity_id not in self.scene.entities
        )
        if missing:
            raise ValueError(f"unknown entity ids: {', '.join(missing)}")
        return self

    def ordered_contrast(self) -> List[str]:
        return [entity_id for entity_id in self.scene.entities if entity_id in self.contrast]


class Description(BaseModel):
    """Attribute-value pairs in the order they were selected."""

    model_config = ConfigDict(frozen=True)

    pairs: Tuple[AttributeValuePair, ...] = ()

    @field_validator("pairs")
    @classmethod
    def _one_pair_per_attribute(
        cls, pairs: Tuple[AttributeValuePair, ...]
    ) -> Tuple[AttributeValuePair, ...]:
        seen = set()
        for pair in pairs:
            if pair.is_no_value:
                raise ValueError(f"description pair for {pair.attribute} carries no-value")
            if pair.attribute in seen:
                raise ValueError(f"attribute {pair.attribute} appears twice in description")
            seen.add(pair.attribute)
        return pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def value_of(self, attribute: str) -> Optional[str]:
        for pair in self.pairs:
            if pair.attribute == attribute:
                return pair.value
        return None

    @classmethod
    def of(cls, *pairs: Tuple[str, str]) -> "Description":
        return cls(pairs=tuple(AttributeValuePair(attribute=a, value=v) for a, v in pairs))


class RunCounters(BaseModel):
    user_knows_calls: int = 0
    distinguishing_checks: int = 0
    candidates_enumerated: int = 0
    pairs_considered: int = 0

    def absorb(self, other: "RunCounters") -> None:
        self.user_knows_calls += other.user_knows_calls
        self.distinguishing_checks += other.distinguishing_checks
        self.candidates_enumerated += other.candidates_enumerated
        self.pairs_considered += other.pairs_considered


class GenerationResult(BaseModel):
    algorithm: str
    description: Optional[Description] = None
    counters: RunCounters = Field(default_factory=RunCounters)
    # set when the type pair was appended as head noun rather than selected
    head_noun_added: bool = False

    @property
    def mentioned(self) -> int:
        if self.description is None:
            return 0
        return len(self.description) - (1 if self.head_noun_added else 0)

    @property
    def failed(self) -> bool:
        return self.description is None

    @property
    def outcome(self) -> str:
        return "failure" if self.failed else "success"


class ComplexityParams(BaseModel):
    n_a: int = Field(ge=0)
    n_d: int = Field(ge=0)
    n_l: int = Field(ge=0)

    @model_validator(mode="after")
    def _mentioned_within_available(self) -> "ComplexityParams":
        if self.n_l > self.n_a:
            raise ValueError(f"n_l ({self.n_l}) exceeds n_a ({self.n_a})")
        return self


class RandomSceneParams(BaseModel):
    n_entities: int = Field(ge=1)
    n_attributes: int = Field(ge=1)
    taxonomy_depth: int = Field(default=1, ge=1)
    branching: int = Field(default=2, ge=1)
    hearer_mode: Literal["perceptual", "depth-limited"] = "perceptual"
    # levels a depth-limited hearer tells apart from the roots; None means down to the basic level
    hearer_depth: Optional[int] = Field(default=None, ge=1)


class BenchSweep(BaseModel):
    n_a_values: Tuple[int, ...] = ()
    n_d_values: Tuple[int, ...] = ()
    algorithms: Tuple[str, ...] = ()
    trials: int = Field(default=1, ge=0)
    n_l: int = Field(default=3, ge=1)
    family: Literal["structured", "random"] = "structured"
    taxonomy_depth: int = Field(default=1, ge=1)
    full_brevity_max_length: Optional[int] = Field(default=None, ge=1)
    include_timing: bool = False

    @field_validator("n_a_values")
    @classmethod
    def _positive_attributes(cls, values: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(value < 1 for value in values):
            raise ValueError("n_a values must be >= 1")
        return values

    @field_validator("n_d_values")
    @classmethod
    def _non_negative_distractors(cls, values: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(value < 0 for value in values):
            raise ValueError("n_d values must be >= 0")
        return values


class BenchRow(BaseModel):
    algorithm: str
    params: ComplexityParams
    counters: RunCounters
    wall_ms: Optional[float] = None
    outcome: str


class BenchReport(BaseModel):
    rows: List[BenchRow] = Field(default_factory=list)
    seed: int = 0

    def rows_for(self, algorithm: str, n_a: Optional[int] = None) -> List[BenchRow]:
        return [
            row
            for row in self.rows
            if row.algorithm == algorithm and (n_a is None or row.params.n_a == n_a)
        ]

    def median(self, algorithm: str, n_a: int, counter: str) -> float:
        """Median of one RunCounters field over the rows of an algorithm at n_a."""
        values = [getattr(row.counters, counter) for row in self.rows_for(algorithm, n_a)]
        if not values:
            raise ValueError(f"no rows for {algorithm} at n_a={n_a}")
        return statistics.median(values)
