from pathlib import Path

import pytest

from refgen.io.scene_parser import parse_scene
from refgen.models import Entity, GenerationTask, Scene, Taxonomy
from refgen.pipeline import build_task

SCENES_DIR = Path(__file__).resolve().parent.parent / "scenes"


def load_scene(name: str) -> Scene:
    return parse_scene((SCENES_DIR / name).read_text(encoding="utf-8"))


def task_for(scene: Scene, referent: str) -> GenerationTask:
    return build_task(scene, referent)


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch):
    """Keep REFGEN_* settings from the developer's environment out of tests."""
    for name in (
        "REFGEN_DEFAULT_ALGORITHM",
        "REFGEN_DEFAULT_FORMAT",
        "REFGEN_FULL_BREVITY_MAX_LENGTH",
        "REFGEN_BENCH_SEED",
        "REFGEN_BENCH_TRIALS",
        "REFGEN_BENCH_NL",
        "REFGEN_BENCH_CONCURRENCY",
        "REFGEN_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setattr("refgen.config.load_dotenv", lambda *args, **kwargs: False)


@pytest.fixture
def dogs_scene() -> Scene:
    """Chihuahuas and a siamese cat seen by a breed-blind hearer."""
    return load_scene("dogs.scn")


@pytest.fixture
def perceptual_dogs_scene() -> Scene:
    return load_scene("dogs_perceptual.scn")


@pytest.fixture
def three_objects_scene() -> Scene:
    return load_scene("three_objects.scn")


@pytest.fixture
def cups_scene() -> Scene:
    return load_scene("cups.scn")


@pytest.fixture
def duplicate_scene() -> Scene:
    return load_scene("duplicate.scn")


@pytest.fixture
def explicit_scene() -> Scene:
    return load_scene("hearer_facts.scn")


@pytest.fixture
def animal_taxonomy() -> Taxonomy:
    """object > animal > {dog* > chihuahua, cat* > siamese-cat}"""
    return Taxonomy(
        attribute="type",
        nodes=frozenset({"object", "animal", "dog", "cat", "chihuahua", "siamese-cat"}),
        parent={
            "animal": "object",
            "dog": "animal",
            "cat": "animal",
            "chihuahua": "dog",
            "siamese-cat": "cat",
        },
        basic_level=frozenset({"dog", "cat"}),
    )


@pytest.fixture
def small_scene(animal_taxonomy) -> Scene:
    """Two entities with a hand-built taxonomy, for model-level tests."""
    colour = Taxonomy(attribute="colour", nodes=frozenset({"black", "white"}))
    return Scene(
        entities={
            "Object1": Entity(id="Object1", properties={"type": "chihuahua", "colour": "black"}),
            "Object2": Entity(id="Object2", properties={"type": "siamese-cat", "colour": "white"}),
        },
        taxonomies={"type": animal_taxonomy, "colour": colour},
        preferred_attributes=("type", "colour"),
    )
