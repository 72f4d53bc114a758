import pytest
from pydantic import ValidationError

from refgen.config import load_config
from refgen.errors import InvalidReferenceError
from refgen.models import Description
from refgen.pipeline import FAILURE_TEXT, build_task, generate, render


class TestLoadConfig:
    """Test cases for environment configuration."""

    def test_defaults(self):
        """Test the defaults with no REFGEN_* variables set."""
        config = load_config()
        assert config.generation.default_algorithm == "incremental"
        assert config.generation.default_format == "surface"
        assert config.generation.full_brevity_max_length is None
        assert (config.bench.seed, config.bench.trials, config.bench.n_l) == (0, 20, 3)
        assert config.bench.max_concurrency == 1
        assert config.log_level == "WARNING"

    def test_environment_values(self, monkeypatch):
        """Test that variables override the defaults."""
        monkeypatch.setenv("REFGEN_FULL_BREVITY_MAX_LENGTH", "4")
        monkeypatch.setenv("REFGEN_BENCH_TRIALS", "200")
        monkeypatch.setenv("REFGEN_LOG_LEVEL", "DEBUG")
        config = load_config()
        assert config.generation.full_brevity_max_length == 4
        assert config.bench.trials == 200
        assert config.log_level == "DEBUG"

    def test_blank_cap_means_unlimited(self, monkeypatch):
        monkeypatch.setenv("REFGEN_FULL_BREVITY_MAX_LENGTH", "")
        assert load_config().generation.full_brevity_max_length is None

    def test_invalid_format(self, monkeypatch):
        """Test that an unknown output format is rejected."""
        monkeypatch.setenv("REFGEN_DEFAULT_FORMAT", "xml")
        with pytest.raises(ValidationError):
            load_config()


class TestBuildTask:
    """Test cases for task construction."""

    def test_default_contrast(self, three_objects_scene):
        """Test that every other entity is a distractor by default."""
        task = build_task(three_objects_scene, "Object1")
        assert task.contrast == frozenset({"Object2", "Object3"})

    def test_explicit_contrast(self, three_objects_scene):
        task = build_task(three_objects_scene, "Object1", ["Object3"])
        assert task.contrast == frozenset({"Object3"})

    def test_unknown_referent(self, three_objects_scene):
        with pytest.raises(InvalidReferenceError):
            build_task(three_objects_scene, "Object9")

    def test_unknown_contrast_member(self, three_objects_scene):
        with pytest.raises(InvalidReferenceError):
            build_task(three_objects_scene, "Object1", ["Object9"])

    def test_referent_in_own_contrast(self, three_objects_scene):
        """Test that the referent cannot be its own distractor."""
        with pytest.raises(InvalidReferenceError):
            build_task(three_objects_scene, "Object1", ["Object1", "Object2"])


class TestGenerate:
    """Test cases for the generate pipeline."""

    def test_incremental_on_breed_blind_scene(self, dogs_scene):
        """Test the black dog through every step."""
        outcome = generate(dogs_scene, "Object1", algorithm="incremental", output_format="surface")
        assert not outcome.failed
        assert outcome.text == "the black dog"

    def test_head_noun_added(self, cups_scene):
        """Test that full brevity's colour and size gain the type noun."""
        outcome = generate(cups_scene, "Object1", algorithm="full-brevity", output_format="surface")
        assert len(outcome.result.description) == 2
        assert len(outcome.description) == 3
        assert outcome.text == "the large red cup"

    def test_pairs_format(self, three_objects_scene):
        outcome = generate(three_objects_scene, "Object1", algorithm="incremental", output_format="pairs")
        assert outcome.text == "type=dog\ncolour=black"

    def test_failure_outcome(self, duplicate_scene):
        """Test that referential failure is a value, not an exception."""
        outcome = generate(duplicate_scene, "Object1", algorithm="greedy")
        assert outcome.failed
        assert outcome.description is None
        assert outcome.text == FAILURE_TEXT

    def test_defaults_from_config(self, cups_scene, monkeypatch):
        """Test that algorithm and format come from configuration when omitted."""
        monkeypatch.setenv("REFGEN_DEFAULT_ALGORITHM", "greedy")
        outcome = generate(cups_scene, "Object1")
        assert outcome.text == "the large red plastic cup"

    def test_length_cap_from_config(self, cups_scene, monkeypatch):
        """Test that the configured cap can make full brevity fail."""
        monkeypatch.setenv("REFGEN_FULL_BREVITY_MAX_LENGTH", "1")
        outcome = generate(cups_scene, "Object1", algorithm="full-brevity")
        assert outcome.failed


class TestRender:
    """Test cases for format dispatch."""

    def test_each_format(self):
        desc = Description.of(("type", "dog"), ("colour", "black"))
        assert render(desc, "pairs") == "type=dog\ncolour=black"
        assert render(desc, "surface") == "the black dog"
        assert render(desc, "spl").startswith("(X / Dog\n")


if __name__ == "__main__":
    pytest.main([__file__])
