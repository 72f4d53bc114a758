import pytest

from conftest import task_for
from refgen.algorithms import (
    ALGORITHM_NAMES,
    ensure_head_noun,
    find_best_value,
    full_brevity,
    greedy_heuristic,
    incremental,
    is_distinguishing,
    local_brevity,
    rules_out,
    run_algorithm,
)
from refgen.analysis.complexity import full_brevity_search_space
from refgen.errors import PreconditionError
from refgen.io.scene_parser import parse_scene
from refgen.io.serializers import realize_surface, serialize_pairs
from refgen.models import NO_VALUE, AttributeValuePair, Description, GenerationTask, RunCounters

MERGE_SCENE = """\
taxonomy type
  thing
taxonomy a
  a0
  a1
taxonomy b
  b0
  b1
taxonomy c
  c0
  c1
entity R
  type thing
  a a1
  b b1
  c c1
entity D1
  type thing
  a a0
  b b1
  c c0
entity D2
  type thing
  a a1
  b b0
  c c0
preferred type a b c
"""

ABOVE_BASIC_SCENE = """\
taxonomy type
  object
    animal
      dog*
        chihuahua
    rock
taxonomy colour
  black
  white
entity Object1
  type chihuahua
  colour black
entity Object2
  type rock
  colour black
entity Object3
  type chihuahua
  colour white
preferred type colour
hearer depth-limited
  type: animal rock
"""


def surface(task, result):
    return realize_surface(ensure_head_noun(task, result.description))


class TestIncremental:
    """Test cases for the incremental algorithm."""

    def test_breed_blind_hearer_gets_basic_level(self, dogs_scene):
        """Test the dog/cat golden: basic-level type plus colour."""
        result = incremental(task_for(dogs_scene, "Object1"))
        assert result.description == Description.of(("type", "dog"), ("colour", "black"))
        assert not result.head_noun_added

    def test_preference_order_changes_the_choice(self, dogs_scene):
        """Test that preferring size over colour picks size."""
        scene = dogs_scene.model_copy(update={"preferred_attributes": ("type", "size", "colour")})
        result = incremental(task_for(scene, "Object1"))
        assert result.description == Description.of(("type", "dog"), ("size", "small"))

    def test_three_objects(self, three_objects_scene):
        """Test the black dog among a white dog and a black cat."""
        task = task_for(three_objects_scene, "Object1")
        result = incremental(task)
        assert surface(task, result) == "the black dog"

    def test_head_noun_added_when_type_not_selected(self, cups_scene):
        """Test that the type pair is appended when no type pair was needed."""
        result = incremental(task_for(cups_scene, "Object1"))
        assert result.head_noun_added
        assert result.description.pairs[-1] == AttributeValuePair(attribute="type", value="cup")
        assert result.mentioned == len(result.description) - 1

    def test_explicit_hearer(self, explicit_scene):
        """Test generation with a hearer who knows only listed facts."""
        task = task_for(explicit_scene, "Object1")
        result = incremental(task)
        assert result.description == Description.of(("type", "dog"), ("colour", "black"))

    def test_hearer_cut_off_above_basic_level(self):
        """Test that a known ancestor is used when the basic level is unknown."""
        scene = parse_scene(ABOVE_BASIC_SCENE)
        task = GenerationTask(scene=scene, referent="Object1", contrast=frozenset({"Object2"}))
        outcomes = {name: run_algorithm(name, task).outcome for name in ALGORITHM_NAMES}
        assert outcomes == {name: "success" for name in ALGORITHM_NAMES}
        assert incremental(task).description == Description.of(("type", "animal"))

    def test_head_noun_known_to_hearer(self):
        """Test that the added head noun is a type the hearer can judge."""
        scene = parse_scene(ABOVE_BASIC_SCENE)
        task = GenerationTask(scene=scene, referent="Object1", contrast=frozenset({"Object3"}))
        result = incremental(task)
        assert result.head_noun_added
        assert result.description == Description.of(("colour", "black"), ("type", "animal"))
        assert is_distinguishing(task, result.description)
        assert realize_surface(result.description) == "the black animal"

    def test_failure_on_indistinguishable_duplicate(self, duplicate_scene):
        """Test that a duplicate of the referent makes incremental fail."""
        result = incremental(task_for(duplicate_scene, "Object1"))
        assert result.failed
        assert result.outcome == "failure"

    def test_counts_user_knows_calls(self, dogs_scene):
        """Test that UserKnows calls are recorded."""
        result = incremental(task_for(dogs_scene, "Object1"))
        assert result.counters.user_knows_calls > 0


class TestFindBestValue:
    """Test cases for choosing a value along the referent's path."""

    def test_keeps_basic_level_without_strict_gain(self, perceptual_dogs_scene):
        """Test that a more specific value must rule out strictly more."""
        task = task_for(perceptual_dogs_scene, "Object1")
        assert find_best_value(task, {"Object2", "Object3"}, "type", "dog") == "dog"

    def test_specializes_from_uninformative_value(self, small_scene):
        """Test that the walk moves down while it gains discrimination."""
        task = GenerationTask(scene=small_scene, referent="Object1", contrast=frozenset({"Object2"}))
        assert find_best_value(task, {"Object2"}, "type", "object") == "dog"
        assert find_best_value(task, {"Object2"}, "type", NO_VALUE) == "dog"

    def test_skips_values_the_hearer_cannot_judge(self, dogs_scene):
        """Test that unknown specializations are never adopted."""
        task = task_for(dogs_scene, "Object1")
        assert find_best_value(task, {"Object2", "Object3"}, "type", "dog") == "dog"

    def test_restarts_from_root_when_initial_value_is_unknown(self, dogs_scene):
        """Test that an unknown starting value does not hide a known ancestor."""
        task = task_for(dogs_scene, "Object1")
        assert find_best_value(task, {"Object2", "Object3"}, "type", "chihuahua") == "dog"

    def test_ancestor_above_unknown_basic_level(self):
        scene = parse_scene(ABOVE_BASIC_SCENE)
        task = GenerationTask(scene=scene, referent="Object1", contrast=frozenset({"Object2"}))
        assert find_best_value(task, {"Object2"}, "type", "dog") == "animal"

    def test_no_value_when_nothing_is_known(self, explicit_scene):
        """Test the no-value result when the hearer knows no value on the path."""
        task = task_for(explicit_scene, "Object2")
        assert find_best_value(task, {"Object1", "Object3"}, "type", "cat") == NO_VALUE


class TestGreedy:
    """Test cases for the greedy heuristic."""

    def test_cups_selection_order(self, cups_scene):
        """Test that plastic is chosen first and the result realizes correctly."""
        task = task_for(cups_scene, "Object1")
        result = greedy_heuristic(task)
        assert result.description.pairs[0] == AttributeValuePair(attribute="material", value="plastic")
        assert surface(task, result) == "the large red plastic cup"
        assert serialize_pairs(ensure_head_noun(task, result.description)) == (
            "material=plastic\ncolour=red\nsize=large\ntype=cup"
        )

    def test_failure_on_duplicate(self, duplicate_scene):
        """Test that greedy fails when the pool is exhausted."""
        assert greedy_heuristic(task_for(duplicate_scene, "Object1")).failed


class TestFullBrevity:
    """Test cases for the exhaustive shortest-description search."""

    def test_cups(self, cups_scene):
        """Test the shortest description of the large red plastic cup."""
        task = task_for(cups_scene, "Object1")
        result = full_brevity(task)
        assert result.description == Description.of(("colour", "red"), ("size", "large"))
        assert surface(task, result) == "the large red cup"

    def test_enumeration_count(self, cups_scene):
        """Test that subsets are counted up to the first distinguishing one."""
        result = full_brevity(task_for(cups_scene, "Object1"))
        assert result.counters.candidates_enumerated == 8
        assert result.counters.candidates_enumerated <= full_brevity_search_space(4, 2)

    def test_empty_contrast(self, cups_scene):
        """Test that nothing needs saying when there are no distractors."""
        task = GenerationTask(scene=cups_scene, referent="Object1", contrast=frozenset())
        result = full_brevity(task)
        assert result.description == Description()
        assert result.counters.candidates_enumerated == 0

    def test_max_length_cap(self, cups_scene):
        """Test that a cap below the minimum size is a failure."""
        result = full_brevity(task_for(cups_scene, "Object1"), max_length=1)
        assert result.failed
        assert result.counters.candidates_enumerated == 4

    def test_failure_on_duplicate(self, duplicate_scene):
        """Test that no subset distinguishes a duplicated referent."""
        assert full_brevity(task_for(duplicate_scene, "Object1")).failed


class TestLocalBrevity:
    """Test cases for local improvement of a distinguishing description."""

    def test_converges_from_greedy_on_cups(self, cups_scene):
        """Test that the greedy cups description loses its redundant pair."""
        task = task_for(cups_scene, "Object1")
        seed = greedy_heuristic(task).description
        result = local_brevity(task, seed)
        assert result.description == Description.of(("colour", "red"), ("size", "large"))
        assert surface(task, result) == "the large red cup"

    def test_default_seed_is_greedy(self, cups_scene):
        """Test that without an initial description greedy supplies one."""
        task = task_for(cups_scene, "Object1")
        result = local_brevity(task)
        assert surface(task, result) == "the large red cup"
        assert result.counters.user_knows_calls > greedy_heuristic(task).counters.user_knows_calls

    def test_merges_two_pairs_into_one(self):
        """Test replacement of two pairs by a single pair that covers both."""
        scene = parse_scene(MERGE_SCENE)
        task = task_for(scene, "R")
        result = local_brevity(task, Description.of(("a", "a1"), ("b", "b1")))
        assert result.description == Description.of(("c", "c1"))

    def test_generalizes_toward_basic_level(self, perceptual_dogs_scene):
        """Test that a subordinate value is replaced by the basic level."""
        task = task_for(perceptual_dogs_scene, "Object1")
        initial = Description.of(("type", "chihuahua"), ("colour", "black"))
        result = local_brevity(task, initial)
        assert result.description == Description.of(("type", "dog"), ("colour", "black"))

    def test_rejects_non_distinguishing_initial(self, cups_scene):
        """Test that the initial description must already distinguish."""
        task = task_for(cups_scene, "Object1")
        with pytest.raises(PreconditionError):
            local_brevity(task, Description.of(("colour", "red")))


class TestSharedPieces:
    """Test cases for RulesOut, the distinguishing check and head nouns."""

    def test_rules_out_no_value(self, cups_scene):
        """Test that no-value rules out nothing."""
        task = task_for(cups_scene, "Object1")
        assert rules_out(task, task.contrast, AttributeValuePair(attribute="colour", value=NO_VALUE)) == frozenset()

    def test_rules_out_counts(self, cups_scene):
        """Test RulesOut on the seven cups."""
        task = task_for(cups_scene, "Object1")
        counters = RunCounters()
        ruled = rules_out(task, task.contrast, AttributeValuePair(attribute="material", value="plastic"), counters)
        assert ruled == frozenset({"Object3", "Object4", "Object5", "Object6"})
        assert counters.user_knows_calls == 6

    def test_system_and_hearer_modes_differ(self, dogs_scene):
        """Test that a breed the hearer cannot see distinguishes only for the system."""
        task = GenerationTask(scene=dogs_scene, referent="Object1", contrast=frozenset({"Object3"}))
        desc = Description.of(("type", "chihuahua"))
        assert is_distinguishing(task, desc, mode="system")
        assert not is_distinguishing(task, desc, mode="hearer")

    def test_ensure_head_noun(self, dogs_scene):
        """Test that a missing type pair is appended at the basic level."""
        task = task_for(dogs_scene, "Object1")
        completed = ensure_head_noun(task, Description.of(("colour", "black")))
        assert completed == Description.of(("colour", "black"), ("type", "dog"))
        assert ensure_head_noun(task, completed) == completed

    def test_head_noun_above_unknown_basic_level(self):
        """Test that the head noun falls back to a type the hearer knows."""
        task = task_for(parse_scene(ABOVE_BASIC_SCENE), "Object1")
        completed = ensure_head_noun(task, Description.of(("colour", "black")))
        assert completed.value_of("type") == "animal"

    @pytest.mark.parametrize("name", ALGORITHM_NAMES)
    def test_every_algorithm_fails_on_duplicate(self, duplicate_scene, name):
        """Test failure agreement on an indistinguishable duplicate."""
        assert run_algorithm(name, task_for(duplicate_scene, "Object1")).failed

    def test_unknown_algorithm(self, cups_scene):
        """Test that an unknown algorithm name is rejected."""
        with pytest.raises(ValueError, match="Unknown algorithm"):
            run_algorithm("exhaustive", task_for(cups_scene, "Object1"))


if __name__ == "__main__":
    pytest.main([__file__])
