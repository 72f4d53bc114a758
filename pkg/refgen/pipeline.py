import logging
from typing import Iterable, Optional

from pydantic import BaseModel

from refgen.algorithms import ensure_head_noun, run_algorithm
from refgen.config import Config, OutputFormat, load_config
from refgen.errors import InvalidReferenceError
from refgen.io.serializers import realize_surface, serialize_pairs, serialize_spl
from refgen.models import Description, GenerationResult, GenerationTask, Scene

logger = logging.getLogger(__name__)

FAILURE_TEXT = "failure"


class GenerationOutcome(BaseModel):
    result: GenerationResult
    description: Optional[Description] = None
    text: str

    @property
    def failed(self) -> bool:
        return self.result.failed


def build_task(scene: Scene, referent: str, contrast: Optional[Iterable[str]] = None) -> GenerationTask:
    """Task for `referent`; the contrast set defaults to every other entity."""
    if referent not in scene.entities:
        raise InvalidReferenceError(f"unknown referent {referent!r}")
    if contrast is None:
        members = frozenset(entity_id for entity_id in scene.entities if entity_id != referent)
    else:
        members = frozenset(contrast)
        unknown = sorted(members - set(scene.entities))
        if unknown:
            raise InvalidReferenceError(f"unknown contrast entities: {', '.join(unknown)}")
        if referent in members:
            raise InvalidReferenceError(f"referent {referent!r} cannot be in its own contrast set")
    return GenerationTask(scene=scene, referent=referent, contrast=members)


def render(desc: Description, output_format: OutputFormat) -> str:
    if output_format == "pairs":
        return serialize_pairs(desc)
    if output_format == "spl":
        return serialize_spl(desc)
    return realize_surface(desc)


def generate(
    scene: Scene,
    referent: str,
    contrast: Optional[Iterable[str]] = None,
    algorithm: Optional[str] = None,
    output_format: Optional[OutputFormat] = None,
    config: Optional[Config] = None,
) -> GenerationOutcome:
    """
    Generate and render a referring expression for one entity.

    Steps:
    1. Build the task (contrast defaults to all other entities)
    2. Run the selected algorithm
    3. Complete the description with a head noun
    4. Render it in the requested format

    Referential failure is returned as an outcome with text `failure`.
    """
    config = config or load_config()
    algorithm = algorithm or config.generation.default_algorithm
    output_format = output_format or config.generation.default_format

    logger.info(f"Step 1: Building task for {referent}")
    task = build_task(scene, referent, contrast)

    logger.info(f"Step 2: Running {algorithm} against {len(task.contrast)} distractor(s)")
    result = run_algorithm(algorithm, task, config.generation.full_brevity_max_length)
    if result.description is None:
        logger.info(f"{algorithm} found no distinguishing description for {referent}")
        return GenerationOutcome(result=result, text=FAILURE_TEXT)

    logger.info("Step 3: Adding head noun")
    description = ensure_head_noun(task, result.description)

    logger.info(f"Step 4: Rendering as {output_format}")
    text = render(description, output_format)
    logger.info(
        f"Generated {len(description)} pair(s) for {referent}: "
        f"{result.counters.user_knows_calls} UserKnows call(s)"
    )
    return GenerationOutcome(result=result, description=description, text=text)
