"""Command-line front end: generate, validate and bench."""

import argparse
import asyncio
import logging
import sys
from typing import List, Literal, Optional, Sequence, TextIO, Tuple

import structlog
from pydantic import BaseModel, Field, ValidationError, model_validator

from refgen.algorithms import ALGORITHM_NAMES
from refgen.analysis.bench import report_digest, run_benchmark, run_benchmark_async, to_csv
from refgen.config import AlgorithmName, Config, OutputFormat, load_config
from refgen.io.scene_parser import SceneDocument, load_scene_document
from refgen.models import BenchSweep
from refgen.pipeline import FAILURE_TEXT, generate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_FAILURE = 2

HANDLER_NAME = "refgen-stderr"


class CliConfig(BaseModel):
    command: Literal["generate", "validate", "bench"]
    scene_path: Optional[str] = None
    referent: Optional[str] = None
    contrast: Optional[Tuple[str, ...]] = None
    algorithm: AlgorithmName = "incremental"
    output_format: OutputFormat = "surface"
    full_brevity_max_length: Optional[int] = Field(default=None, ge=1)
    sweep: Optional[BenchSweep] = None
    seed: int = 0
    concurrency: int = 1

    @model_validator(mode="after")
    def _required_for_command(self) -> "CliConfig":
        if self.command in ("generate", "validate") and not self.scene_path:
            raise ValueError(f"{self.command} requires --scene")
        if self.command == "generate" and not self.referent:
            raise ValueError("generate requires --referent")
        if self.command == "bench" and self.sweep is None:
            raise ValueError("bench requires a sweep")
        return self


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def configure_logging(level: str, stream: Optional[TextIO] = None) -> None:
    """Route stdlib logging through structlog's console renderer on stderr."""
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.set_name(HANDLER_NAME)
    handler.setFormatter(
        structlog.stdlib.ProcessorFormatter(
            foreign_pre_chain=[
                structlog.stdlib.add_log_level,
                structlog.stdlib.add_logger_name,
                structlog.processors.TimeStamper(fmt="iso"),
            ],
            processors=[
                structlog.stdlib.ProcessorFormatter.remove_processors_meta,
                structlog.dev.ConsoleRenderer(colors=False),
            ],
        )
    )
    root = logging.getLogger()
    for existing in list(root.handlers):
        if existing.get_name() == HANDLER_NAME:
            root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(getattr(logging, level.upper(), logging.WARNING))


def _int_list(raw: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {raw!r}")


def _name_list(raw: str) -> Tuple[str, ...]:
    return tuple(part.strip() for part in raw.split(",") if part.strip())


def _algorithm_list(raw: str) -> Tuple[str, ...]:
    names = _name_list(raw)
    unknown = [name for name in names if name not in ALGORITHM_NAMES]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown algorithm(s) {', '.join(unknown)}; expected {', '.join(ALGORITHM_NAMES)}"
        )
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="refgen", description="Referring expression generation")
    parser.add_argument("--log-level", default=None, help="Override REFGEN_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("generate", help="Describe one entity of a scene")
    gen.add_argument("--scene", required=True)
    gen.add_argument("--referent", required=True)
    gen.add_argument("--algorithm", choices=ALGORITHM_NAMES, default=None)
    gen.add_argument("--format", dest="output_format", choices=("pairs", "spl", "surface"), default=None)
    gen.add_argument("--contrast", type=_name_list, default=None, help="Comma-separated entity ids")
    gen.add_argument("--max-length", type=int, default=None, help="Cap on full brevity subset size")

    val = commands.add_parser("validate", help="Check a scene file")
    val.add_argument("--scene", required=True)

    bench = commands.add_parser("bench", help="Run the benchmark sweep and print CSV")
    bench.add_argument("--na", type=_int_list, required=True)
    bench.add_argument("--nd", type=_int_list, required=True)
    bench.add_argument("--algorithms", type=_algorithm_list, default=ALGORITHM_NAMES)
    bench.add_argument("--seed", type=int, default=None)
    bench.add_argument("--trials", type=int, default=None)
    bench.add_argument("--nl", type=int, default=None)
    bench.add_argument("--family", choices=("structured", "random"), default="structured")
    bench.add_argument("--depth", type=int, default=1, help="Taxonomy depth for the random family")
    bench.add_argument("--max-length", type=int, default=None, help="Cap on full brevity subset size")
    bench.add_argument("--timing", action="store_true", help="Fill the wall_ms column")
    bench.add_argument("--concurrency", type=int, default=None)

    for sub in (gen, val, bench):
        sub.add_argument("--log-level", default=argparse.SUPPRESS, help="Override REFGEN_LOG_LEVEL")
    return parser


def _max_length(args: argparse.Namespace, config: Config) -> Optional[int]:
    if args.max_length is None:
        return config.generation.full_brevity_max_length
    return args.max_length


def to_cli_config(args: argparse.Namespace, config: Config) -> CliConfig:
    if args.command == "generate":
        return CliConfig(
            command="generate",
            scene_path=args.scene,
            referent=args.referent,
            contrast=args.contrast,
            algorithm=args.algorithm or config.generation.default_algorithm,
            output_format=args.output_format or config.generation.default_format,
            full_brevity_max_length=_max_length(args, config),
        )
    if args.command == "validate":
        return CliConfig(command="validate", scene_path=args.scene)

    sweep = BenchSweep(
        n_a_values=args.na,
        n_d_values=args.nd,
        algorithms=args.algorithms,
        trials=config.bench.trials if args.trials is None else args.trials,
        n_l=config.bench.n_l if args.nl is None else args.nl,
        family=args.family,
        taxonomy_depth=args.depth,
        full_brevity_max_length=_max_length(args, config),
        include_timing=args.timing,
    )
    return CliConfig(
        command="bench",
        sweep=sweep,
        seed=config.bench.seed if args.seed is None else args.seed,
        concurrency=config.bench.max_concurrency if args.concurrency is None else args.concurrency,
    )


def _load_document(path: str) -> Optional[SceneDocument]:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        print(f"{path}: cannot read scene: {e}", file=sys.stderr)
        return None
    document = load_scene_document(text)
    for diagnostic in document.diagnostics:
        print(f"{path}:{diagnostic}", file=sys.stderr)
    return document


def cmd_generate(cli: CliConfig, config: Config) -> int:
    document = _load_document(cli.scene_path or "")
    if document is None or not document.ok or document.scene is None:
        return EXIT_INPUT_ERROR

    generation = config.generation.model_copy(
        update={"full_brevity_max_length": cli.full_brevity_max_length}
    )
    try:
        outcome = generate(
            document.scene,
            cli.referent or "",
            contrast=cli.contrast,
            algorithm=cli.algorithm,
            output_format=cli.output_format,
            config=config.model_copy(update={"generation": generation}),
        )
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    if outcome.failed:
        print(FAILURE_TEXT)
        return EXIT_FAILURE
    print(outcome.text)
    return EXIT_OK


def cmd_validate(scene_path: str) -> int:
    document = _load_document(scene_path)
    if document is None or document.errors:
        return EXIT_INPUT_ERROR
    logger.info(f"{scene_path}: {len(document.diagnostics)} warning(s), no errors")
    return EXIT_OK


def cmd_bench(cli: CliConfig) -> int:
    sweep = cli.sweep
    if sweep is None:
        return EXIT_INPUT_ERROR
    if cli.concurrency > 1:
        report = asyncio.run(run_benchmark_async(sweep, cli.seed, cli.concurrency))
    else:
        report = run_benchmark(sweep, cli.seed)
    sys.stdout.write(to_csv(report))
    logger.info(f"Benchmark report: {len(report.rows)} rows, sha256 {report_digest(report)[:16]}...")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = load_config()
    except (ValidationError, ValueError) as e:
        print(f"error: invalid configuration: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    configure_logging(args.log_level or config.log_level)

    try:
        cli = to_cli_config(args, config)
    except ValidationError as e:
        messages: List[str] = [error["msg"] for error in e.errors()]
        print(f"error: {'; '.join(messages)}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    if cli.command == "generate":
        return cmd_generate(cli, config)
    if cli.command == "validate":
        return cmd_validate(cli.scene_path or "")
    return cmd_bench(cli)
