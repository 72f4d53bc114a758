from refgen.analysis.bench import (
    CSV_HEADER,
    report_digest,
    run_benchmark,
    run_benchmark_async,
    to_csv,
)
from refgen.analysis.complexity import full_brevity_search_space
from refgen.analysis.scenes import build_structured_scene, generate_random_scene

__all__ = [
    "CSV_HEADER",
    "build_structured_scene",
    "full_brevity_search_space",
    "generate_random_scene",
    "report_digest",
    "run_benchmark",
    "run_benchmark_async",
    "to_csv",
]
