"""Benchmark sweep over scene sizes and algorithms, reported as CSV."""

import asyncio
import csv
import io
import logging
import time
from typing import List, NamedTuple, Tuple

from refgen.algorithms import run_algorithm
from refgen.analysis.scenes import build_structured_scene, generate_random_scene
from refgen.models import (
    BenchReport,
    BenchRow,
    BenchSweep,
    ComplexityParams,
    GenerationTask,
    RandomSceneParams,
    RunCounters,
    Scene,
)
from refgen.utils.hashing import compute_sha256_from_string, derive_seed

logger = logging.getLogger(__name__)

CSV_HEADER = (
    "algorithm",
    "n_a",
    "n_d",
    "n_l",
    "user_knows_calls",
    "distinguishing_checks",
    "candidates_enumerated",
    "wall_ms",
    "outcome",
)


class BenchJob(NamedTuple):
    n_a: int
    n_d: int
    trial: int
    algorithm: str


def plan_jobs(sweep: BenchSweep) -> List[BenchJob]:
    """Rows in report order: n_a, then n_d, then trial, then algorithm."""
    return [
        BenchJob(n_a, n_d, trial, algorithm)
        for n_a in sweep.n_a_values
        for n_d in sweep.n_d_values
        for trial in range(sweep.trials)
        for algorithm in sweep.algorithms
    ]


def scene_for(sweep: BenchSweep, job: BenchJob, seed: int) -> Tuple[Scene, str]:
    """The scene and referent of a job; every algorithm at the same
    (n_a, n_d, trial) sees the same scene."""
    scene_seed = derive_seed(seed, sweep.family, job.n_a, job.n_d, job.trial)
    if sweep.family == "structured":
        params = ComplexityParams(n_a=job.n_a, n_d=job.n_d, n_l=min(sweep.n_l, job.n_a))
        return build_structured_scene(params, scene_seed, referent_index=job.trial)

    scene = generate_random_scene(
        RandomSceneParams(
            n_entities=job.n_d + 1,
            n_attributes=job.n_a,
            taxonomy_depth=sweep.taxonomy_depth,
        ),
        scene_seed,
    )
    ids = scene.entity_ids()
    return scene, ids[job.trial % len(ids)]


def run_job(sweep: BenchSweep, job: BenchJob, seed: int) -> BenchRow:
    """Run one row; exceptions are recorded as outcome `error`."""
    try:
        scene, referent = scene_for(sweep, job, seed)
        task = GenerationTask(
            scene=scene,
            referent=referent,
            contrast=frozenset(entity_id for entity_id in scene.entities if entity_id != referent),
        )
        started = time.perf_counter()
        result = run_algorithm(job.algorithm, task, sweep.full_brevity_max_length)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
    except Exception as e:
        logger.warning(f"Benchmark row {job} failed: {e}")
        return BenchRow(
            algorithm=job.algorithm,
            params=ComplexityParams(n_a=job.n_a, n_d=job.n_d, n_l=0),
            counters=RunCounters(),
            outcome="error",
        )

    return BenchRow(
        algorithm=job.algorithm,
        params=ComplexityParams(n_a=job.n_a, n_d=job.n_d, n_l=result.mentioned),
        counters=result.counters,
        wall_ms=round(elapsed_ms, 3) if sweep.include_timing else None,
        outcome=result.outcome,
    )


def run_benchmark(sweep: BenchSweep, seed: int) -> BenchReport:
    jobs = plan_jobs(sweep)
    logger.info(f"Running benchmark: {len(jobs)} rows, family={sweep.family}, seed={seed}")
    return BenchReport(rows=[run_job(sweep, job, seed) for job in jobs], seed=seed)


async def run_benchmark_async(sweep: BenchSweep, seed: int, max_concurrency: int = 4) -> BenchReport:
    """Same report as run_benchmark, with rows run on worker threads.

    Rows are assembled in sweep order regardless of completion order.
    """
    jobs = plan_jobs(sweep)
    semaphore = asyncio.Semaphore(max(1, max_concurrency))

    async def bounded(job: BenchJob) -> BenchRow:
        async with semaphore:
            return await asyncio.to_thread(run_job, sweep, job, seed)

    logger.info(
        f"Running benchmark: {len(jobs)} rows, family={sweep.family}, seed={seed}, "
        f"concurrency={max_concurrency}"
    )
    rows = await asyncio.gather(*(bounded(job) for job in jobs))
    return BenchReport(rows=list(rows), seed=seed)


def to_csv(report: BenchReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in report.rows:
        writer.writerow(
            (
                row.algorithm,
                row.params.n_a,
                row.params.n_d,
                row.params.n_l,
                row.counters.user_knows_calls,
                row.counters.distinguishing_checks,
                row.counters.candidates_enumerated,
                "" if row.wall_ms is None else f"{row.wall_ms:.3f}",
                row.outcome,
            )
        )
    return buffer.getvalue()


def report_digest(report: BenchReport) -> str:
    """SHA256 of the CSV rendering; equal digests mean byte-identical reports."""
    return compute_sha256_from_string(to_csv(report))
