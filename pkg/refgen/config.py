import os
from typing import Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

AlgorithmName = Literal["full-brevity", "greedy", "local-brevity", "incremental"]
OutputFormat = Literal["pairs", "spl", "surface"]


class GenerationConfig(BaseModel):
    default_algorithm: AlgorithmName = "incremental"
    default_format: OutputFormat = "surface"
    full_brevity_max_length: Optional[int] = Field(default=None, ge=1)


class BenchConfig(BaseModel):
    seed: int = 0
    trials: int = Field(default=20, ge=0)
    n_l: int = Field(default=3, ge=1)
    max_concurrency: int = Field(default=1, ge=1)


class Config(BaseModel):
    generation: GenerationConfig
    bench: BenchConfig
    log_level: str = "WARNING"


def _optional_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return None
    return int(raw)


def load_config() -> Config:
    load_dotenv()
    return Config(
        generation=GenerationConfig(
            default_algorithm=os.getenv("REFGEN_DEFAULT_ALGORITHM", "incremental"),
            default_format=os.getenv("REFGEN_DEFAULT_FORMAT", "surface"),
            full_brevity_max_length=_optional_int("REFGEN_FULL_BREVITY_MAX_LENGTH"),
        ),
        bench=BenchConfig(
            seed=int(os.getenv("REFGEN_BENCH_SEED", "0")),
            trials=int(os.getenv("REFGEN_BENCH_TRIALS", "20")),
            n_l=int(os.getenv("REFGEN_BENCH_NL", "3")),
            max_concurrency=int(os.getenv("REFGEN_BENCH_CONCURRENCY", "1")),
        ),
        log_level=os.getenv("REFGEN_LOG_LEVEL", "WARNING"),
    )
