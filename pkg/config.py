# config.py
import logging
import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator

load_dotenv()

LOG_LEVELS = {
    "error": logging.ERROR,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}

# Inputs to the orthogonal solvers stay inside [-2^20, 2^20].
COORD_LIMIT = 2 ** 20


class Settings(BaseModel):
    """Process-wide knobs read from the environment (and an optional .env file)."""

    model_config = ConfigDict(frozen=True)

    log_level: str = "info"
    shadow_check: bool = False
    brute_force_limit: int = Field(default=1_000_000, gt=0)
    sum_brute_limit: int = Field(default=10_000_000, gt=0)
    bench_budget_s: float = Field(default=900.0, gt=0)
    seed: int = 20240601
    ep_scan_threshold: int = Field(default=64, ge=0)
    coord_limit: int = COORD_LIMIT

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.strip().lower()
        if value not in LOG_LEVELS:
            raise ValueError(f"OVERLAP_LOG must be one of {sorted(LOG_LEVELS)}, got {value!r}")
        return value


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    level = os.getenv("OVERLAP_LOG", "info")
    return Settings(
        log_level=level,
        shadow_check=level.strip().lower() == "debug" or os.getenv("OVERLAP_SHADOW") == "1",
        brute_force_limit=int(os.getenv("OVERLAP_BRUTE_LIMIT", "1000000")),
        sum_brute_limit=int(os.getenv("OVERLAP_SUM_LIMIT", "10000000")),
        bench_budget_s=float(os.getenv("OVERLAP_BENCH_BUDGET", "900")),
        seed=int(os.getenv("OVERLAP_SEED", "20240601")),
        ep_scan_threshold=int(os.getenv("OVERLAP_EP_SCAN", "64")),
    )


def configure_logging(level: str | None = None) -> None:
    """Install one stderr handler on the root logger at the OVERLAP_LOG level."""
    name = (level or get_settings().log_level).lower()
    logging.basicConfig(
        level=LOG_LEVELS.get(name, logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
