import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

load_dotenv()


def _env_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() in ("1", "true", "yes", "on")


class Settings(BaseModel):
    """Runtime settings with environment variable loading."""

    model_config = ConfigDict(validate_default=True)

    # Logging
    log_level: str = Field(default_factory=lambda: os.getenv("WELLGAP_LOG_LEVEL", "INFO"))
    log_json: bool = Field(default_factory=lambda: _env_bool("WELLGAP_LOG_JSON", False))

    # Execution
    jobs: int = Field(default_factory=lambda: int(os.getenv("WELLGAP_JOBS", "1")), ge=1)

    # Numerics
    epsilon: float = Field(
        default_factory=lambda: float(os.getenv("WELLGAP_EPSILON", "0.1")), gt=0.0, lt=1.0
    )
    dense_max_n: int = Field(
        default_factory=lambda: int(os.getenv("WELLGAP_DENSE_MAX_N", "12")), ge=1
    )
    brute_max_n: int = Field(
        default_factory=lambda: int(os.getenv("WELLGAP_BRUTE_MAX_N", "16")), ge=1, le=16
    )


@lru_cache
def get_settings() -> Settings:
    return Settings()
