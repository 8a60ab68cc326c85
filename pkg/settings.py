from functools import lru_cache
import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()


class Settings(BaseModel):
    """Runtime defaults, read once from the environment (or a .env file)."""

    app_name: str = "SymReal"
    default_seed: int = Field(default=0, description="seed used when no --seed is given")
    random_bound: int = Field(default=2 ** 20, ge=2, description="random choices are drawn from 1..random_bound")
    gamma_retries: int = Field(default=3, ge=0)
    closure_max_vars: int = Field(default=6, ge=1)
    sample_count: int = Field(default=64, ge=0)
    log_level: str = "WARNING"


@lru_cache()
def get_settings() -> Settings:
    values = {
        "default_seed": os.getenv("SYMREAL_SEED"),
        "random_bound": os.getenv("SYMREAL_RANDOM_BOUND"),
        "gamma_retries": os.getenv("SYMREAL_GAMMA_RETRIES"),
        "closure_max_vars": os.getenv("SYMREAL_CLOSURE_MAX_VARS"),
        "sample_count": os.getenv("SYMREAL_SAMPLE_COUNT"),
        "log_level": os.getenv("SYMREAL_LOG_LEVEL"),
    }
    return Settings(**{key: value for key, value in values.items() if value})
