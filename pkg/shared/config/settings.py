from functools import lru_cache
from typing import List, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Tool configuration"""

    # Basics
    app_name: str = Field(default="weylmass", description="Application name")
    version: str = Field(default="1.0.0", description="Version reported in meta.version")
    debug: bool = Field(default=False, description="Debug mode")
    log_level: str = Field(default="WARNING", description="Logging level")

    # HTTP service
    host: str = Field(default="localhost", description="Server host")
    port: int = Field(default=8000, description="Server port")
    reload: bool = Field(default=False, description="Hot reload")

    # Screening
    find_f_bound: int = Field(default=32, ge=1, description="Window 0 <= u, v <= bound searched by find-f")
    untwist_max_iters: int = Field(default=64, ge=1, description="Iteration cap of reduce_upper_edge")
    decompose_max_k: Optional[int] = Field(
        default=None, ge=2, description="Largest k tried by decompose (None = up to the degree)"
    )

    # Self test
    selftest_seed: int = Field(default=0, description="Default RNG seed of selftest")
    selftest_cases: int = Field(default=200, ge=1, description="Default case count per suite")
    selftest_workers: int = Field(default=1, ge=1, description="Worker processes for selftest")

    # Output
    json_indent: Optional[int] = Field(default=None, description="JSON indent (None = compact)")

    # CORS
    cors_origins: List[str] = Field(default=["*"], description="Allowed CORS origins")
    cors_methods: List[str] = Field(default=["GET", "POST", "OPTIONS"], description="Allowed HTTP methods")

    @field_validator('cors_origins', mode="before")
    @classmethod
    def parse_cors_origins(cls, v):
        """Parse comma separated origins"""
        if isinstance(v, str):
            return [origin.strip() for origin in v.split(',')]
        return v

    @field_validator('cors_methods', mode="before")
    @classmethod
    def parse_cors_methods(cls, v):
        """Parse comma separated methods"""
        if isinstance(v, str):
            return [method.strip() for method in v.split(',')]
        return v

    @field_validator('log_level')
    @classmethod
    def normalize_log_level(cls, v):
        return v.upper()

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="WEYLMASS_",
        case_sensitive=False,
        extra="ignore",
    )


@lru_cache()
def get_settings() -> Settings:
    """Cached settings accessor"""
    return Settings()


settings = get_settings()
