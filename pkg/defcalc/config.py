"""
Application configuration using Pydantic settings.
"""
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from DEFCALC_* environment variables or a .env file."""

    # Logging
    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR)"
    )

    # Sampling
    default_seed: int = Field(
        default=7,
        description="PRNG seed used when a command does not pass --seed"
    )
    default_trials: int = Field(
        default=5,
        ge=1,
        description="Number of random points for probabilistic checks"
    )
    sample_bound: int = Field(
        default=10**6,
        ge=2,
        description="Numerators and denominators of sample coordinates lie in [1, sample_bound]"
    )
    max_sample_attempts: int = Field(
        default=100,
        ge=1,
        description="Attempts per trial to find a pole-free sample point"
    )

    # Exactness policy
    exact_max_rank: int = Field(
        default=2,
        description="Largest M for which operator identities default to exact mode"
    )
    exact_max_factors: int = Field(
        default=2,
        description="Largest N for which operator identities default to exact mode"
    )

    # Desk-scale limits
    max_rank: int = Field(default=4, description="Largest supported gl_M rank")
    max_factors: int = Field(default=4, description="Largest supported tensor factor count")
    max_series_order: int = Field(default=16, description="Largest series truncation order")
    max_model_degree: int = Field(default=4, description="Largest duality model degree")

    # Suite sizes
    suite_leibniz_pairs: int = Field(
        default=100,
        description="Random polynomial pairs per shift map in the Leibniz sweep"
    )
    suite_confluence_words: int = Field(
        default=200,
        description="Random words in the quantum-plane confluence check"
    )
    suite_confluence_length: int = Field(
        default=8,
        description="Maximum word length in the confluence check"
    )
    suite_funceq_degree: int = Field(
        default=6,
        description="Degree of the functional-equation solve"
    )
    suite_exp_order: int = Field(default=12, description="Order of the exponential specializations")
    suite_hyp_order: int = Field(default=8, description="Order of the hypergeometric specializations")

    model_config = SettingsConfigDict(
        env_prefix="DEFCALC_",
        env_file=".env",
        case_sensitive=False,
    )


# Global settings instance
settings = Settings()
