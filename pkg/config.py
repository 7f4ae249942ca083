from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Tool
    app_name: str = "kschur-filtration"
    version: str = "1.0.0"
    log_level: str = "INFO"

    # Computation limits
    max_degree: int = 8

    # Persistent basis cache
    cache_enabled: bool = True
    cache_path: str = "~/.cache/kschur/basis_cache.json"
    cache_schema_version: int = 1

    # Verification defaults
    default_jobs: int = 1

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="KSCHUR_",
        case_sensitive=False,
        extra="ignore",
    )


settings = Settings()
