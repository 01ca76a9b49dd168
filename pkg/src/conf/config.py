"""
Set the configuration settings for the lab.
"""

from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Configuration settings.

    :param output_root: Default root directory for experiment and CLI outputs.
    :type output_root: Path
    :param workers: Default number of worker processes for independent runs.
    :type workers: int
    :param log_level: Level of the console log handler (e.g., "INFO").
    :type log_level: str
    :param log_file: File receiving ERROR-level log records.
    :type log_file: str
    :var model_config: Configuration settings for pydantic-settings.
    :type model_config: SettingsConfigDict
    """

    output_root: Path = Path("output")
    workers: int = 1
    log_level: str = "INFO"
    log_file: str = "contagion_lab.log"

    model_config = SettingsConfigDict(
        env_prefix="CONTAGION_LAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


settings = Settings()
