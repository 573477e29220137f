"""
config_models.py

pydantic models for every configuration section in codehand_config.json,
plus the RunManifest written next to each command's outputs.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class SystemConfig(BaseModel):
    model_config = ConfigDict(extra="ignore")

    log_level: str = "INFO"
    log_file: Optional[str] = None

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {value!r}")
        return level


class SegmentConfig(BaseModel):
    model_config = ConfigDict(extra="ignore")

    line_gap_ratio: float = Field(0.6, gt=0.0, lt=2.0)


class GrammarConfig(BaseModel):
    model_config = ConfigDict(extra="ignore")

    class_registry_path: Optional[str] = None


class CorrectionConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    similarity_threshold: float = Field(0.7, gt=0.0, le=1.0)
    fuzzy_keyword_repair: bool = True
    case_insensitive_match: bool = True
    reset_lexicon_per_sample: bool = True
    flag_similarity_floor: float = Field(0.5, ge=0.0, le=1.0)


class NoiseConfig(BaseModel):
    """
    Channel parameters. The defaults are chosen so the per-line error mix is
    ordered space > word > symbol; they are not measured recognizer statistics.
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    p_space: float = Field(0.15, ge=0.0, le=1.0)
    p_symbol: float = Field(0.10, ge=0.0, le=1.0)
    p_word: float = Field(0.08, ge=0.0, le=1.0)
    seed: int = Field(0, ge=0, lt=2 ** 64)
    confusion_table_path: Optional[str] = None


class MetricsConfig(BaseModel):
    model_config = ConfigDict(extra="ignore")

    per_line: bool = False


class CorpusConfig(BaseModel):
    model_config = ConfigDict(extra="ignore")

    min_lines: int = Field(9, ge=1)
    max_lines: int = Field(18, ge=1)
    max_line_length: int = Field(60, ge=1)
    exclude_repetitive: bool = False
    repetitive_ratio: float = Field(0.8, gt=0.0, le=1.0)
    extensions: List[str] = [".py"]


class CodehandSettings(BaseModel):
    model_config = ConfigDict(extra="ignore")

    system_config: SystemConfig = SystemConfig()
    segment_config: SegmentConfig = SegmentConfig()
    grammar_config: GrammarConfig = GrammarConfig()
    correction_config: CorrectionConfig = CorrectionConfig()
    noise_config: NoiseConfig = NoiseConfig()
    metrics_config: MetricsConfig = MetricsConfig()
    corpus_config: CorpusConfig = CorpusConfig()


class RunManifest(BaseModel):
    """Everything needed to re-run a command and reproduce its outputs."""
    model_config = ConfigDict(extra="forbid")

    command: str
    arguments: Dict[str, Any]
    config: Dict[str, Any]
    inputs: List[str]
    out_dir: str
    seed: Optional[int] = None
    tool_version: str
