import io
import logging
import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, ValidationError

from ..entities.config import ExperimentConfig
from ..exceptions import ConfigError

load_dotenv()

""" Service settings come from the environment or a .env file """
CHECKPOINT_PATH = os.getenv("CHECKPOINT_PATH")
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
RATE_LIMIT = os.getenv("RATE_LIMIT", "30/minute")


@dataclass(frozen=True)
class Settings:
    checkpoint_path: str | None = CHECKPOINT_PATH
    log_level: str = LOG_LEVEL
    rate_limit: str = RATE_LIMIT


def get_settings() -> Settings:
    return Settings(
        checkpoint_path=os.getenv("CHECKPOINT_PATH", CHECKPOINT_PATH),
        log_level=os.getenv("LOG_LEVEL", LOG_LEVEL),
        rate_limit=os.getenv("RATE_LIMIT", RATE_LIMIT),
    )


TOP_LEVEL = "experiment"
SECTIONS = ("change_space", "tokenizer", "encoder", "train", "schedule")
TUPLE_FIELDS = {"scales"}


def _field_sections() -> dict[str, str]:
    sections = {}
    for name, info in ExperimentConfig.model_fields.items():
        if name in SECTIONS:
            for key in info.annotation.model_fields:
                sections[key] = name
        else:
            sections[name] = TOP_LEVEL
    return sections


FIELD_SECTIONS = _field_sections()


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    if raw == "" or raw.lower() == "none":
        return None
    if key in TUPLE_FIELDS:
        try:
            return tuple(int(part) for part in raw.split(",") if part.strip())
        except ValueError:
            raise ConfigError(key, f"expected a comma-separated list of integers, got '{raw}'")
    return raw


def build_config(flat: dict[str, object]) -> ExperimentConfig:
    """Validate flat `key -> value` pairs into an ExperimentConfig."""
    nested: dict[str, dict] = {section: {} for section in SECTIONS}
    top: dict[str, object] = {}
    for key, value in flat.items():
        section = FIELD_SECTIONS.get(key)
        if section is None:
            raise ConfigError(key, "unknown key")
        if value is None and key not in ("scales", "segment_count"):
            raise ConfigError(key, "missing value")
        if section == TOP_LEVEL:
            top[key] = value
        else:
            nested[section][key] = value
    try:
        return ExperimentConfig(**top, **nested)
    except ValidationError as e:
        error = e.errors()[0]
        location = [str(part) for part in error["loc"] if str(part) not in SECTIONS]
        key = location[0] if location else ".".join(str(part) for part in error["loc"]) or "config"
        logging.error(f"Configuration rejected at '{key}': {error['msg']}")
        raise ConfigError(key, error["msg"])


def flatten_config(cfg: ExperimentConfig) -> dict[str, object]:
    flat = {}
    for name, value in cfg:
        if isinstance(value, BaseModel):
            flat.update(dict(value))
        else:
            flat[name] = value
    return flat


def update_config(cfg: ExperimentConfig, overrides: dict[str, object]) -> ExperimentConfig:
    """Apply flat overrides (None values are ignored) and re-validate."""
    flat = flatten_config(cfg)
    flat.update({key: value for key, value in overrides.items() if value is not None})
    return build_config(flat)


def load_config(path: str | Path | None = None) -> ExperimentConfig:
    if path is None:
        return ExperimentConfig()
    path = Path(path)
    if not path.is_file():
        raise ConfigError("config", f"file '{path}' not found")

    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ConfigError("config", f"file '{path}' is not UTF-8 text ({e.reason} at byte {e.start})")

    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#") and "=" not in stripped:
            raise ConfigError(f"line {number}", f"expected 'key = value', got '{stripped}'")

    values = dotenv_values(stream=io.StringIO(text), interpolate=False)
    flat = {key: _parse_value(key, raw or "") for key, raw in values.items()}
    cfg = build_config(flat)
    logging.info(f"Loaded configuration from {path} ({len(flat)} keys set)")
    return cfg


def format_value(value) -> str:
    if hasattr(value, "item") and not isinstance(value, Enum):
        value = value.item()
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, tuple):
        return ",".join(str(item) for item in value)
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def dump_config(cfg: ExperimentConfig) -> str:
    """Serialize every field in the `key = value` grammar accepted by load_config."""
    lines = []
    for name, value in cfg:
        if isinstance(value, BaseModel):
            continue
        lines.append(f"{name} = {format_value(value)}")
    for section in SECTIONS:
        lines.append("")
        lines.append(f"# {section}")
        for key, value in getattr(cfg, section):
            lines.append(f"{key} = {format_value(value)}")
    return "\n".join(lines) + "\n"
