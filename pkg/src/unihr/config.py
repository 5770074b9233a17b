"""Service configuration: declarative file plus environment overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping

import yaml

from .errors import ValidationError
from .workflow import WorkflowRules

ENV_PREFIX = "UNIHR_"


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    store_path: str = "unihr.db"
    warning_window_months: int = 3
    term_years: int = 5
    non_expiring_grades: tuple[str, ...] = ("professor emeritus",)
    committee_min_size: int = 3
    external_mode: str = "stub"  # "stub" routes external calls to in-process stubs
    ministry_url: str | None = None
    bibliography_url: str | None = None
    auth_tokens: dict[str, str] = field(default_factory=dict)  # token -> actor name

    def validated(self) -> "ServiceConfig":
        if self.warning_window_months < 1:
            raise ValidationError("warning_window_months must be at least 1")
        if self.term_years < 1:
            raise ValidationError("term_years must be at least 1")
        if self.committee_min_size < 1 or self.committee_min_size % 2 == 0:
            raise ValidationError("committee_min_size must be odd and at least 1")
        if self.external_mode not in ("stub", "http"):
            raise ValidationError(f"external_mode must be 'stub' or 'http': {self.external_mode!r}")
        if self.external_mode == "http" and not (self.ministry_url and self.bibliography_url):
            raise ValidationError("http external_mode requires ministry_url and bibliography_url")
        return self

    def workflow_rules(self) -> WorkflowRules:
        return WorkflowRules(
            committee_min_size=self.committee_min_size,
            term_years=self.term_years,
            non_expiring_grades=frozenset(self.non_expiring_grades),
        )


_FILE_KEYS = {
    "host": str,
    "port": int,
    "store_path": str,
    "warning_window_months": int,
    "term_years": int,
    "committee_min_size": int,
    "external_mode": str,
    "ministry_url": str,
    "bibliography_url": str,
}


def _from_mapping(data: Mapping[str, Any]) -> ServiceConfig:
    kwargs: dict[str, Any] = {}
    for key, cast in _FILE_KEYS.items():
        if key in data and data[key] is not None:
            try:
                kwargs[key] = cast(data[key])
            except (TypeError, ValueError):
                raise ValidationError(f"config key {key!r} has invalid value {data[key]!r}") from None
    if "non_expiring_grades" in data:
        value = data["non_expiring_grades"]
        if not isinstance(value, (list, tuple)) or not all(isinstance(v, str) for v in value):
            raise ValidationError("non_expiring_grades must be a list of grade names")
        kwargs["non_expiring_grades"] = tuple(value)
    if "auth_tokens" in data:
        tokens = data["auth_tokens"]
        if not isinstance(tokens, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in tokens.items()
        ):
            raise ValidationError("auth_tokens must map token strings to actor names")
        kwargs["auth_tokens"] = dict(tokens)
    unknown = set(data) - set(_FILE_KEYS) - {"non_expiring_grades", "auth_tokens"}
    if unknown:
        raise ValidationError(f"unknown config keys: {sorted(unknown)}")
    return ServiceConfig(**kwargs)


def load_config(
    path: str | Path | None = None,
    env: Mapping[str, str] = os.environ,
) -> ServiceConfig:
    """Build the effective config: defaults, then file, then environment.

    Environment overrides use the UNIHR_ prefix with upper-cased keys,
    e.g. UNIHR_PORT=9000 or UNIHR_STORE_PATH=/var/lib/unihr.db.
    """
    if path is not None:
        raw = Path(path).read_text(encoding="utf-8")
        data = yaml.safe_load(raw) or {}
        if not isinstance(data, dict):
            raise ValidationError(f"config file must hold a mapping: {path}")
        config = _from_mapping(data)
    else:
        config = ServiceConfig()

    overrides: dict[str, Any] = {}
    for key, cast in _FILE_KEYS.items():
        value = env.get(ENV_PREFIX + key.upper())
        if value is not None:
            try:
                overrides[key] = cast(value)
            except ValueError:
                raise ValidationError(
                    f"environment override {ENV_PREFIX + key.upper()} has invalid value {value!r}"
                ) from None
    value = env.get(ENV_PREFIX + "NON_EXPIRING_GRADES")
    if value is not None:
        overrides["non_expiring_grades"] = tuple(
            name.strip() for name in value.split(",") if name.strip()
        )
    if overrides:
        config = replace(config, **overrides)
    return config.validated()
