from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

from .enumerator import DEFAULT_BUDGET


def _int_env(name: str, default: int, *, minimum: int) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise RuntimeError(f"{name} must be an integer, got {raw!r}") from None
    if value < minimum:
        raise RuntimeError(f"{name} must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class WTreeConfig:
    budget: int
    audit_log_path: Optional[str]  # None disables the audit trail
    jobs: int
    seed: int

    @staticmethod
    def from_env() -> "WTreeConfig":
        load_dotenv()
        audit = os.getenv("WTREE_AUDIT_LOG", os.path.join("audit_logs", "audit.jsonl")).strip()
        return WTreeConfig(
            budget=_int_env("WTREE_BUDGET", DEFAULT_BUDGET, minimum=1),
            audit_log_path=audit or None,
            jobs=_int_env("WTREE_JOBS", os.cpu_count() or 1, minimum=1),
            seed=_int_env("WTREE_SEED", 0, minimum=0),
        )
