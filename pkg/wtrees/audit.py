from __future__ import annotations

import json
import os
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Optional

from .core.weights import weight_document


def _json_default(value: Any) -> Any:
    if isinstance(value, Fraction):
        return weight_document(value)
    if hasattr(value, "model_dump"):
        return value.model_dump()
    return str(value)


@dataclass(frozen=True)
class AuditLogger:
    path: Optional[str]
    session_id: str

    def log(self, event: str, payload: dict[str, Any]) -> None:
        if not self.path:
            return
        os.makedirs(os.path.dirname(self.path) or ".", exist_ok=True)
        record = {
            "ts": datetime.now(timezone.utc).isoformat(),
            "session_id": self.session_id,
            "event": event,
            "payload": payload,
        }
        with open(self.path, "a", encoding="utf-8") as f:
            f.write(json.dumps(record, ensure_ascii=False, default=_json_default) + "\n")
