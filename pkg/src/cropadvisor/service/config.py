"""Service configuration: one JSON file, environment overrides for the
port and bundle path."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

ENV_BUNDLE = "CROPADVISOR_BUNDLE"
ENV_PORT = "CROPADVISOR_PORT"


@dataclass
class ServiceConfig:
    bundle_path: str
    host: str = "127.0.0.1"
    port: int = 8000
    max_years_ahead: int = 10
    train_seed: int = 0
    static_dir: str | None = None

    @classmethod
    def from_file(cls, path=None, **overrides) -> "ServiceConfig":
        doc = {}
        if path is not None:
            doc = json.loads(Path(path).read_text())
        doc.update({k: v for k, v in overrides.items() if v is not None})
        if ENV_BUNDLE in os.environ:
            doc["bundle_path"] = os.environ[ENV_BUNDLE]
        if ENV_PORT in os.environ:
            doc["port"] = int(os.environ[ENV_PORT])
        if "bundle_path" not in doc:
            raise ValueError(
                f"no bundle path: set it in the config file, pass it explicitly, "
                f"or export {ENV_BUNDLE}")
        return cls(**doc)
