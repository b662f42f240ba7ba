"""Advisory on-disk cache for enumeration counts and reports.

Entries are JSON files tagged with the code version; entries written by a
different version are ignored. The cache only ever stores values that are
re-verifiable with --no-cache.
"""

from __future__ import annotations

import json
import os
import re
from pathlib import Path

CODE_VERSION = "0.1.0"
ENV_VAR = "ASYMLAB_CACHE"
DEFAULT_DIR = ".asymlab-cache"


class ResultCache:
    def __init__(self, directory: str | Path | None = None, enabled: bool = True):
        self.enabled = enabled
        if directory is None:
            directory = os.environ.get(ENV_VAR, DEFAULT_DIR)
        self.directory = Path(directory)

    def _path(self, key: str) -> Path:
        safe = re.sub(r"[^A-Za-z0-9._-]", "_", key)
        return self.directory / f"{safe}.json"

    def get(self, key: str):
        if not self.enabled:
            return None
        path = self._path(key)
        if not path.exists():
            return None
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return None
        if doc.get("version") != CODE_VERSION or doc.get("key") != key:
            return None
        return doc.get("value")

    def put(self, key: str, value) -> None:
        if not self.enabled:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        doc = {"version": CODE_VERSION, "key": key, "value": value}
        self._path(key).write_text(json.dumps(doc, separators=(",", ":")))
