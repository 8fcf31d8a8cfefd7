"""On-disk cache for expensive enumerations and search certificates.

Every entry is keyed by a content hash of (package version, kind,
parameters); the hash is also stored inside the file so that stale or
corrupted entries are detected and silently regenerated.
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path

from . import __version__

ENV_VAR = "MAXCOMPLEX_CACHE"
DEFAULT_DIR = ".maxcomplex-cache"
_HEADER = "maxcomplex-cache"


def cache_dir(explicit: str | None = None) -> Path:
    return Path(explicit or os.environ.get(ENV_VAR) or DEFAULT_DIR)


def content_hash(kind: str, params: str) -> str:
    return hashlib.sha256(f"{__version__}|{kind}|{params}".encode()).hexdigest()[:16]


class DiskCache:
    def __init__(self, root: "Path | str | None" = None, enabled: bool = True):
        self.root = cache_dir(str(root) if root is not None else None)
        self.enabled = enabled

    def _path(self, kind: str, params: str) -> Path:
        digest = content_hash(kind, params)
        return self.root / f"{kind}-{params}-{digest}.txt"

    def load(self, kind: str, params: str) -> str | None:
        if not self.enabled:
            return None
        path = self._path(kind, params)
        try:
            text = path.read_text()
        except OSError:
            return None
        header, _, body = text.partition("\n")
        parts = header.split()
        if parts[:1] != [_HEADER] or parts[1:] != [content_hash(kind, params)]:
            return None  # stale or foreign entry: force regeneration
        return body

    def store(self, kind: str, params: str, body: str) -> Path:
        path = self._path(kind, params)
        if self.enabled:
            self.root.mkdir(parents=True, exist_ok=True)
            path.write_text(f"{_HEADER} {content_hash(kind, params)}\n{body}")
        return path
