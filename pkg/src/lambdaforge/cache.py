"""On-disk cache for computed universal polynomials.

Entries are JSON files keyed like ``Pnm/2/2``; each carries a content
checksum so that stale or corrupt files are detected, ignored and
recomputed rather than trusted.  Writes go to a temporary file first and
are renamed into place, so concurrent readers never observe a partial
entry.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

ENV_VAR = "LAMBDA_FORGE_CACHE"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "lambda-forge"


def _checksum(payload: dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class PolyCache:
    """Single-writer/multi-reader polynomial store."""

    def __init__(self, root: Path | str | None = None):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.corrupt_seen: list[str] = []

    def _path(self, key: str) -> Path:
        safe = key.strip("/")
        if not safe or ".." in safe.split("/"):
            raise ValueError(f"bad cache key {key!r}")
        return self.root / (safe + ".json")

    def load(self, key: str) -> dict | None:
        """The stored payload, or None when absent, stale or corrupt."""
        path = self._path(key)
        try:
            wrapped = json.loads(path.read_text("utf-8"))
            payload = wrapped["poly"]
            if wrapped.get("key") != key or wrapped.get("sha256") != _checksum(payload):
                raise ValueError("checksum mismatch")
            return payload
        except FileNotFoundError:
            return None
        except (ValueError, KeyError, TypeError, json.JSONDecodeError):
            self.corrupt_seen.append(key)
            return None

    def store(self, key: str, payload: dict) -> None:
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        wrapped = {"key": key, "sha256": _checksum(payload), "poly": payload}
        data = json.dumps(wrapped, sort_keys=True, separators=(",", ":"))
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(data)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise

    def clear(self) -> int:
        """Remove all entries; returns the number of files deleted."""
        removed = 0
        if not self.root.exists():
            return 0
        for path in sorted(self.root.rglob("*.json")):
            path.unlink()
            removed += 1
        return removed

    def stats(self) -> dict:
        files = sorted(self.root.rglob("*.json")) if self.root.exists() else []
        return {
            "path": str(self.root),
            "entries": len(files),
            "bytes": sum(p.stat().st_size for p in files),
        }
