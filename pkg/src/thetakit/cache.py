"""On-disk JSON cache of closed forms.

The cache is a pure accelerator: every entry can be rebuilt from scratch,
a file with another version (or one that fails to parse) is ignored whole,
and writes go through a temporary file plus ``os.replace`` so concurrent
invocations never see a half-written cache.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable, Optional

CACHE_VERSION = 1
ENV_VAR = "THETAKIT_CACHE"

log = logging.getLogger(__name__)


def default_cache_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "thetakit" / "closed_forms.json"


def _read_entries(path: Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        return {}
    except (OSError, ValueError) as exc:
        log.warning("ignoring unreadable cache %s: %s", path, exc)
        return {}
    if not isinstance(data, dict) or data.get("version") != CACHE_VERSION:
        return {}
    entries = data.get("entries")
    return entries if isinstance(entries, dict) else {}


class ClosedFormCache:
    def __init__(self, path: Optional[Path]):
        self.path = path
        self._entries = _read_entries(path) if path is not None else {}
        self._dirty: dict = {}

    @property
    def enabled(self) -> bool:
        return self.path is not None

    def get_or_compute(self, key: str, compute: Callable[[], dict]) -> dict:
        if key in self._entries:
            return self._entries[key]
        value = compute()
        self._entries[key] = value
        if self.enabled:
            self._dirty[key] = value
        return value

    def flush(self) -> None:
        if not self.enabled or not self._dirty:
            return
        assert self.path is not None
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            # merge with whatever another process may have written meanwhile
            merged = _read_entries(self.path)
            merged.update(self._dirty)
            fd, tmp = tempfile.mkstemp(prefix=".cache-", suffix=".json", dir=self.path.parent)
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    json.dump({"version": CACHE_VERSION, "entries": merged}, fh, sort_keys=True)
                os.replace(tmp, self.path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        except OSError as exc:
            # losing a cache write costs time, never correctness
            log.warning("could not write cache %s: %s", self.path, exc)
            return
        self._dirty.clear()
