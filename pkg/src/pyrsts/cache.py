"""On-disk cache for Langford sequences and ingredient difference families.

Layout of the cache directory::

    langford.json              {"k,a,b": [s_1, ..., s_a], ...}
    ingredients/<key>.json     difference family JSON

Everything stored here is re-validated on load, so a stale or corrupted
entry costs a recomputation and nothing else.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from pathlib import Path

log = logging.getLogger(__name__)

ENV_VAR = "PYRSTS_CACHE"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "pyrsts"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f".{path.name}.{os.getpid()}.{threading.get_ident()}.tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


class Cache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self._lock = threading.Lock()
        self._langford: dict[str, list[int]] | None = None

    def __repr__(self) -> str:
        return f"Cache({str(self.root)!r})"

    # -- Langford ------------------------------------------------------------

    def _load_langford(self) -> dict[str, list[int]]:
        if self._langford is None:
            path = self.root / "langford.json"
            try:
                self._langford = json.loads(path.read_text())
            except FileNotFoundError:
                self._langford = {}
            except (OSError, ValueError) as exc:
                log.warning("ignoring unreadable %s: %s", path, exc)
                self._langford = {}
        return self._langford

    def get_langford(self, k: int, a: int, b: int) -> list[int] | None:
        with self._lock:
            return self._load_langford().get(f"{k},{a},{b}")

    def put_langford(self, k: int, a: int, b: int, s: list[int]) -> None:
        with self._lock:
            data = self._load_langford()
            data[f"{k},{a},{b}"] = list(s)
            _atomic_write(self.root / "langford.json", json.dumps(data, sort_keys=True))

    # -- ingredient families ---------------------------------------------------

    def _df_path(self, key: str) -> Path:
        return self.root / "ingredients" / f"{key}.json"

    def get_df(self, key: str) -> dict | None:
        with self._lock:
            try:
                return json.loads(self._df_path(key).read_text())
            except FileNotFoundError:
                return None
            except (OSError, ValueError) as exc:
                log.warning("ignoring unreadable cache entry %s: %s", key, exc)
                return None

    def put_df(self, key: str, data: dict) -> None:
        with self._lock:
            _atomic_write(self._df_path(key), json.dumps(data, sort_keys=True))


_active: Cache | None = None
_active_lock = threading.Lock()


def set_store(store: Cache | None) -> None:
    """Install the process-wide cache (None disables persistence)."""
    global _active
    with _active_lock:
        _active = store


def get_store() -> Cache | None:
    with _active_lock:
        return _active
