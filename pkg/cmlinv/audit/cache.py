# Append-only artifact cache (JSON lines, one checksummed record per line)
import hashlib
import json
import logging
import os
import threading
from typing import Any, Callable, Dict, Iterator, Optional, Tuple

from ..errors import CacheCorrupted
from ..metrics import cache_hits_total

logger = logging.getLogger(__name__)


def compute_hash(entry: Dict[str, Any]) -> str:
    """sha256 of the canonical JSON encoding of a record body"""
    entry_str = json.dumps(entry, sort_keys=True, default=str)
    return hashlib.sha256(entry_str.encode()).hexdigest()


def _key_str(key: Any) -> str:
    return json.dumps(key, sort_keys=True, default=str)


class ArtifactCache:
    """Exact integer artifacts keyed by (kind, key).

    Only class polynomials, ideal-power generators and fundamental units go
    here; p-adic truncations never do.
    """

    def __init__(self, path: str):
        self.path = path
        self._lock = threading.Lock()
        self._entries: Dict[Tuple[str, str], Any] = {}
        self._loaded = False

    def _records(self) -> Iterator[Tuple[int, Dict[str, Any]]]:
        if not os.path.exists(self.path):
            return
        with open(self.path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError as e:
                    raise CacheCorrupted("unparseable cache record", path=self.path, line=lineno) from e
                yield lineno, rec

    def verify(self) -> int:
        """Re-check every checksum; returns the record count."""
        n = 0
        for lineno, rec in self._records():
            body = {k: rec.get(k) for k in ("kind", "key", "value")}
            if rec.get("sha256") != compute_hash(body):
                raise CacheCorrupted("checksum mismatch", path=self.path, line=lineno,
                                     kind=rec.get("kind"))
            n += 1
        return n

    def _load(self) -> None:
        if self._loaded:
            return
        self.verify()
        for _, rec in self._records():
            self._entries[(rec["kind"], _key_str(rec["key"]))] = rec["value"]
        self._loaded = True
        logger.debug("loaded %d cache records from %s", len(self._entries), self.path)

    def get(self, kind: str, key: Any) -> Optional[Any]:
        with self._lock:
            self._load()
            value = self._entries.get((kind, _key_str(key)))
        if value is not None:
            cache_hits_total.labels(kind=kind).inc()
        return value

    def put(self, kind: str, key: Any, value: Any) -> None:
        body = {"kind": kind, "key": key, "value": value}
        rec = dict(body, sha256=compute_hash(body))
        with self._lock:
            self._load()
            k = (kind, _key_str(key))
            if k in self._entries:
                return
            parent = os.path.dirname(self.path)
            if parent:
                os.makedirs(parent, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
            self._entries[k] = value

    def get_or_compute(self, kind: str, key: Any, fn: Callable[[], Any]) -> Any:
        value = self.get(kind, key)
        if value is None:
            value = fn()
            self.put(kind, key, value)
        return value

    def stats(self) -> Dict[str, int]:
        with self._lock:
            self._load()
            out: Dict[str, int] = {}
            for kind, _ in self._entries:
                out[kind] = out.get(kind, 0) + 1
        return out
