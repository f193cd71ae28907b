"""Content-addressed, versioned on-disk cache for computed tables."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

FORMAT_VERSION = 1
CACHE_ENV = "CTAU_CACHE_DIR"

log = logging.getLogger(__name__)


class CacheError(RuntimeError):
    pass


def cache_dir(directory: str | os.PathLike | None = None) -> Path:
    if directory is not None:
        return Path(directory)
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "ctau"


def canonical(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


def cache_key(spec: dict, version: int = FORMAT_VERSION) -> str:
    """Hash of the computation spec (kind, bounds, conventions) and the format version."""
    return hashlib.sha256(canonical({"format_version": version, "spec": spec})).hexdigest()


@dataclass(frozen=True)
class CacheRecord:
    key: str
    payload: object
    format_version: int = FORMAT_VERSION

    def to_bytes(self) -> bytes:
        body = canonical(self.payload)
        return canonical(
            {
                "format_version": self.format_version,
                "key": self.key,
                "payload": self.payload,
                "payload_sha256": hashlib.sha256(body).hexdigest(),
            }
        )


def _path(key: str, directory) -> Path:
    return cache_dir(directory) / f"{key}.json"


def cache_store(record: CacheRecord, directory=None) -> Path:
    """Write atomically; an existing file under the same key must be byte-identical."""
    path = _path(record.key, directory)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = record.to_bytes()
    if path.exists():
        if path.read_bytes() != data:
            raise CacheError(f"key collision with different payload: {record.key}")
        return path
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    with os.fdopen(fd, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)
    return path


def cache_load(key: str, directory=None, version: int = FORMAT_VERSION) -> CacheRecord | None:
    """The stored record, None when absent or stale; corrupt payloads are refused."""
    path = _path(key, directory)
    if not path.exists():
        return None
    try:
        doc = json.loads(path.read_bytes())
    except json.JSONDecodeError as exc:
        raise CacheError(f"corrupt cache file {path}: {exc}") from exc
    if doc.get("format_version") != version:
        log.warning("cache entry %s has format version %s, expected %s; ignoring it", key, doc.get("format_version"), version)
        return None
    if doc.get("key") != key:
        raise CacheError(f"cache file {path} is stored under the wrong key")
    digest = hashlib.sha256(canonical(doc["payload"])).hexdigest()
    if digest != doc.get("payload_sha256"):
        raise CacheError(f"cache payload hash mismatch in {path}")
    return CacheRecord(key, doc["payload"], version)


def cached(spec: dict, compute, directory=None, enabled: bool = True):
    """Load the payload for ``spec`` or compute and store it."""
    if not enabled:
        return compute()
    key = cache_key(spec)
    hit = cache_load(key, directory)
    if hit is not None:
        return hit.payload
    payload = compute()
    cache_store(CacheRecord(key, payload), directory)
    return payload
