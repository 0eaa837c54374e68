"""On-disk cache of kernel certificates and reports, keyed by run parameters and code version."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Optional

from . import __version__
from .braid import KernelCert, kernel

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    pass


def check_schema(data: dict) -> dict:
    v = data.get("schema_version")
    if v != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {v!r} (expected {SCHEMA_VERSION})")
    return data


def default_dir() -> Path:
    env = os.environ.get("BRAIDCOINV_CACHE")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "braidcoinv"


class Cache:
    def __init__(self, root: Optional[os.PathLike] = None, enabled: bool = True):
        env = os.environ.get("BRAIDCOINV_CACHE")
        self.root = Path(env) if env else Path(root) if root else default_dir()
        self.enabled = enabled
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key(e: int, n: int, degree: int, check: str, kappa: str = "-") -> dict:
        return {"e": e, "n": n, "degree": degree, "check": check, "version": __version__, "kappa": kappa}

    def _path(self, key: dict) -> Path:
        h = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()[:24]
        return self.root / f"{key['check']}-{h}.json"

    def get(self, key: dict) -> Optional[dict]:
        if not self.enabled:
            return None
        p = self._path(key)
        if not p.exists():
            return None
        try:
            data = check_schema(json.loads(p.read_text()))
        except (SchemaError, json.JSONDecodeError):
            return None
        if data.get("key") != key:
            return None
        return data["value"]

    def put(self, key: dict, value: dict) -> None:
        if not self.enabled:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        p = self._path(key)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(json.dumps({"schema_version": SCHEMA_VERSION, "key": key, "value": value}, sort_keys=True))
        tmp.replace(p)

    def kernel(self, module, degree: int) -> KernelCert:
        G = module.group
        key = self.key(G.e, G.n, degree, "kernel")
        data = self.get(key)
        if data is not None:
            self.hits += 1
            return KernelCert.from_json(data)
        self.misses += 1
        cert = kernel(module, degree)
        self.put(key, cert.to_json())
        return cert
