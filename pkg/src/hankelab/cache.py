"""Append-only JSON-lines cache for computed determinants.

One entry per line, last writer wins on duplicate keys; crash-safe and
diffable.  Keys are (family, n, variant in {H, K, M, N}).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Optional

from .poly import Poly

TOOL_VERSION = "hankelab-0.1.0"

ENV_CACHE_PATH = "HANKELAB_CACHE"


@dataclass(frozen=True)
class CacheEntry:
    family: str
    n: int
    variant: str
    value: Poly
    version: str = TOOL_VERSION

    @property
    def key(self) -> tuple[str, int, str]:
        return (self.family, self.n, self.variant)

    def to_json(self) -> str:
        return json.dumps(
            {
                "family": self.family,
                "n": self.n,
                "variant": self.variant,
                "value": self.value.to_json(),
                "version": self.version,
            },
            sort_keys=True,
        )

    @staticmethod
    def from_json(line: str) -> "CacheEntry":
        data = json.loads(line)
        return CacheEntry(
            family=data["family"],
            n=int(data["n"]),
            variant=data["variant"],
            value=Poly.from_json(data["value"]),
            version=data.get("version", "unknown"),
        )


class DetCache:
    """Read-through, append-on-miss determinant cache."""

    def __init__(self, path: str):
        self.path = path
        self.entries: dict[tuple[str, int, str], CacheEntry] = {}
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    entry = CacheEntry.from_json(line)
                    self.entries[entry.key] = entry

    def get(self, family: str, n: int, variant: str) -> Optional[Poly]:
        entry = self.entries.get((family, n, variant))
        return entry.value if entry is not None else None

    def put(self, family: str, n: int, variant: str, value: Poly) -> None:
        entry = CacheEntry(family, n, variant, value)
        self.entries[entry.key] = entry
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(entry.to_json() + "\n")


def cache_from_config(path: Optional[str]) -> Optional[DetCache]:
    """Explicit path wins; otherwise the environment override, else None."""
    if path is None:
        path = os.environ.get(ENV_CACHE_PATH)
    return DetCache(path) if path else None
