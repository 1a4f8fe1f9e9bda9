"""Write-once character cache with a line-based on-disk format.

File format (UTF-8, one entry per line)::

    # fuchsian-growth character cache v1
    <parts>|<cycles>|<value>

``parts`` and ``cycles`` are comma-separated descending integers (empty for
the empty partition); ``value`` is a signed decimal integer. Lines are
written sorted by key, so a saved cache is byte-stable.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional, Union

from fuchsian_growth.errors import ConsistencyError, TableFormatError

logger = logging.getLogger(__name__)

CACHE_HEADER = "# fuchsian-growth character cache v1"

CacheKey = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class CacheStats:
    entries: int
    hits: int
    misses: int

    @property
    def hit_rate(self) -> float:
        total = self.hits + self.misses
        return self.hits / total if total else 0.0


class CharacterCache:
    """(partition, remaining cycle multiset) → χ value.

    Lookups, inserts and the hit counters share one lock. Entries are
    write-once: a second insert of the same key must carry the same value.
    """

    def __init__(self) -> None:
        self._store: dict[CacheKey, int] = {}
        self._lock = threading.Lock()
        self._hits = 0
        self._misses = 0

    @staticmethod
    def key(parts: tuple[int, ...], cycles: tuple[int, ...]) -> CacheKey:
        return (parts, tuple(sorted(cycles, reverse=True)))

    def get(self, key: CacheKey) -> Optional[int]:
        with self._lock:
            value = self._store.get(key)
            if value is None:
                self._misses += 1
            else:
                self._hits += 1
        return value

    def put(self, key: CacheKey, value: int) -> int:
        with self._lock:
            existing = self._store.get(key)
            if existing is None:
                self._store[key] = value
                return value
        if existing != value:
            raise ConsistencyError(f"cache entry {key} rewritten: {existing} vs {value}", witness=key)
        return existing

    def __len__(self) -> int:
        return len(self._store)

    def __contains__(self, key: object) -> bool:
        return key in self._store

    def items(self) -> Iterator[tuple[CacheKey, int]]:
        with self._lock:
            snapshot = sorted(self._store.items())
        return iter(snapshot)

    def stats(self) -> CacheStats:
        with self._lock:
            return CacheStats(entries=len(self._store), hits=self._hits, misses=self._misses)

    def clear(self) -> None:
        with self._lock:
            self._store.clear()
            self._hits = 0
            self._misses = 0

    # ---------- Persistence ----------

    def save(self, path: Union[str, Path]) -> int:
        path = Path(path)
        lines = [CACHE_HEADER]
        for (parts, cycles), value in self.items():
            lines.append(f"{_join(parts)}|{_join(cycles)}|{value}")
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        logger.debug("saved %d cache entries to %s", len(lines) - 1, path)
        return len(lines) - 1

    @classmethod
    def load(cls, path: Union[str, Path]) -> CharacterCache:
        cache = cls()
        cache.merge_file(path)
        return cache

    def merge_file(self, path: Union[str, Path]) -> int:
        path = Path(path)
        text = path.read_text(encoding="utf-8").splitlines()
        if not text or text[0].strip() != CACHE_HEADER:
            raise TableFormatError(f"missing header {CACHE_HEADER!r}", row=1)
        count = 0
        for row, line in enumerate(text[1:], start=2):
            if not line.strip():
                continue
            fields = line.split("|")
            if len(fields) != 3:
                raise TableFormatError("expected parts|cycles|value", row=row)
            parts = _split(fields[0], row, "parts")
            cycles = _split(fields[1], row, "cycles")
            if sum(parts) != sum(cycles):
                raise TableFormatError("parts and cycles have different sizes", row=row)
            try:
                value = int(fields[2])
            except ValueError:
                raise TableFormatError(f"value {fields[2]!r} is not an integer", row=row, column="value") from None
            self.put(self.key(parts, cycles), value)
            count += 1
        logger.debug("loaded %d cache entries from %s", count, path)
        return count


def _join(xs: tuple[int, ...]) -> str:
    return ",".join(str(x) for x in xs)


def _split(text: str, row: int, column: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise TableFormatError(f"{text!r} is not a comma-separated integer list", row=row, column=column) from None
    if any(v < 1 for v in values) or list(values) != sorted(values, reverse=True):
        raise TableFormatError(f"{text!r} is not a partition", row=row, column=column)
    return values
