"""Stage records collected from long computations."""

from __future__ import annotations

import threading
import time
from contextlib import contextmanager
from typing import Any, Iterator, Optional

from fuchsian_growth.types import StageRecord


class Tracer:
    """Collects StageRecords from hom series, the sieve, census fields and suites.

        tracer = Tracer()
        hom_series(sig, 20, tracer=tracer)
        for line in tracer.dump():
            print(line)
    """

    def __init__(self, enabled: bool = True) -> None:
        self._enabled = enabled
        self._lock = threading.Lock()
        self._log: list[StageRecord] = []

    def record(self, rec: StageRecord) -> None:
        if not self._enabled:
            return
        with self._lock:
            self._log.append(rec)

    @contextmanager
    def stage(self, name: str, n: Optional[int] = None, **details: Any) -> Iterator[dict[str, Any]]:
        """Time a block; the yielded dict may be filled with extra details."""
        extra: dict[str, Any] = dict(details)
        start = time.perf_counter()
        try:
            yield extra
        finally:
            self.record(StageRecord(stage=name, n=n, elapsed=time.perf_counter() - start, details=extra))

    def for_stage(self, name: str) -> list[StageRecord]:
        with self._lock:
            return [r for r in self._log if r.stage == name]

    def clear(self) -> None:
        with self._lock:
            self._log.clear()

    def dump(self) -> list[str]:
        with self._lock:
            snapshot = list(self._log)
        out = []
        for r in snapshot:
            at = r.stage if r.n is None else f"{r.stage}[n={r.n}]"
            extra = " ".join(f"{k}={v}" for k, v in sorted(r.details.items()))
            out.append(f"{at} {r.elapsed:.3f}s {extra}".rstrip())
        return out


NULL_TRACER = Tracer(enabled=False)
