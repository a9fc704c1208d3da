"""Versioned read-through cache for parsed documents and materialized views.

Entries are keyed by (tenant, subject, ...) tuples and guarded by a version
token: a lookup hits only when the cached token equals the caller's current
token, so a commit (which bumps the stored version) can never serve a stale
document even before the explicit invalidation lands. Concurrent cold loads
of one key are collapsed to a single loader call (single-flight). Bounded
LRU, default 1024 entries.
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass
from typing import Any, Callable, Hashable


@dataclass(frozen=True)
class CacheStats:
    hits: int
    misses: int
    invalidations: int
    entries: int


class _Flight:
    __slots__ = ("event", "value", "error", "token")

    def __init__(self):
        self.event = threading.Event()
        self.value: Any = None
        self.error: BaseException | None = None
        self.token: Hashable = None


class DocumentCache:
    """Thread-safe versioned LRU cache with single-flight cold loads."""

    def __init__(self, max_entries: int = 1024):
        if max_entries < 1:
            raise ValueError("max_entries must be >= 1")
        self.max_entries = max_entries
        self._lock = threading.Lock()
        self._entries: OrderedDict[tuple, tuple[Hashable, Any]] = OrderedDict()
        self._inflight: dict[tuple, _Flight] = {}
        self._hits = 0
        self._misses = 0
        self._invalidations = 0

    def get_or_load(
        self, key: tuple, token: Hashable, loader: Callable[[], Any]
    ) -> Any:
        """Return the cached value for (key, token) or load it exactly once.

        ``token`` is the caller's view of the current version; a cached entry
        with a different token is treated as absent. Loader errors propagate
        and are never cached.
        """
        while True:
            with self._lock:
                entry = self._entries.get(key)
                if entry is not None and entry[0] == token:
                    self._entries.move_to_end(key)
                    self._hits += 1
                    return entry[1]
                flight = self._inflight.get(key)
                if flight is None:
                    flight = _Flight()
                    flight.token = token
                    self._inflight[key] = flight
                    break
            flight.event.wait()
            if flight.error is not None:
                raise flight.error
            if flight.token == token:
                return flight.value
            # Flight served a different version; retry against the cache.

        try:
            value = loader()
        except BaseException as exc:
            with self._lock:
                self._inflight.pop(key, None)
            flight.error = exc
            flight.event.set()
            raise
        with self._lock:
            self._misses += 1
            self._entries[key] = (token, value)
            self._entries.move_to_end(key)
            while len(self._entries) > self.max_entries:
                self._entries.popitem(last=False)
            self._inflight.pop(key, None)
        flight.value = value
        flight.event.set()
        return value

    def invalidate(self, tenant: str, subject: str | None = None) -> None:
        """Drop this tenant's entries (optionally one subject); others untouched."""
        with self._lock:
            victims = [
                k
                for k in self._entries
                if k[0] == tenant and (subject is None or k[1] == subject)
            ]
            for k in victims:
                del self._entries[k]
            self._invalidations += 1

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()

    def stats(self) -> CacheStats:
        with self._lock:
            return CacheStats(
                hits=self._hits,
                misses=self._misses,
                invalidations=self._invalidations,
                entries=len(self._entries),
            )
