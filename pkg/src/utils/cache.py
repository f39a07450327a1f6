"""Disk cache for Monte Carlo estimates"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Optional

from diskcache import Cache as DiskCache

from src.models.estimate import Estimate
from src.utils.config import get_settings

logger = logging.getLogger(__name__)


class EstimateCache:
    """Stores Estimates keyed by (operation, parameters, trials, seed).

    Worker count is deliberately absent from the key: results do not depend on it.
    """

    def __init__(self, cache_dir: Optional[str] = None, enabled: bool = True):
        self.cache_dir = Path(cache_dir or get_settings().cache.directory)
        self.enabled = enabled
        self._cache: Optional[DiskCache] = None
        self._hits = 0
        self._misses = 0

    @property
    def store(self) -> DiskCache:
        if self._cache is None:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            self._cache = DiskCache(str(self.cache_dir))
        return self._cache

    @staticmethod
    def make_key(operation: str, params: dict) -> str:
        """Cache key from operation name and canonical JSON of its parameters"""
        params_str = json.dumps(params, sort_keys=True, default=str)
        hash_val = hashlib.md5(params_str.encode()).hexdigest()
        return f"{operation}:{hash_val}"

    def get(self, operation: str, params: dict) -> Optional[Estimate]:
        """Cached estimate, or None"""
        if not self.enabled:
            return None
        key = self.make_key(operation, params)
        try:
            data = self.store.get(key)
        except Exception as e:
            logger.warning(f"Cache read error for {key}: {e}")
            return None
        if data is None:
            self._misses += 1
            return None
        self._hits += 1
        logger.debug(f"Cache hit for {operation}")
        return Estimate.model_validate(data)

    def set(self, operation: str, params: dict, estimate: Estimate):
        if not self.enabled:
            return
        key = self.make_key(operation, params)
        try:
            self.store.set(key, estimate.model_dump(mode='json'))
        except Exception as e:
            logger.warning(f"Cache write error for {key}: {e}")

    def get_or_compute(self, operation: str, params: dict, compute) -> Estimate:
        """Return the cached estimate or run `compute()` and store its result"""
        cached = self.get(operation, params)
        if cached is not None:
            return cached
        estimate = compute()
        self.set(operation, params, estimate)
        return estimate

    def clear(self, operation: Optional[str] = None):
        """Clear entries of one operation or everything"""
        if operation:
            for key in list(self.store.iterkeys()):
                if key.startswith(f"{operation}:"):
                    self.store.delete(key)
        else:
            self.store.clear()

    def get_stats(self) -> dict:
        stats = {'hits': self._hits, 'misses': self._misses, 'enabled': self.enabled}
        if self._cache is not None:
            stats['entries'] = len(self._cache)
            stats['size_mb'] = self._cache.volume() / (1024 * 1024)
        return stats


_cache: Optional[EstimateCache] = None


def get_cache() -> EstimateCache:
    """Get the global cache instance"""
    global _cache
    if _cache is None:
        settings = get_settings()
        _cache = EstimateCache(settings.cache.directory, settings.cache.enabled)
    return _cache


def set_cache(cache: Optional[EstimateCache]):
    """Replace the global cache (CLI --no-cache, tests)"""
    global _cache
    _cache = cache
