"""Run metrics for Monte Carlo and quadrature work"""

from collections import defaultdict
from contextlib import contextmanager
from datetime import datetime, timezone
from threading import Lock
from time import perf_counter
from typing import Any, Dict


class RunMetrics:
    """Thread-safe in-memory counters of calls, trials and wall time per operation"""

    def __init__(self):
        self._lock = Lock()
        self._calls: Dict[str, int] = defaultdict(int)
        self._trials: Dict[str, int] = defaultdict(int)
        self._seconds: Dict[str, float] = defaultdict(float)
        self._started_at = datetime.now(timezone.utc)

    def record(self, operation: str, seconds: float, trials: int = 0):
        with self._lock:
            self._calls[operation] += 1
            self._trials[operation] += trials
            self._seconds[operation] += seconds

    @contextmanager
    def timed(self, operation: str, trials: int = 0):
        """Context manager recording the wall time of the enclosed block"""
        start = perf_counter()
        try:
            yield
        finally:
            self.record(operation, perf_counter() - start, trials)

    def get_stats(self) -> Dict[str, Any]:
        with self._lock:
            return {
                'started_at': self._started_at.isoformat(),
                'calls': dict(self._calls),
                'trials': dict(self._trials),
                'seconds': {k: round(v, 6) for k, v in self._seconds.items()},
            }

    def reset(self):
        with self._lock:
            self._calls.clear()
            self._trials.clear()
            self._seconds.clear()
            self._started_at = datetime.now(timezone.utc)


_metrics = RunMetrics()


def get_metrics_tracker() -> RunMetrics:
    """Get the global metrics tracker"""
    return _metrics
