"""Test errors, settings, the estimate cache, metrics and log formatting"""

import json
import logging
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.models.ensemble import EnsembleSpec
from src.models.estimate import Estimate
from src.utils.cache import EstimateCache
from src.utils.config import configure, default_threads, get_settings
from src.utils.errors import (
    ConvergenceError,
    DegenerateInputError,
    DegeneratePencilError,
    InputDomainError,
    OutputError,
    UnsupportedBetaError,
    UsageError,
    handle_errors,
)
from src.utils.logger import JSONFormatter, StructuredFormatter
from src.utils.metrics import RunMetrics


class TestErrors:
    """Test the exception hierarchy"""

    def test_to_dict(self):
        error = InputDomainError("n must be positive", details={'n': 0})
        assert error.to_dict() == {
            'success': False,
            'error': {'code': 'INPUT_DOMAIN', 'message': 'n must be positive', 'details': {'n': 0}},
        }

    def test_exit_codes(self):
        assert UsageError().exit_code == 2
        for error in (InputDomainError(), DegeneratePencilError(), ConvergenceError("cap"),
                      OutputError("disk"), UnsupportedBetaError(3), DegenerateInputError("singular")):
            assert error.exit_code == 1

    def test_unsupported_beta_details(self):
        error = UnsupportedBetaError(3.0, operation="volume")
        assert error.details == {'beta': 3.0, 'supported': [1, 2, 4]}
        assert 'volume' in error.message

    def test_degenerate_input_carries_trivial_answer(self):
        error = DegenerateInputError("already singular", distance=0.0, nearest="Q")
        assert error.distance == 0.0
        assert error.nearest == "Q"

    def test_handle_errors(self):
        @handle_errors
        def failing(kind):
            if kind == 'usage':
                raise UsageError("bad flag")
            if kind == 'value':
                raise ValueError("math domain error")
            return 0

        assert failing('usage') == 2
        assert failing('value') == 1
        assert failing('ok') == 0

    def test_validation_errors_are_usage_errors(self, caplog):
        @handle_errors
        def build(n):
            EnsembleSpec(beta=1.0, n=n)
            return 0

        with caplog.at_level(logging.ERROR):
            assert build(0) == 2
        assert 'USAGE' in caplog.text
        assert 'n' in caplog.text
        assert build(3) == 0


class TestSettings:
    """Test layered configuration"""

    def test_defaults(self):
        settings = get_settings()
        assert settings.quadrature.max_dimension == 3
        assert settings.detcurve.scan_points == 4096

    def test_override_file(self, tmp_path):
        path = tmp_path / 'override.yaml'
        path.write_text("montecarlo:\n  block_size: 123\n")
        settings = configure(str(path))
        assert settings.montecarlo.block_size == 123
        assert settings.detcurve.bisection_steps == 60

    def test_environment(self, monkeypatch):
        monkeypatch.setenv('BETAGAP_THREADS', '3')
        configure()
        assert default_threads() == 3
        assert default_threads(7) == 7

    def test_bad_environment(self, monkeypatch):
        monkeypatch.setenv('BETAGAP_THREADS', 'many')
        with pytest.raises(UsageError):
            configure()

    def test_missing_override(self, tmp_path):
        with pytest.raises(UsageError):
            configure(str(tmp_path / 'absent.yaml'))

    def test_invalid_values(self, tmp_path):
        path = tmp_path / 'bad.yaml'
        path.write_text("quadrature:\n  nodes: 1\n")
        with pytest.raises(UsageError):
            configure(str(path))


class TestEstimateCache:
    """Test the disk cache of Monte Carlo estimates"""

    def test_get_or_compute(self, tmp_path):
        cache = EstimateCache(str(tmp_path / 'cache'))
        calls = []

        def compute():
            calls.append(1)
            return Estimate(mean=0.5, stderr=0.01, trials=100, seed=1)

        params = {'n': 2, 'trials': 100, 'seed': 1}
        first = cache.get_or_compute('mc-gap', params, compute)
        second = cache.get_or_compute('mc-gap', params, compute)
        assert first == second
        assert len(calls) == 1
        assert cache.get_stats()['hits'] == 1

    def test_key_ignores_parameter_order(self):
        assert EstimateCache.make_key('op', {'a': 1, 'b': 2}) == EstimateCache.make_key('op', {'b': 2, 'a': 1})

    def test_disabled(self, tmp_path):
        cache = EstimateCache(str(tmp_path / 'cache'), enabled=False)
        cache.set('op', {}, Estimate(mean=1.0, stderr=0.0, trials=1, seed=0))
        assert cache.get('op', {}) is None
        assert not (tmp_path / 'cache').exists()

    def test_clear_one_operation(self, tmp_path):
        cache = EstimateCache(str(tmp_path / 'cache'))
        estimate = Estimate(mean=1.0, stderr=0.0, trials=1, seed=0)
        cache.set('a', {}, estimate)
        cache.set('b', {}, estimate)
        cache.clear('a')
        assert cache.get('a', {}) is None
        assert cache.get('b', {}) == estimate


class TestMetrics:
    """Test run metrics"""

    def test_timed(self):
        metrics = RunMetrics()
        with metrics.timed('deriv0', trials=10):
            pass
        metrics.record('deriv0', 0.5, 5)
        stats = metrics.get_stats()
        assert stats['calls']['deriv0'] == 2
        assert stats['trials']['deriv0'] == 15
        metrics.reset()
        assert metrics.get_stats()['calls'] == {}


class TestFormatters:
    """Test log formatting"""

    def _record(self):
        record = logging.LogRecord('src.test', logging.INFO, __file__, 10, 'ran %d trials', (5,), None)
        record.seed = 7
        return record

    def test_json(self):
        data = json.loads(JSONFormatter().format(self._record()))
        assert data['message'] == 'ran 5 trials'
        assert data['level'] == 'INFO'
        assert data['seed'] == 7

    def test_structured(self):
        line = StructuredFormatter().format(self._record())
        assert 'ran 5 trials' in line
        assert 'seed=7' in line


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
