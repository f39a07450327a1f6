"""Test the betagap command line"""

import json
import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cli import build_parser, load_matrices, run, sweep_rows
from src.models.run_record import RunRecord
from src.utils.cache import EstimateCache, set_cache
from src.utils.errors import UsageError


def _record(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


class TestExactCommands:
    """Test the closed-form subcommands"""

    def test_gap_derivative(self, capsys):
        assert run(['exact', 'gap-deriv', '--beta', '1', '--n', '2']) == 0
        record = _record(capsys)
        assert record['command'] == 'exact gap-deriv'
        assert record['result']['mean'] == pytest.approx(-2 / math.sqrt(math.pi), rel=1e-12)
        assert record['result']['method'] == 'closed-form'
        assert record['seed'] is None

    def test_gap_derivative_general_beta(self, capsys):
        assert run(['exact', 'gap-deriv', '--beta', '1.5', '--n', '1']) == 0
        result = _record(capsys)['result']
        assert result['method'] == 'quadrature'
        assert result['mean'] == pytest.approx(-2 * math.sqrt(1.5 / (2 * math.pi)), rel=1e-6)

    def test_volume(self, capsys):
        assert run(['exact', 'volume', '--beta', '1', '--n', '2']) == 0
        result = _record(capsys)['result']
        assert result['mean'] == pytest.approx(math.sqrt(2), rel=1e-12)

    def test_euler(self, capsys):
        assert run(['exact', 'euler', '--k', '2', '--n', '7']) == 0
        assert _record(capsys)['result']['mean'] == pytest.approx(2.0)

    def test_unsupported_beta_is_a_usage_error(self, capsys):
        assert run(['exact', 'volume', '--beta', '3', '--n', '2']) == 2
        assert run(['exact', 'mellin', '--beta', '0.5', '--n', '2']) == 2
        assert capsys.readouterr().out == ''


class TestUsage:
    """Test argument handling and exit codes"""

    def test_missing_argument(self):
        assert run(['exact', 'gap-deriv', '--beta', '1']) == 2

    def test_unknown_command(self):
        assert run(['exact', 'nothing']) == 2

    def test_csv_only_for_sweeps(self):
        assert run(['exact', 'volume', '--n', '3', '--format', 'csv']) == 2

    def test_parser_raises_usage_error(self):
        with pytest.raises(UsageError):
            build_parser().parse_args(['mc', 'gap', '--n', '0', '--eps', '0.1'])

    def test_invalid_ensemble_flags(self, capsys):
        assert run(['mc', 'gap', '--beta', '-1', '--n', '2', '--eps', '0.1', '--trials', '10']) == 2
        assert run(['mc', 'gap', '--n', '2', '--eps', '0.1', '--trials', '10', '--seed', '-1']) == 2
        assert run(['quadrics', 'mc-betti', '--n', '3', '--trials', '10', '--seed', '-5']) == 2
        assert capsys.readouterr().out == ''

    def test_help_exits_cleanly(self, capsys):
        assert run(['--help']) == 0
        assert 'betagap' in capsys.readouterr().out

    def test_unwritable_output(self, tmp_path):
        target = tmp_path / 'missing' / 'out.json'
        assert run(['exact', 'volume', '--n', '3', '--out', str(target)]) == 1
        assert not target.exists()


class TestOutput:
    """Test result documents"""

    def test_out_writes_run_record(self, tmp_path, capsys):
        target = tmp_path / 'record.json'
        assert run(['quadrics', 'example-paper', '--out', str(target)]) == 0
        assert capsys.readouterr().out == ''
        record = RunRecord.model_validate_json(target.read_text())
        assert record.command == 'quadrics example-paper'
        assert record.result['mu'] == 3
        assert record.result['card'] == 6
        assert record.result['total_betti'] == 0
        assert record.result['table'] == [[0, 0, 0]] * 3

    def test_example_alias(self, capsys):
        assert run(['quadrics', 'example-conics']) == 0
        assert _record(capsys)['result']['mu'] == 3

    def test_sweep_csv(self, capsys):
        assert run(['sweep', '--quantity', 'gap-deriv', '--n-min', '1', '--n-max', '4']) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == 'n,exact,asymptotic,ratio'
        assert len(lines) == 5
        n, exact, _, _ = lines[2].split(',')
        assert n == '2'
        assert float(exact) == pytest.approx(-2 / math.sqrt(math.pi), rel=1e-12)

    def test_sweep_json(self, capsys):
        assert run(['sweep', '--quantity', 'volume', '--n-min', '1', '--n-max', '3', '--format', 'json']) == 0
        records = json.loads(capsys.readouterr().out)
        assert [r['params']['n'] for r in records] == [2, 3]

    def test_sweep_rows(self):
        rows = sweep_rows('mellin', 2, [1, 2, 3])
        assert rows[0]['exact'] == pytest.approx(math.log(0.25), rel=1e-12)
        assert all(row['ratio'] > 0 for row in rows)

    def test_bad_sweep_range(self):
        assert run(['sweep', '--quantity', 'volume', '--n-min', '5', '--n-max', '2']) == 2


class TestMonteCarloCommands:
    """Test seeded Monte Carlo subcommands"""

    def test_thread_count_does_not_change_results(self, capsys):
        payloads = []
        for threads in ('1', '4', '8'):
            argv = ['mc', 'gap', '--n', '3', '--eps', '0.2', '--trials', '20000', '--seed', '5',
                    '--threads', threads, '--no-cache']
            assert run(argv) == 0
            record = RunRecord.model_validate(_record(capsys))
            payloads.append(json.dumps(record.payload(), sort_keys=True))
        assert payloads[0] == payloads[1] == payloads[2]
        assert json.loads(payloads[0])['seed'] == 5

    def test_cache_key_follows_config(self, tmp_path, capsys):
        set_cache(EstimateCache(str(tmp_path / 'estimates'), enabled=True))
        override = tmp_path / 'wide.yaml'
        override.write_text('montecarlo:\n  grid_signal: 40.0\n')
        argv = ['mc', 'deriv0', '--beta', '1', '--n', '2', '--trials', '20000', '--seed', '3']

        assert run(argv) == 0
        default_grid = _record(capsys)['result']['extra']['eps_grid']
        assert run(argv + ['--config', str(override)]) == 0
        wide_grid = _record(capsys)['result']['extra']['eps_grid']
        assert wide_grid == pytest.approx([4 * eps for eps in default_grid])

        assert run(argv + ['--config', str(override), '--no-cache']) == 0
        assert _record(capsys)['result']['extra']['eps_grid'] == wide_grid

    def test_cache_hit_for_same_config(self, tmp_path, capsys):
        cache = EstimateCache(str(tmp_path / 'estimates'), enabled=True)
        set_cache(cache)
        argv = ['mc', 'gap', '--n', '2', '--eps', '0.3', '--trials', '5000', '--seed', '1']
        assert run(argv) == 0
        first = _record(capsys)['result']
        assert run(argv + ['--threads', '3']) == 0
        assert _record(capsys)['result'] == first
        assert cache.get_stats()['hits'] == 1

    def test_detcurve_roots_from_file(self, tmp_path, capsys):
        path = tmp_path / 'pencil.json'
        path.write_text(json.dumps([[[1, 0], [0, -1]], [[1, 0], [0, 1]]]))
        assert run(['detcurve', 'roots', '--matrices', str(path)]) == 0
        result = _record(capsys)['result']
        assert result['mean'] == 2
        assert result['roots'] == pytest.approx([-1.0, 1.0])

    def test_quadrics_betti(self, capsys):
        assert run(['quadrics', 'betti', '--n', '6', '--seed', '2', '--i', '0']) == 0
        result = _record(capsys)['result']
        assert set(result['betti']) == {'0'}


class TestLoadMatrices:
    """Test reading matrices from JSON"""

    def test_complex_pairs(self, tmp_path):
        path = tmp_path / 'm.json'
        path.write_text(json.dumps([[[[1, 0], [0, 1]], [[0, -1], [2, 0]]]]))
        (q,) = load_matrices(str(path), 2)
        assert q.entries[0, 1] == 1j
        assert q.entries[1, 0] == -1j

    def test_missing_file(self, tmp_path):
        with pytest.raises(UsageError):
            load_matrices(str(tmp_path / 'absent.json'), 1)

    def test_not_a_list(self, tmp_path):
        path = tmp_path / 'm.json'
        path.write_text('{"a": 1}')
        with pytest.raises(UsageError):
            load_matrices(str(path), 1)

    def test_wrong_count(self, tmp_path):
        path = tmp_path / 'm.json'
        path.write_text(json.dumps([[[1.0]]]))
        assert run(['quadrics', 'arcs', '--matrices', str(path)]) == 2


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
