"""
betagap command line: every module of the lab as a subcommand.

Single runs print one RunRecord as JSON; sweeps print CSV rows
(n, exact, asymptotic, ratio) or a JSON array of records.
"""

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.detcurve import (
    PolynomialBasis,
    TrigonometricBasis,
    alpha1,
    alpha_ratio_mc,
    find_roots,
)
from src.ensembles.rng import RngStream
from src.ensembles.samplers import sample_matrices
from src.exact import (
    euler_char_expectation,
    exact_constants,
    gap_derivative_asymptotic,
    gap_derivative_zero,
    mellin_plus,
    mellin_plus_asymptotic,
    sigma_volume,
    sigma_volume_forms,
    volume_ratio_asymptotic,
)
from src.exact.logvalue import LogValue
from src.linalg.hermitian import HermitianMatrix
from src.models.ensemble import MATRIX_BETAS, EnsembleSpec
from src.models.run_record import RunRecord
from src.montecarlo import (
    GapCurve,
    cone_gap_probability,
    derivative_at_zero,
    expected_abs_det_pow,
    gap_derivative_quadrature,
    gap_probability,
)
from src.quadrics import (
    betti_bound,
    euler_bound,
    example_pencil,
    expected_betti_mc,
    expected_mu_mc,
    pencil_arcs,
    small_betti_value,
    table_E_k2,
    total_betti,
)
from src.utils.cache import EstimateCache, get_cache, set_cache
from src.utils.config import configure, get_settings
from src.utils.errors import OutputError, UsageError, handle_errors
from src.utils.logger import setup_logging
from src.utils.metrics import get_metrics_tracker

logger = logging.getLogger(__name__)

# handler(args) -> (result, seed or None)
Handler = Callable[[argparse.Namespace], Tuple[Any, Optional[int]]]


def _exact_payload(value: LogValue, **extra) -> Dict[str, Any]:
    return {'mean': value.value, 'log_abs': value.log_abs, 'sign': value.sign, **extra}


def _spec(args) -> EnsembleSpec:
    return EnsembleSpec(beta=args.beta, n=args.n, seed=args.seed)


def _numerical_policy() -> Dict[str, Any]:
    """Every setting an estimate can depend on; thread count and cache location excluded"""
    settings = get_settings()
    return {
        'linalg': settings.linalg.model_dump(mode='json'),
        'montecarlo': settings.montecarlo.model_dump(mode='json', exclude={'threads'}),
        'quadrature': settings.quadrature.model_dump(mode='json'),
        'detcurve': settings.detcurve.model_dump(mode='json'),
        'quadrics': settings.quadrics.model_dump(mode='json'),
    }


def _cached(command: str, params: Dict[str, Any], compute):
    """Run a Monte Carlo estimate through the disk cache; threads never enter the key"""
    key = {**params, 'policy': _numerical_policy()}
    estimate = get_cache().get_or_compute(command, key, compute)
    return estimate.model_dump(mode='json'), params.get('seed')


def _closed_beta(beta: float) -> int:
    if beta not in MATRIX_BETAS:
        raise UsageError(f"closed forms need beta in {list(MATRIX_BETAS)}, got {beta}",
                         {'beta': beta, 'supported': list(MATRIX_BETAS)})
    return int(beta)


def _check_ensemble_args(args):
    """beta, n and seed flags must describe a valid EnsembleSpec"""
    given = {name: getattr(args, name) for name in ('beta', 'n', 'seed')
             if getattr(args, name, None) is not None}
    if given:
        EnsembleSpec(**{'beta': 1.0, 'n': 1, **given})


# -- exact ---------------------------------------------------------------------

def _exact_constants(args):
    return exact_constants(_closed_beta(args.beta), args.n).to_dict(), None


def _exact_mellin(args):
    return _exact_payload(mellin_plus(_closed_beta(args.beta), args.n), m=args.n), None


def _exact_gap_deriv(args):
    if args.beta in MATRIX_BETAS:
        return _exact_payload(gap_derivative_zero(int(args.beta), args.n), method='closed-form'), None
    return _exact_payload(gap_derivative_quadrature(args.beta, args.n), method='quadrature'), None


def _exact_volume(args):
    beta = _closed_beta(args.beta)
    volume = sigma_volume(beta, args.n)
    forms = sigma_volume_forms(beta, args.n)
    return {
        'absolute': volume.absolute.to_dict(),
        'ratio_to_sphere': volume.ratio_to_sphere.to_dict(),
        'mean': volume.ratio_to_sphere.value,
        'cone_form_drift': forms.cone.relative_difference(forms.theorem),
    }, None


def _exact_euler(args):
    return {'mean': euler_char_expectation(args.k, args.n), 'k': args.k, 'n': args.n}, None


# -- Monte Carlo -----------------------------------------------------------------

def _mc_gap(args):
    params = {'beta': args.beta, 'n': args.n, 'eps': args.eps, 'trials': args.trials, 'seed': args.seed}
    return _cached('mc-gap', params,
                   lambda: gap_probability(_spec(args), args.eps, args.trials, args.threads))


def _mc_cone_gap(args):
    params = {'beta': args.beta, 'n': args.n, 'eps': args.eps, 'trials': args.trials, 'seed': args.seed}
    return _cached('mc-cone-gap', params,
                   lambda: cone_gap_probability(_spec(args), args.eps, args.trials, args.threads))


def _mc_deriv0(args):
    params = {
        'beta': args.beta, 'n': args.n, 'trials': args.trials, 'seed': args.seed,
        'curve': args.curve, 'eps_grid': args.eps_grid,
    }
    return _cached('mc-deriv0', params,
                   lambda: derivative_at_zero(GapCurve(args.curve), _spec(args), args.eps_grid,
                                              args.trials, args.threads))


def _mc_absdet(args):
    power = args.power if args.power is not None else args.beta
    params = {'beta': args.beta, 'n': args.n, 'power': power, 'trials': args.trials, 'seed': args.seed}
    return _cached('mc-absdet', params,
                   lambda: expected_abs_det_pow(_spec(args), power, args.trials, args.threads))


# -- matrix inputs ---------------------------------------------------------------

def load_matrices(path: str, beta: int) -> List[HermitianMatrix]:
    """JSON list of matrices; complex entries as [re, im] pairs, beta=4 as the 2n x 2n embedding"""
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except OSError as e:
        raise UsageError(f"cannot read matrices from {path}: {e}")
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}")
    if not isinstance(data, list) or not data:
        raise UsageError(f"{path} must hold a non-empty list of matrices")
    matrices = []
    for item in data:
        arr = np.asarray(item, dtype=float)
        if arr.ndim == 3 and arr.shape[-1] == 2:
            arr = arr[..., 0] + 1j * arr[..., 1]
        matrices.append(HermitianMatrix.from_upper(arr, beta))
    return matrices


def _matrices(args, count: int) -> List[HermitianMatrix]:
    beta = _closed_beta(args.beta)
    if args.matrices:
        matrices = load_matrices(args.matrices, beta)
        if len(matrices) != count:
            raise UsageError(f"expected {count} matrices, {args.matrices} holds {len(matrices)}")
        return matrices
    stack = sample_matrices(EnsembleSpec(beta=beta, n=args.n, seed=args.seed), RngStream(args.seed), count)
    return [HermitianMatrix(beta, args.n, np.array(entries)) for entries in stack]


# -- detcurve --------------------------------------------------------------------

def _basis(args):
    if args.basis == 'trig':
        return TrigonometricBasis(args.k)
    if args.basis == 'linear':
        return PolynomialBasis([[1.0, 0.0], [0.0, 1.0]])
    return PolynomialBasis.monomials(args.k)


def _detcurve_alpha1(args):
    basis = _basis(args)
    return {'mean': alpha1(basis), 'basis': args.basis, 'k': basis.k}, None


def _detcurve_roots(args):
    basis = _basis(args)
    scan = find_roots(basis, _matrices(args, basis.k + 1), args.method)
    result = {
        'mean': scan.count,
        'roots': scan.roots.tolist(),
        'tangencies': scan.tangencies,
        'method': scan.method.value,
    }
    return result, None if args.matrices else args.seed


def _detcurve_ratio(args):
    basis = _basis(args)
    params = {
        'basis': args.basis, 'k': basis.k, 'beta': args.beta, 'n': args.n,
        'trials': args.trials, 'seed': args.seed,
    }
    return _cached('detcurve-ratio', params,
                   lambda: alpha_ratio_mc(basis, _spec(args), args.trials, args.threads))


# -- quadrics --------------------------------------------------------------------

def _arcs_payload(arcs) -> Dict[str, Any]:
    return {
        'singular_angles': arcs.singular_angles.tolist(),
        'arc_index': arcs.arc_index.tolist(),
        'mu': arcs.mu,
        'nu': arcs.nu,
        'card': arcs.card,
        'merged': arcs.merged,
    }


def _table_payload(arcs) -> Dict[str, Any]:
    table = table_E_k2(arcs)
    return {
        **_arcs_payload(arcs),
        'table': table.to_list(),
        'betti': [betti_bound(table, i) for i in range(table.n)],
        'total_betti': total_betti(table),
        'euler_bound': euler_bound(table),
    }


def _pencil(args):
    q1, q2 = _matrices(args, 2)
    return pencil_arcs(q1, q2)


def _quadrics_arcs(args):
    return _arcs_payload(_pencil(args)), None if args.matrices else args.seed


def _quadrics_table(args):
    return _table_payload(_pencil(args)), None if args.matrices else args.seed


def _quadrics_betti(args):
    arcs = _pencil(args)
    table = table_E_k2(arcs)
    indices = [args.i] if args.i is not None else list(range(table.n))
    result = {
        'betti': {str(i): betti_bound(table, i) for i in indices},
        'certified': {str(i): small_betti_value(arcs.mu, 2, arcs.n, i) for i in indices},
        'total_betti': total_betti(table),
        'mu': arcs.mu,
    }
    return result, None if args.matrices else args.seed


def _quadrics_mc_betti(args):
    params = {'n': args.n, 'trials': args.trials, 'seed': args.seed}
    return _cached('quadrics-mc-betti', params,
                   lambda: expected_betti_mc(args.n, args.trials, args.seed, args.threads))


def _quadrics_mc_mu(args):
    params = {'k': args.k, 'n': args.n, 'trials': args.trials, 'seed': args.seed}
    return _cached('quadrics-mc-mu', params,
                   lambda: expected_mu_mc(args.k, args.n, args.trials, args.seed, args.threads))


def _quadrics_example(args):
    q1, q2 = example_pencil()
    return _table_payload(pencil_arcs(q1, q2)), None


# -- sweeps ----------------------------------------------------------------------

def sweep_rows(quantity: str, beta: int, ns: Sequence[int]) -> List[Dict[str, float]]:
    """
    Rows (n, exact, asymptotic, ratio).

    The mellin sweep reports natural logarithms of M+_n, since the moments
    outgrow floating point quickly.
    """
    rows = []
    for n in ns:
        if quantity == 'gap-deriv':
            exact = gap_derivative_zero(beta, n).value
            asymptotic = gap_derivative_asymptotic(n)
            ratio = exact / asymptotic
        elif quantity == 'volume':
            if n < 2:
                continue
            exact = sigma_volume(beta, n).ratio_to_sphere.value
            asymptotic = volume_ratio_asymptotic(n)
            ratio = exact / asymptotic
        else:
            value, approx = mellin_plus(beta, n), mellin_plus_asymptotic(beta, n)
            exact, asymptotic = value.log_abs, approx.log_abs
            ratio = math.exp(exact - asymptotic)
        rows.append({'n': n, 'exact': exact, 'asymptotic': asymptotic, 'ratio': ratio})
    return rows


# -- parser ----------------------------------------------------------------------

COMMANDS: Dict[Tuple[str, str], Handler] = {
    ('exact', 'constants'): _exact_constants,
    ('exact', 'mellin'): _exact_mellin,
    ('exact', 'gap-deriv'): _exact_gap_deriv,
    ('exact', 'volume'): _exact_volume,
    ('exact', 'euler'): _exact_euler,
    ('mc', 'gap'): _mc_gap,
    ('mc', 'cone-gap'): _mc_cone_gap,
    ('mc', 'deriv0'): _mc_deriv0,
    ('mc', 'absdet'): _mc_absdet,
    ('detcurve', 'alpha1'): _detcurve_alpha1,
    ('detcurve', 'roots'): _detcurve_roots,
    ('detcurve', 'ratio'): _detcurve_ratio,
    ('quadrics', 'arcs'): _quadrics_arcs,
    ('quadrics', 'table'): _quadrics_table,
    ('quadrics', 'betti'): _quadrics_betti,
    ('quadrics', 'mc-betti'): _quadrics_mc_betti,
    ('quadrics', 'mc-mu'): _quadrics_mc_mu,
    ('quadrics', 'example-paper'): _quadrics_example,
    ('quadrics', 'example-conics'): _quadrics_example,
}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting"""

    def error(self, message):
        raise UsageError(message)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--threads', type=_positive_int, default=None,
                        help='Worker threads (default: BETAGAP_THREADS or all cores)')
    common.add_argument('--out', default=None, help='Write the result here instead of stdout')
    common.add_argument('--format', choices=['json', 'csv'], default=None, dest='output_format')
    common.add_argument('--no-cache', action='store_true', help='Bypass the estimate cache')
    common.add_argument('--log-level', default=None)
    common.add_argument('--log-json', action='store_true')
    common.add_argument('--config', default=None, help='YAML file merged over config/defaults.yaml')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(prog='betagap', description='Gap probabilities, singular loci and quadric topology '
                                                 'for Gaussian beta-ensembles')
    groups = parser.add_subparsers(dest='group', required=True, parser_class=_Parser)

    def leaf(sub, name, help_text, *flags, aliases=()):
        p = sub.add_parser(name, help=help_text, parents=[common], aliases=list(aliases))
        for flag in flags:
            flag(p)
        return p

    def beta(p):
        p.add_argument('--beta', type=float, default=1.0)

    def n(p):
        p.add_argument('--n', type=_positive_int, required=True)

    def k(p, default=1):
        p.add_argument('--k', type=int, default=default)

    def mc(p):
        p.add_argument('--trials', type=_positive_int, default=100_000)
        p.add_argument('--seed', type=int, default=0)

    def seed(p):
        p.add_argument('--seed', type=int, default=0)

    def eps(p):
        p.add_argument('--eps', type=float, required=True)

    def matrices(p):
        p.add_argument('--matrices', default=None, help='JSON file of input matrices (otherwise sampled)')

    exact = groups.add_parser('exact', help='Closed-form constants').add_subparsers(
        dest='action', required=True, parser_class=_Parser)
    leaf(exact, 'constants', 'C, Mellin moment, f\'(0) and volume ratio', beta, n)
    leaf(exact, 'mellin', 'M+_n(beta, beta + 1); --n is the moment size', beta,
         lambda p: p.add_argument('--n', type=int, required=True))
    leaf(exact, 'gap-deriv', 'f\'(0); betas outside {1, 2, 4} use quadrature', beta, n)
    leaf(exact, 'volume', '|Sigma| and its ratio to the unit sphere', beta, n)
    leaf(exact, 'euler', 'Expected Euler characteristic of k random quadrics',
         lambda p: k(p, 2), n)

    mc_group = groups.add_parser('mc', help='Monte Carlo estimates').add_subparsers(
        dest='action', required=True, parser_class=_Parser)
    leaf(mc_group, 'gap', 'P{sigma(Q) >= eps}', beta, n, eps, mc)
    leaf(mc_group, 'cone-gap', 'P{sigma(Q) >= eps ||Q||}', beta, n, eps, mc)
    leaf(mc_group, 'deriv0', 'Slope at zero of 1 - f', beta, n, mc,
         lambda p: p.add_argument('--eps-grid', type=float, nargs='+', default=None),
         lambda p: p.add_argument('--curve', choices=[c.value for c in GapCurve], default='cylinder'))
    leaf(mc_group, 'absdet', 'E |det Q|^power (default power: beta)', beta, n, mc,
         lambda p: p.add_argument('--power', type=float, default=None))

    def basis(p):
        p.add_argument('--basis', choices=['linear', 'monomial', 'trig'], default='linear')
        k(p)

    det = groups.add_parser('detcurve', help='Roots of determinants along curves').add_subparsers(
        dest='action', required=True, parser_class=_Parser)
    leaf(det, 'alpha1', 'Length of the projected coefficient curve over pi', basis)
    leaf(det, 'roots', 'Real roots for one set of matrices', basis, beta,
         lambda p: p.add_argument('--n', type=_positive_int, default=2), seed, matrices,
         lambda p: p.add_argument('--method', choices=['companion', 'scan'], default=None))
    leaf(det, 'ratio', 'Mean root count against alpha1', basis, beta, n, mc)

    quad = groups.add_parser('quadrics', help='Pencils and spans of random quadrics').add_subparsers(
        dest='action', required=True, parser_class=_Parser)
    pencil_flags = (
        lambda p: p.set_defaults(beta=1.0),
        lambda p: p.add_argument('--n', type=_positive_int, default=3),
        seed,
        matrices,
    )
    leaf(quad, 'arcs', 'Singular angles and arc indices of a pencil', *pencil_flags)
    leaf(quad, 'table', 'Table E of a pencil', *pencil_flags)
    leaf(quad, 'betti', 'Betti bounds of a pencil', *pencil_flags,
         lambda p: p.add_argument('--i', type=int, default=None))
    leaf(quad, 'mc-betti', 'E b(E) for random pencils', n, mc)
    leaf(quad, 'mc-mu', 'E mu for spans of k random quadrics', lambda p: k(p, 2), n, mc)
    leaf(quad, 'example-paper', 'The empty intersection of two conics in RP^2',
         aliases=['example-conics'])

    sweep = groups.add_parser('sweep', help='Exact values against asymptotics over a range of n',
                              parents=[common])
    sweep.add_argument('--quantity', choices=['gap-deriv', 'volume', 'mellin'], required=True)
    sweep.add_argument('--beta', type=int, choices=list(MATRIX_BETAS), default=1)
    sweep.add_argument('--n-min', type=int, default=1)
    sweep.add_argument('--n-max', type=int, default=100)
    sweep.add_argument('--n-step', type=_positive_int, default=1)
    return parser


# -- output ----------------------------------------------------------------------

def _emit(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        Path(out).write_text(text)
    except OSError as e:
        raise OutputError(f"cannot write {out}: {e}")
    logger.info(f"Wrote {out}")


def _csv_text(rows: List[Dict[str, float]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['n', 'exact', 'asymptotic', 'ratio'])
    for row in rows:
        writer.writerow([row['n'], repr(row['exact']), repr(row['asymptotic']), repr(row['ratio'])])
    return buffer.getvalue()


def _params(args) -> Dict[str, Any]:
    skip = {'group', 'action', 'threads', 'out', 'output_format', 'no_cache', 'log_level', 'log_json', 'config'}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _run_sweep(args) -> str:
    if args.n_min < 1 or args.n_max < args.n_min:
        raise UsageError("need 1 <= --n-min <= --n-max")
    rows = sweep_rows(args.quantity, args.beta, range(args.n_min, args.n_max + 1, args.n_step))
    if (args.output_format or 'csv') == 'csv':
        return _csv_text(rows)
    records = [
        RunRecord(command=f"sweep {args.quantity}", params={**_params(args), 'n': row['n']}, result=row)
        for row in rows
    ]
    return json.dumps([r.model_dump(mode='json') for r in records], indent=2) + '\n'


def _run_single(args) -> str:
    if args.output_format == 'csv':
        raise UsageError("csv output is only available for sweep")
    handler = COMMANDS[(args.group, args.action)]
    metrics = get_metrics_tracker()
    with metrics.timed(f"{args.group}-{args.action}"):
        result, seed = handler(args)
    record = RunRecord(
        command=f"{args.group} {args.action}",
        params=_params(args),
        result=result,
        seed=seed,
        diagnostics={'threads': args.threads, 'metrics': metrics.get_stats(), 'cache': get_cache().get_stats()},
    )
    return record.model_dump_json(indent=2) + '\n'


@handle_errors
def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv, run one subcommand and write its output document.

    Returns:
        0 on success, 2 on usage errors, 1 on numerical, domain or output errors
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # --help and --version
        return int(e.code or 0)

    setup_logging(args.log_level, True if args.log_json else None)
    if args.config:
        configure(args.config)
    if args.no_cache:
        set_cache(EstimateCache(enabled=False))
    logger.debug(f"betagap {args.group} {getattr(args, 'action', '')}", extra={'params': _params(args)})
    _check_ensemble_args(args)

    text = _run_sweep(args) if args.group == 'sweep' else _run_single(args)
    _emit(text, args.out)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
