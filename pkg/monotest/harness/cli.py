"""
Command-line interface for monotest

Exit status: 0 on success, 1 if any sweep row fails, 2 on usage or I/O errors.
Result payloads go to stdout (or --out); log lines go to stderr.
"""
import argparse
import json
import sys
from typing import List, Optional

import numpy as np

from ..boolfn.oracle import QueryOracle
from ..boolfn.truthtable import TruthTable, write_table
from ..hypercube.params import make_params
from ..metrics.report import compute_metrics
from ..metrics.violations import average_sensitivity
from ..testers.runner import combined_test, edge_only_test, path_only_test, sensitivity_test
from ..util.config import Config
from ..util.logging import error, info, init_logging
from .experiment import KINDS, TESTERS, ExperimentSpec, load_function, run_sweep, write_output

EXIT_OK = 0
EXIT_FAILED_ROWS = 1
EXIT_USAGE = 2


def _add_common(parser: argparse.ArgumentParser, function: bool = True):
    parser.add_argument('--n', type=int, help='Dimension of the hypercube')
    parser.add_argument('--eps', type=float, help='Distance parameter eps in (0, 1/2]')
    parser.add_argument('--sigma', type=float, help='Path tester sigma in (0, 1]')
    parser.add_argument('--trials', type=int, help='Number of trials or sweep instances')
    parser.add_argument('--seed', type=int, help='Master seed')
    parser.add_argument('--budget-constant', type=float, dest='budget_constant',
                        help='Repetition constant c of the testers')
    parser.add_argument('--workers', type=int, help='Worker processes for sweeps')
    if function:
        parser.add_argument('--family', type=str, help="Function family, 'name[:args]'")
        parser.add_argument('--table', type=str, help='Truth-table (BFTT) file')
    parser.add_argument('--out', type=str, help='Output file (default: stdout)')
    parser.add_argument('--format', type=str, choices=('csv', 'json'), default='csv',
                        dest='fmt', help='Output format (default: csv)')
    parser.add_argument('-c', '--config', type=str, help='Path to the configuration file')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='monotest',
        description='Monotonicity testers for Boolean functions on the hypercube'
    )
    parser.add_argument('-v', '--verbose', action='store_true', help='Log debug messages')
    parser.add_argument('-q', '--quiet', action='store_true', help='Log warnings and errors only')
    sub = parser.add_subparsers(dest='command', required=True)

    metrics = sub.add_parser('metrics', help='Exact metrics of one function (JSON)')
    _add_common(metrics)

    test = sub.add_parser('test', help='Run one tester once and print the verdict')
    _add_common(test)
    test.add_argument('--tester', choices=TESTERS, default='combined')

    estimate = sub.add_parser('estimate', help='Estimate a rejection probability')
    _add_common(estimate)
    estimate.add_argument('--tester', choices=TESTERS, default='combined')

    sweep = sub.add_parser('sweep', help='Run a verification sweep')
    _add_common(sweep)
    sweep.add_argument('--kind', choices=KINDS, default='dichotomy-sweep')
    sweep.add_argument('--tester', choices=TESTERS, default='combined')
    sweep.add_argument('--exhaustive', action='store_true',
                       help='Every function of dimension n (n <= 4)')

    routing = sub.add_parser('routing-check', help='Route harvested instances and verify the paths')
    _add_common(routing)
    routing.add_argument('--exhaustive', action='store_true')

    blue = sub.add_parser('blue-sweep', help='Check the blue-blue chain on random blue sets')
    _add_common(blue, function=False)

    gen = sub.add_parser('gen', help='Write a family member as a BFTT file')
    gen.add_argument('--family', type=str, required=True, help="Function family, 'name[:args]'")
    gen.add_argument('--n', type=int, help='Dimension when the family spec omits it')
    gen.add_argument('--out', type=str, required=True, help='Output BFTT file')
    gen.add_argument('-c', '--config', type=str, help='Path to the configuration file')
    return parser


def _spec(args: argparse.Namespace, config: Config, kind: str) -> ExperimentSpec:
    """ExperimentSpec from flags, with configuration values filling the gaps"""
    testers = config.get_testers_config()
    harness = config.get_harness_config()

    def pick(name, fallback):
        value = getattr(args, name, None)
        return fallback if value is None else value

    return ExperimentSpec(
        kind=kind,
        n=getattr(args, 'n', None),
        family=getattr(args, 'family', None),
        table=getattr(args, 'table', None),
        eps=pick('eps', testers['eps'] if kind == 'tester-estimate' else None),
        sigma=getattr(args, 'sigma', None),
        trials=pick('trials', harness['trials']),
        seed=pick('seed', harness['seed']),
        budget_constant=pick('budget_constant', testers['budget_constant']),
        tester=getattr(args, 'tester', 'combined'),
        exhaustive=getattr(args, 'exhaustive', False),
        workers=pick('workers', harness['workers']),
        confidence=harness['confidence'],
        tolerance_se=harness['tolerance_se'],
    ).validate()


def _emit(text: str, path: Optional[str]):
    if path:
        with open(path, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def cmd_metrics(args, config: Config) -> int:
    spec = _spec(args, config, 'metrics')
    function = load_function(spec)
    if not isinstance(function, TruthTable):
        raise ValueError("metrics need a materialized truth table")
    _emit(compute_metrics(function).to_json() + "\n", args.out)
    return EXIT_OK


def cmd_test(args, config: Config) -> int:
    spec = _spec(args, config, 'tester-estimate')
    function = load_function(spec)
    oracle = QueryOracle(function)
    rng = np.random.default_rng(spec.seed)
    eps = spec.eps
    if spec.tester == 'combined':
        run = combined_test(oracle, eps, spec.budget_constant, rng=rng, seed=spec.seed)
    elif spec.tester == 'sensitivity':
        if not isinstance(function, TruthTable):
            raise ValueError("the sensitivity tester needs a materialized truth table")
        run = sensitivity_test(oracle, eps, float(average_sensitivity(function)),
                               spec.budget_constant, rng=rng, seed=spec.seed)
    elif spec.tester == 'path':
        params = make_params(function.n, eps, spec.sigma if spec.sigma is not None else 0.5)
        run = path_only_test(oracle, params, spec.trials, rng=rng, seed=spec.seed)
    else:
        run = edge_only_test(oracle, spec.trials, rng=rng, seed=spec.seed)
    info(f"{run.config['mode']} tester: {'reject' if run.verdict.rejected else 'accept'} "
         f"after {run.rounds_run} rounds, {run.verdict.queries_used} queries")
    _emit(json.dumps(run.to_dict(), indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def _run_kind(args, config: Config, kind: str) -> int:
    result = run_sweep(_spec(args, config, kind))
    text = write_output(result, args.out, args.fmt)
    if not args.out:
        sys.stdout.write(text)
    return EXIT_OK if result.passed else EXIT_FAILED_ROWS


def cmd_gen(args, config: Config) -> int:
    spec = ExperimentSpec(kind='metrics', n=args.n, family=args.family).validate()
    function = load_function(spec)
    if not isinstance(function, TruthTable):
        raise ValueError(f"{args.family} is beyond the truth-table limit")
    write_table(function, args.out)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run the subcommand, return the exit status"""
    parser = build_parser()
    args = parser.parse_args(argv)

    manager = init_logging(args.config)
    if args.verbose:
        manager.set_level('DEBUG')
    elif args.quiet:
        manager.set_level('WARNING')
    config = Config(args.config)

    try:
        if args.command == 'metrics':
            return cmd_metrics(args, config)
        if args.command == 'test':
            return cmd_test(args, config)
        if args.command == 'estimate':
            return _run_kind(args, config, 'tester-estimate')
        if args.command == 'sweep':
            return _run_kind(args, config, args.kind)
        if args.command == 'routing-check':
            return _run_kind(args, config, 'routing-check')
        if args.command == 'blue-sweep':
            return _run_kind(args, config, 'blue-sweep')
        return cmd_gen(args, config)
    except FileNotFoundError as e:
        error(f"File not found: {e.filename or e}")
        return EXIT_USAGE
    except (ValueError, OSError) as e:
        error(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
