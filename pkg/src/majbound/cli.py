"""
Command line entry point: majbound {compare, verify, omega} --config FILE.

Exit codes: 0 success, 1 verification failure, 2 config error,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import logging
import sys

from majbound.bound_manager import BoundManager, ScenarioConfig
from majbound.exceptions import (BudgetExceededException,
                                 DimensionMismatchException,
                                 InvalidBasisException,
                                 InvalidConfigException,
                                 InvalidDensityMatrixException,
                                 OutOfRangeException,
                                 TooFewMeasurementsException,
                                 TooManyMeasurementsException,
                                 WorkBudgetExceededException)
from majbound.tools import display_report, emit_csv, emit_svg_lines

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3

CONFIG_ERRORS = (InvalidConfigException, InvalidBasisException, InvalidDensityMatrixException,
                 DimensionMismatchException, OutOfRangeException, TooFewMeasurementsException,
                 TooManyMeasurementsException)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='majbound',
                                     description='Entropic uncertainty bounds for N measurements.')
    parser.add_argument('command', choices=['compare', 'verify', 'omega'])
    parser.add_argument('--config', help='JSON scenario file (defaults apply when omitted)')
    parser.add_argument('--output', help="CSV path or 'stdout'; overrides the config")
    parser.add_argument('--svg', help='also draw the compare table as an SVG line chart')
    parser.add_argument('--log-base', choices=['2', 'e'], help='overrides the config log base')
    parser.add_argument('--budget', type=int, help='subset enumeration budget')
    parser.add_argument('--seed', type=int, help='seed of random sources, states and verify')
    parser.add_argument('--verbose', action='store_true', help='DEBUG logging')
    return parser


def _load_config(args) -> ScenarioConfig:
    config = ScenarioConfig.from_json(args.config) if args.config else ScenarioConfig({})
    return config.apply_overrides(log_base=args.log_base, budget=args.budget,
                                  seed=args.seed, output=args.output)


def _compare(manager: BoundManager, svg: str = None) -> int:
    rows = manager.run_compare()

    for line in manager.header():
        print(f"# {line}", file=sys.stderr)

    emit_csv(rows, manager.config.output)
    if manager.config.output != 'stdout':
        logger.info("table written to %s", manager.config.output)

    if svg:
        x_column = next(iter(rows[0]))
        emit_svg_lines(rows, svg, x_column, manager.config.bounds
                       + [key for key in rows[0] if key == 'admixture_minus_liu_b_min'],
                       manager.config.log_base, manager.config.title)
        logger.info("chart written to %s", svg)

    return EXIT_OK


def _verify(manager: BoundManager) -> int:
    report = manager.run_verify()
    display_report(report.results)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _omega(manager: BoundManager) -> int:
    for summary in manager.omega_summary():
        display_report(summary)
    return EXIT_OK


def main(argv: list[str] = None) -> int:
    args = build_parser().parse_args(argv)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(asctime)s - %(levelname)s - %(message)s')

    try:
        manager = BoundManager(_load_config(args))
        command = {'compare': lambda: _compare(manager, args.svg),
                   'verify': lambda: _verify(manager),
                   'omega': lambda: _omega(manager)}[args.command]
        return command()

    except CONFIG_ERRORS as exc:
        logger.error("config error: %s", exc)
        return EXIT_CONFIG

    except (BudgetExceededException, WorkBudgetExceededException) as exc:
        logger.error("%s (required: %s)", exc, exc.required)
        return EXIT_BUDGET


if __name__ == '__main__':
    sys.exit(main())
