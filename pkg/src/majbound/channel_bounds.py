"""
Channel-type entropic bounds: the two-measurement classics (Deutsch,
Maassen-Uffink, Coles-Piani), the multi-measurement bound b for an ordered
list of bases, its minimum over all orders, and the state-dependent bound
I(order) with its full-group and cyclic averages.
"""
from __future__ import annotations

import logging
from itertools import permutations, product

import numpy as np

from majbound.components import DensityMatrix, MeasurementBasis, MeasurementOrder
from majbound.exceptions import (DegenerateChainException,
                                 OutOfRangeException,
                                 TooFewMeasurementsException,
                                 TooManyMeasurementsException)
from majbound.majorization_bounds import common_dimension
from majbound.quantum import born_probabilities, overlap_matrix

logger = logging.getLogger(__name__)

MAX_ORBIT_MEASUREMENTS = 8
MAX_FULL_AVERAGE_MEASUREMENTS = 6
CHAIN_ZERO_TOL = 1e-15
WEIGHT_ZERO_TOL = 1e-12
INVARIANCE_TOL = 1e-9


def _log(x: float, log_base: float) -> float:
    return float(np.log(x) / np.log(log_base))


def _check_overlap(c: float, name: str):
    if not 0.0 < c <= 1.0:
        raise OutOfRangeException(f"{name} should lie in (0, 1], not {c}!")


def deutsch_bound(c1: float, log_base: float = 2.0) -> float:
    """
    -2 log((1 + sqrt(c1)) / 2).
    """
    _check_overlap(c1, 'c1')
    return -2.0 * _log((1.0 + np.sqrt(c1)) / 2.0, log_base)


def maassen_uffink_bound(c1: float, log_base: float = 2.0) -> float:
    """
    -log c1.
    """
    _check_overlap(c1, 'c1')
    return -_log(c1, log_base)


def coles_piani_bound(c1: float, c2: float, log_base: float = 2.0) -> float:
    """
    -log c1 + (1 - sqrt(c1)) / 2 * log(c1 / c2), with 0 < c2 <= c1 <= 1.
    """
    _check_overlap(c1, 'c1')
    _check_overlap(c2, 'c2')
    if c2 > c1:
        raise OutOfRangeException(f"c2 = {c2} should not exceed c1 = {c1}!")

    return -_log(c1, log_base) + (1.0 - np.sqrt(c1)) / 2.0 * _log(c1 / c2, log_base)


def _require_measurements(bases: list[MeasurementBasis]):
    if len(bases) < 2:
        raise TooFewMeasurementsException(f"At least 2 measurements are needed, got {len(bases)}!")
    common_dimension(bases)


def chain_overlaps(bases: list[MeasurementBasis]) -> list[np.ndarray]:
    """
    Overlap matrices c(M_m, M_{m+1}) for consecutive bases.
    """
    return [overlap_matrix(first, second).entries for first, second in zip(bases, bases[1:])]


def liu_b(bases: list[MeasurementBasis]) -> float:
    """
    b = max_{i_N} sum_{i_2..i_{N-1}} max_{i_1} c(u^1_{i_1}, u^2_{i_2}) prod_m c(u^m_{i_m}, u^{m+1}_{i_{m+1}})

    Evaluated as a chain contraction: column maxima of the first overlap
    matrix pushed through the remaining ones. For N = 2 this is c_1.
    """
    _require_measurements(bases)
    overlaps = chain_overlaps(bases)

    weights = overlaps[0].max(axis=0)
    for overlap in overlaps[1:]:
        weights = weights @ overlap

    return float(weights.max())


def liu_b_enumerated(bases: list[MeasurementBasis]) -> float:
    """
    Reference evaluation of b by full enumeration of (i_1, ..., i_N);
    exponential in N, used to validate liu_b.
    """
    _require_measurements(bases)
    overlaps = chain_overlaps(bases)
    dim = bases[0].dim

    best = 0.0
    for last in range(dim):
        total = 0.0
        for middle in product(range(dim), repeat=len(bases) - 2):
            path = middle + (last,)
            head = max(overlaps[0][first, path[0]] for first in range(dim))
            total += head * np.prod([overlaps[m][path[m - 1], path[m]]
                                     for m in range(1, len(overlaps))])
        best = max(best, total)

    return float(best)


def orders(measurements: int) -> list[MeasurementOrder]:
    """
    All orders of range(measurements), lexicographic.
    """
    return [MeasurementOrder(perm) for perm in permutations(range(measurements))]


def cyclic_orders(measurements: int) -> list[MeasurementOrder]:
    """
    (1 2 ... N), (2 3 ... 1), ..., (N 1 ... N-1).
    """
    return [MeasurementOrder([(start + t) % measurements for t in range(measurements)])
            for start in range(measurements)]


def liu_b_min(bases: list[MeasurementBasis]) -> tuple[float, MeasurementOrder]:
    """
    Minimum of b over every order of the bases, with the lexicographically
    smallest order attaining it.
    """
    _require_measurements(bases)
    if len(bases) > MAX_ORBIT_MEASUREMENTS:
        raise TooManyMeasurementsException(f"b_min evaluates {len(bases)}! orders; at most "
                                           f"{MAX_ORBIT_MEASUREMENTS} measurements are allowed!")

    best_value, best_order = np.inf, None
    for order in orders(len(bases)):
        value = liu_b(order.apply(bases))
        if value < best_value:
            best_value, best_order = value, order

    return best_value, best_order


def _chain_log_term(first_probs: np.ndarray, last_probs: np.ndarray,
                    overlaps: list[np.ndarray], log_base: float) -> float:
    weights = first_probs
    for overlap in overlaps:
        weights = weights @ overlap

    total = 0.0
    for idx, (weight, inner) in enumerate(zip(last_probs, weights)):
        if inner <= CHAIN_ZERO_TOL:
            if weight > WEIGHT_ZERO_TOL:
                raise DegenerateChainException(f"Chain sum vanishes at terminal index {idx} "
                                               f"under weight {weight:.3e}!")
            continue
        total -= weight * _log(inner, log_base)

    return total


def state_dependent_I(rho: DensityMatrix, bases: list[MeasurementBasis],
                      log_base: float = 2.0) -> float:
    """
    I(1, ..., N) = -sum_{i_N} p^N_{i_N} log sum_{i_1..i_{N-1}} p^1_{i_1} c^{1..N}_{i_1..i_N}

    Lower-bounds sum_m H(M_m) + (1 - N) S(rho) for the given order.
    """
    _require_measurements(bases)
    first = born_probabilities(rho, bases[0]).probs
    last = born_probabilities(rho, bases[-1]).probs

    return _chain_log_term(first, last, chain_overlaps(bases), log_base)


def average_I(rho: DensityMatrix, bases: list[MeasurementBasis], mode: str = 'cyclic',
              log_base: float = 2.0) -> float:
    """
    Mean of I over every order ('full', at most 6 measurements) or over the
    N cyclic shifts ('cyclic'). Summation follows the listed order of orders.
    """
    _require_measurements(bases)

    if mode == 'full':
        if len(bases) > MAX_FULL_AVERAGE_MEASUREMENTS:
            raise TooManyMeasurementsException(f"Full average over {len(bases)}! orders; at most "
                                               f"{MAX_FULL_AVERAGE_MEASUREMENTS} measurements!")
        selected = orders(len(bases))
    elif mode == 'cyclic':
        selected = cyclic_orders(len(bases))
    else:
        raise ValueError(f"mode should be 'full' or 'cyclic', not {mode!r}!")

    values = [state_dependent_I(rho, order.apply(bases), log_base) for order in selected]
    return float(sum(values) / len(values))


def middle_invariance_report(rho: DensityMatrix, bases: list[MeasurementBasis],
                             log_base: float = 2.0) -> dict:
    """
    Groups all orders by (first, last, set of middle measurements) and reports
    the spread of I inside each group. A nonzero spread means I depends on the
    sequence of the middle measurements.

    Returns:
        {'max_spread': float, 'groups': {(first, last, middle): (min, max)}}
    """
    _require_measurements(bases)
    if len(bases) > MAX_FULL_AVERAGE_MEASUREMENTS:
        raise TooManyMeasurementsException(f"Invariance report over {len(bases)}! orders; at most "
                                           f"{MAX_FULL_AVERAGE_MEASUREMENTS} measurements!")

    groups = {}
    for order in orders(len(bases)):
        key = (order.perm[0], order.perm[-1], frozenset(order.perm[1:-1]))
        value = state_dependent_I(rho, order.apply(bases), log_base)
        low, high = groups.get(key, (value, value))
        groups[key] = (min(low, value), max(high, value))

    max_spread = max(high - low for low, high in groups.values())
    if max_spread > INVARIANCE_TOL:
        logger.warning("I depends on the order of middle measurements: spread %.3e", max_spread)

    return {'max_spread': max_spread, 'groups': groups}
