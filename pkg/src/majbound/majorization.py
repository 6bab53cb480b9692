"""
Majorization partial order, tensor products of distributions, the Shannon /
Renyi / Tsallis entropy family and the Abel-summation dot product used by the
admixture bound.
"""
from __future__ import annotations

from functools import reduce

import numpy as np

from majbound.components import MajVector, ProbVector, NORMALIZATION_TOL
from majbound.exceptions import (BadOrderException,
                                 DimensionMismatchException,
                                 NotNormalizedException,
                                 NotSortedException)

MAJORIZATION_SLACK = 1e-9
SORTED_TOL = 1e-12


def as_array(v) -> np.ndarray:
    """
    Entries of a ProbVector, MajVector or plain sequence as a float array.
    """
    if isinstance(v, ProbVector):
        return np.asarray(v.probs, dtype=float)
    if isinstance(v, MajVector):
        return np.asarray(v.entries, dtype=float)
    return np.asarray(v, dtype=float).ravel()


def _normalized(v, name: str) -> np.ndarray:
    values = as_array(v)
    total = values.sum()
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NotNormalizedException(f"{name} should sum to 1, not {total:.15f}!")
    return values


def majorizes(y, x, slack: float = MAJORIZATION_SLACK) -> bool:
    """
    True iff x is majorized by y (x < y): every top-k partial sum of x sorted
    descending is at most the one of y plus slack. Shorter vectors are
    zero-padded.
    """
    y_values = _normalized(y, 'y')
    x_values = _normalized(x, 'x')

    length = max(len(x_values), len(y_values))
    x_sorted = np.sort(np.pad(x_values, (0, length - len(x_values))))[::-1]
    y_sorted = np.sort(np.pad(y_values, (0, length - len(y_values))))[::-1]

    return bool(np.all(np.cumsum(x_sorted) <= np.cumsum(y_sorted) + slack))


def _bound_partial_sums(v) -> np.ndarray:
    if isinstance(v, MajVector):
        return np.cumsum(v.entries)
    return np.cumsum(np.sort(as_array(v))[::-1])


def majorized_by_bound(x, omega: MajVector, slack: float = MAJORIZATION_SLACK) -> bool:
    """
    True iff every partial sum of x is at most Omega_k + slack, where Omega_k
    are the partial sums of omega in construction order.

    A ProbVector x is sorted descending first; a MajVector x keeps its own
    construction order, so for two bound vectors this compares Omega_k with
    Omega'_k directly.
    """
    _normalized(x, 'x')
    x_sums = _bound_partial_sums(x)
    omega_sums = np.cumsum(_normalized(omega, 'omega'))

    length = max(len(x_sums), len(omega_sums))
    x_sums = np.pad(x_sums, (0, length - len(x_sums)), constant_values=x_sums[-1])
    omega_sums = np.pad(omega_sums, (0, length - len(omega_sums)), constant_values=omega_sums[-1])

    return bool(np.all(x_sums <= omega_sums + slack))


def tensor_product(ps: list) -> ProbVector:
    """
    p_1 (x) p_2 (x) ... in lexicographic order of the multi-index.
    """
    if not ps:
        raise ValueError("tensor_product needs at least one distribution!")

    return ProbVector(reduce(np.kron, [as_array(p) for p in ps]))


def _support(p) -> np.ndarray:
    values = as_array(p)
    return values[values > 0.0]


def shannon_entropy(p, log_base: float = 2.0) -> float:
    """
    -sum p log p, 0 log 0 := 0.
    """
    support = _support(p)
    return float(max(-np.sum(support * np.log(support)) / np.log(log_base), 0.0))


def renyi_entropy(p, alpha: float, log_base: float = 2.0) -> float:
    """
    1/(1 - alpha) log sum p^alpha. alpha = 1 gives the Shannon limit,
    alpha = inf the min-entropy.
    """
    if alpha < 0:
        raise BadOrderException(f"Renyi order should be nonnegative, not {alpha}!")

    if alpha == 1:
        return shannon_entropy(p, log_base)

    support = _support(p)

    if np.isinf(alpha):
        return float(-np.log(support.max()) / np.log(log_base))

    return float(np.log(np.sum(support ** alpha)) / ((1.0 - alpha) * np.log(log_base)))


def tsallis_entropy(p, q: float) -> float:
    """
    (1 - sum p^q) / (q - 1). q = 1 gives the Shannon limit in nats.
    """
    if q <= 0:
        raise BadOrderException(f"Tsallis order should be positive, not {q}!")

    if q == 1:
        return shannon_entropy(p, np.e)

    support = _support(p)
    return float((1.0 - np.sum(support ** q)) / (q - 1.0))


def omega_dot_decreasing(omega, a) -> float:
    """
    sum_k omega_k a_k with omega in construction order and a nonincreasing.

    For every x majorized by omega, sum_k x_k(sorted) a_k <= returned value
    (Abel summation against the partial sums Omega_k).
    """
    a_values = np.asarray(a, dtype=float).ravel()

    if np.any(np.diff(a_values) > SORTED_TOL):
        raise NotSortedException("Second factor should be sorted nonincreasing!")

    omega_values = as_array(omega)
    nonzero = np.nonzero(omega_values)[0]
    short = omega_values[:int(nonzero[-1]) + 1] if nonzero.size else omega_values[:0]

    if len(short) > len(a_values):
        raise DimensionMismatchException(f"omega of short length {len(short)} cannot be "
                                         f"aligned with a vector of length {len(a_values)}!")

    return float(np.dot(short, a_values[:len(short)]))
