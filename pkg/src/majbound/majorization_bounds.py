"""
Universal majorization bounds for N measurements.

omega comes from the largest eigenvalue of block-Gram matrices U(S_1, ..., S_N)
maximized over all size compositions and all index subsets, omega_hat from the
singular-value relaxation of the same maximization, and omega_simple is the
two-component vector (Omega_1, 1 - Omega_1).
"""
from __future__ import annotations

import logging
from itertools import combinations, product
from math import comb

import numpy as np

from majbound.algorithms import top_eigenvalue, top_singular_value
from majbound.components import MajVector, MeasurementBasis, OmegaResult, SubsetChoice
from majbound.exceptions import (BudgetExceededException,
                                 DimensionMismatchException,
                                 InvalidChoiceException,
                                 TooFewMeasurementsException)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 2_000_000
OMEGA_CEILING_TOL = 1e-12
PAIR_MODES = ('all', 'chain')


def common_dimension(bases: list[MeasurementBasis]) -> int:
    """
    Shared dimension of the bases.
    """
    dims = {basis.dim for basis in bases}
    if len(dims) != 1:
        raise DimensionMismatchException(f"Bases should share one dimension, got {sorted(dims)}!")
    return dims.pop()


def _require_measurements(bases: list[MeasurementBasis]):
    if len(bases) < 2:
        raise TooFewMeasurementsException(f"At least 2 measurements are needed, got {len(bases)}!")
    common_dimension(bases)


def size_compositions(k: int, measurements: int, dim: int) -> list[tuple[int, ...]]:
    """
    All (S_1, ..., S_N) with S_m in [1, dim] and S_1 + ... + S_N = k + N - 1,
    in lexicographic order.
    """
    total = k + measurements - 1
    return [sizes for sizes in product(range(1, dim + 1), repeat=measurements)
            if sum(sizes) == total]


def enumeration_count(k: int, measurements: int, dim: int) -> int:
    """
    Number of subset choices examined for s_k.
    """
    return sum(int(np.prod([comb(dim, size) for size in sizes]))
               for sizes in size_compositions(k, measurements, dim))


def subset_choices(k: int, measurements: int, dim: int):
    """
    Generator of every SubsetChoice contributing to s_k, sizes first then
    index subsets, both lexicographic.
    """
    for sizes in size_compositions(k, measurements, dim):
        for subsets in product(*(combinations(range(dim), size) for size in sizes)):
            yield SubsetChoice(subsets)


class BlockGramBuilder:
    """
    Precomputes the Gram matrix of all N * d basis vectors; U(S_1, ..., S_N)
    for a choice is then a principal submatrix with exact identity diagonal blocks.
    """

    def __init__(self, bases: list[MeasurementBasis]):
        self.dim = common_dimension(bases)
        self.measurements = len(bases)
        vectors = np.hstack([basis.matrix for basis in bases])
        self.gram = vectors.conj().T @ vectors


    def _indices(self, choice: SubsetChoice) -> list[np.ndarray]:
        return [m * self.dim + np.asarray(subset) for m, subset in enumerate(choice.subsets)]


    def __call__(self, choice: SubsetChoice) -> np.ndarray:
        choice.validate(self.dim, self.measurements)
        idx = np.concatenate(self._indices(choice))
        u = self.gram[np.ix_(idx, idx)].copy()

        offset = 0
        for size in choice.sizes:
            u[offset:offset + size, offset:offset + size] = np.eye(size)
            offset += size

        return u


    def block(self, choice: SubsetChoice, m: int, n: int) -> np.ndarray:
        """
        Off-diagonal block U_mn of inner products <u^m_x|u^n_y>.
        """
        idx = self._indices(choice)
        return self.gram[np.ix_(idx[m], idx[n])]


def block_gram(bases: list[MeasurementBasis], choice: SubsetChoice) -> np.ndarray:
    """
    U(S_1, ..., S_N): identity diagonal blocks, block (m, n) holds <u^m_x|u^n_y>
    for the chosen vectors.
    """
    return BlockGramBuilder(bases)(choice)


def _check_budget(k: int, measurements: int, dim: int, budget: int) -> int:
    required = enumeration_count(k, measurements, dim)

    if required == 0:
        raise InvalidChoiceException(f"No size composition sums to k + N - 1 = "
                                     f"{k + measurements - 1} with sizes in [1, {dim}]!")

    if required > budget:
        raise BudgetExceededException(f"s_{k} needs {required} subset choices, budget is {budget}!",
                                      required=required)
    return required


def compute_s_k(bases: list[MeasurementBasis], k: int, budget: int = DEFAULT_BUDGET,
                method: str = 'exact') -> float:
    """
    s_k = max lambda_1(U(S_1, ..., S_N)) over all size compositions summing to
    k + N - 1 and all index subsets of those sizes.
    """
    _require_measurements(bases)
    if k < 1:
        raise InvalidChoiceException(f"k should be at least 1, not {k}!")

    builder = BlockGramBuilder(bases)
    _check_budget(k, builder.measurements, builder.dim, budget)

    return max(top_eigenvalue(builder(choice), method)
               for choice in subset_choices(k, builder.measurements, builder.dim))


def compute_s_hat_k(bases: list[MeasurementBasis], k: int, budget: int = DEFAULT_BUDGET,
                    pairs: str = 'all') -> float:
    """
    s_hat_k = max of the summed top singular values of the off-diagonal blocks
    over the same subset space as s_k.

    Args:
        - pairs (str): 'all' sums over every pair m < n (a relaxation of
          lambda_1(U) - 1 by Weyl's inequality), 'chain' only over consecutive
          pairs (m, m + 1).
    """
    _require_measurements(bases)
    if pairs not in PAIR_MODES:
        raise ValueError(f"pairs should be one of {PAIR_MODES}, not {pairs!r}!")

    builder = BlockGramBuilder(bases)
    _check_budget(k, builder.measurements, builder.dim, budget)

    n_meas = builder.measurements
    block_pairs = ([(m, n) for m in range(n_meas) for n in range(m + 1, n_meas)]
                   if pairs == 'all' else [(m, m + 1) for m in range(n_meas - 1)])

    return max(sum(top_singular_value(builder.block(choice, m, n)) for m, n in block_pairs)
               for choice in subset_choices(k, n_meas, builder.dim))


def _omega_loop(bases, kind: str, s_of_k, omega_of_s) -> OmegaResult:
    measurements = len(bases)
    dim = common_dimension(bases)

    s_values, omega_values = [], []
    count, running = 0, -np.inf

    for k in range(1, measurements * (dim - 1) + 2):
        s_k = s_of_k(k)
        count += enumeration_count(k, measurements, dim)

        if s_k < running:
            logger.debug("%s: s_%d = %.17g below running maximum %.17g", kind, k, s_k, running)
        running = max(running, s_k)

        omega_k = min(omega_of_s(running), 1.0)
        if omega_k >= 1.0 - OMEGA_CEILING_TOL:
            if omega_k != 1.0:
                logger.debug("%s: Omega_%d = %.17g clamped to 1", kind, k, omega_k)
            omega_k = 1.0

        s_values.append(running)
        omega_values.append(omega_k)
        logger.debug("%s: k=%d s=%.12f Omega=%.12f", kind, k, running, omega_k)

        if omega_k == 1.0:
            break

    return OmegaResult(s=s_values,
                       omega_values=omega_values,
                       omega=MajVector.from_partial_sums(omega_values),
                       a=len(omega_values) - 1,
                       enumeration_count=count,
                       kind=kind)


def compute_omega(bases: list[MeasurementBasis], budget: int = DEFAULT_BUDGET,
                  method: str = 'exact') -> OmegaResult:
    """
    Universal majorization bound omega = (Omega_1, Omega_2 - Omega_1, ..., 1 - Omega_a)
    with Omega_k = (s_k / N)^N. The tensor product of the Born distributions
    of every state is majorized by omega.
    """
    _require_measurements(bases)
    measurements = len(bases)

    return _omega_loop(bases, 'omega',
                       lambda k: compute_s_k(bases, k, budget, method),
                       lambda s: (s / measurements) ** measurements)


def compute_omega_hat(bases: list[MeasurementBasis], budget: int = DEFAULT_BUDGET,
                      pairs: str = 'all') -> OmegaResult:
    """
    Relaxed bound with Omega_hat_k = ((1 + s_hat_k) / N)^N, clamped to 1.
    OmegaResult.s holds the s_hat_k values.
    """
    _require_measurements(bases)
    measurements = len(bases)

    return _omega_loop(bases, 'omega_hat',
                       lambda k: compute_s_hat_k(bases, k, budget, pairs),
                       lambda s: ((1.0 + s) / measurements) ** measurements)


def omega_simple(bases: list[MeasurementBasis], budget: int = DEFAULT_BUDGET,
                 method: str = 'exact') -> MajVector:
    """
    omega_0 = (Omega_1, 1 - Omega_1), computed from s_1 only.
    """
    _require_measurements(bases)
    measurements = len(bases)

    omega_1 = (compute_s_k(bases, 1, budget, method) / measurements) ** measurements
    omega_1 = 1.0 if omega_1 >= 1.0 - OMEGA_CEILING_TOL else omega_1

    return MajVector([omega_1, 1.0 - omega_1])
