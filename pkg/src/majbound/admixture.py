"""
Admixture bound built from cyclic multi-overlap chains.

Chain m starts at measurement m (index k_m), runs through the N - 2 following
measurements (indices j) and ends at measurement m - 1 (index i_{m-1}).
A_i[k] sums the product of all N chains over the shared j indices, each A_i is
sorted nonincreasing, B_i = log(omega . A_i) and the bound is -(1/N) omega . B.
"""
from __future__ import annotations

import logging
from itertools import product
from string import ascii_letters

import numpy as np

from majbound.components import DensityMatrix, MajVector, MeasurementBasis
from majbound.exceptions import (LogOfNonpositiveException,
                                 TooFewMeasurementsException,
                                 WorkBudgetExceededException)
from majbound.majorization import omega_dot_decreasing, tensor_product
from majbound.majorization_bounds import DEFAULT_BUDGET, common_dimension, compute_omega
from majbound.quantum import born_probabilities, overlap_matrix

logger = logging.getLogger(__name__)

DEFAULT_WORK_BUDGET = 10 ** 9
CHAIN_CHECK_TOL = 1e-12


def sorted_nonincreasing(values: np.ndarray) -> np.ndarray:
    """
    Values reindexed to be nonincreasing, equal values kept in index order.
    """
    values = np.asarray(values, dtype=float)
    return values[np.argsort(-values, kind='stable')]


def cyclic_overlaps(bases: list[MeasurementBasis]) -> list[np.ndarray]:
    """
    c(M_m, M_{m+1 mod N}) for m = 0..N-1.
    """
    n_meas = len(bases)
    return [overlap_matrix(bases[m], bases[(m + 1) % n_meas]).entries for m in range(n_meas)]


class ChainTensor:
    """
    Multi-overlap chains c^{m, m+1, ..., m-1} for every cyclic shift m.

    values[m] has N axes: (k_m, j_{m+1}, ..., j_{m+N-2}, i_{m-1}).
    """

    def __init__(self, overlaps: list[np.ndarray]):
        self.measurements = len(overlaps)
        self.values = []

        for m in range(self.measurements):
            chain = overlaps[m]
            for step in range(1, self.measurements - 1):
                chain = chain[..., :, None] * overlaps[(m + step) % self.measurements]
            self.values.append(chain)

    @classmethod
    def from_bases(cls, bases: list[MeasurementBasis]) -> "ChainTensor":
        return cls(cyclic_overlaps(bases))

    def check_against(self, overlaps: list[np.ndarray], tol: float = CHAIN_CHECK_TOL) -> bool:
        """
        True iff every chain entry lies in [0, 1] and equals the product of
        the pairwise overlap entries along its path.
        """
        for m, chain in enumerate(self.values):
            if chain.min() < 0.0 or chain.max() > 1.0 + tol:
                logger.debug("chain %d leaves [0, 1]", m)
                return False

            for idx in np.ndindex(chain.shape):
                expected = 1.0
                for step in range(self.measurements - 1):
                    expected *= overlaps[(m + step) % self.measurements][idx[step], idx[step + 1]]
                if abs(chain[idx] - expected) > tol:
                    logger.debug("chain %d entry %s: %.17g != %.17g", m, idx, chain[idx], expected)
                    return False

        return True


class AdmixtureTensors:
    """
    Args:
        raw (np.ndarray): A_i[k] before sorting, rows i and columns k in
            lexicographic multi-index order.
        A (np.ndarray): every row of raw sorted nonincreasing.
        B (np.ndarray): log(omega . A_i) sorted nonincreasing.
        omega (MajVector): bound vector used for B.
    """

    def __init__(self, raw: np.ndarray, A: np.ndarray, B: np.ndarray, omega: MajVector):
        self.raw = raw
        self.A = A
        self.B = B
        self.omega = omega

    def __repr__(self):
        return f"AdmixtureTensors(rows={self.A.shape[0]}, omega={self.omega!r})"


def work_required(measurements: int, dim: int) -> int:
    """
    Elementary multiplications of the explicit (i, k, j) enumeration.
    """
    middle = measurements if measurements > 2 else 0
    return measurements * dim ** (2 * measurements + middle)


def _einsum_subscripts(measurements: int) -> str:
    k = ascii_letters[:measurements]
    i = ascii_letters[measurements:2 * measurements]
    j = ascii_letters[2 * measurements:3 * measurements]

    operands = []
    for m in range(measurements):
        middle = ''.join(j[(m + step) % measurements] for step in range(1, measurements - 1))
        operands.append(k[m] + middle + i[(m - 1) % measurements])

    return ','.join(operands) + '->' + i + k


def build_raw_A(bases: list[MeasurementBasis], work_budget: int = DEFAULT_WORK_BUDGET) -> np.ndarray:
    """
    Unsorted A as a (d^N, d^N) matrix, rows indexed by i, columns by k.
    """
    if len(bases) < 2:
        raise TooFewMeasurementsException(f"At least 2 measurements are needed, got {len(bases)}!")

    dim = common_dimension(bases)
    n_meas = len(bases)

    required = work_required(n_meas, dim)
    if required > work_budget:
        raise WorkBudgetExceededException(f"Admixture tensors need {required} multiplications, "
                                          f"budget is {work_budget}!", required=required)

    chains = ChainTensor.from_bases(bases)
    raw = np.einsum(_einsum_subscripts(n_meas), *chains.values, optimize=True)

    logger.debug("built admixture tensor for N=%d, d=%d", n_meas, dim)
    return raw.reshape(dim ** n_meas, dim ** n_meas)


def build_raw_A_enumerated(bases: list[MeasurementBasis],
                           work_budget: int = DEFAULT_WORK_BUDGET) -> np.ndarray:
    """
    Unsorted A from the explicit loop over (i, k, j), multiplying pairwise
    overlaps along every chain path. Reference for build_raw_A.
    """
    if len(bases) < 2:
        raise TooFewMeasurementsException(f"At least 2 measurements are needed, got {len(bases)}!")

    dim = common_dimension(bases)
    n_meas = len(bases)

    required = work_required(n_meas, dim)
    if required > work_budget:
        raise WorkBudgetExceededException(f"Enumerating admixture tensors needs {required} "
                                          f"multiplications, budget is {work_budget}!",
                                          required=required)

    c = cyclic_overlaps(bases)
    indices = list(product(range(dim), repeat=n_meas))
    middles = indices if n_meas > 2 else [()]
    raw = np.zeros((len(indices), len(indices)))

    for row, i in enumerate(indices):
        for col, k in enumerate(indices):
            for j in middles:
                term = 1.0
                for m in range(n_meas):
                    path = ([k[m]] + [j[(m + step) % n_meas] for step in range(1, n_meas - 1)]
                            + [i[(m - 1) % n_meas]])
                    for step in range(n_meas - 1):
                        term *= c[(m + step) % n_meas][path[step], path[step + 1]]
                raw[row, col] += term

    return raw


def build_A(bases: list[MeasurementBasis], work_budget: int = DEFAULT_WORK_BUDGET) -> np.ndarray:
    """
    A with every row A_i sorted nonincreasing.
    """
    raw = build_raw_A(bases, work_budget)
    return np.array([sorted_nonincreasing(row) for row in raw])


def build_B(A: np.ndarray, omega: MajVector, log_base: float = 2.0) -> np.ndarray:
    """
    B_i = log(omega . A_i) over the rows of sorted A, sorted nonincreasing.
    """
    dots = np.array([omega_dot_decreasing(omega, row) for row in A])

    nonpositive = np.nonzero(dots <= 0.0)[0]
    if nonpositive.size:
        idx = int(nonpositive[0])
        raise LogOfNonpositiveException(f"omega . A_i = {dots[idx]:.3e} at row {idx}!")

    return sorted_nonincreasing(np.log(dots) / np.log(log_base))


def admixture_tensors(bases: list[MeasurementBasis], omega: MajVector = None, log_base: float = 2.0,
                      budget: int = DEFAULT_BUDGET,
                      work_budget: int = DEFAULT_WORK_BUDGET) -> AdmixtureTensors:
    """
    Builds A and B; omega defaults to compute_omega on the same bases.
    """
    raw = build_raw_A(bases, work_budget)

    if omega is None:
        omega = compute_omega(bases, budget).omega

    A = np.array([sorted_nonincreasing(row) for row in raw])
    return AdmixtureTensors(raw, A, build_B(A, omega, log_base), omega)


def admixture_bound(bases: list[MeasurementBasis], omega: MajVector = None, log_base: float = 2.0,
                    budget: int = DEFAULT_BUDGET, work_budget: int = DEFAULT_WORK_BUDGET) -> float:
    """
    -(1/N) omega . B, a state-independent lower bound on
    sum_m H(M_m) + (1 - N) S(rho).
    """
    if len(bases) == 2:
        logger.info("admixture bound for N = 2 uses the two degenerate chains")

    tensors = admixture_tensors(bases, omega, log_base, budget, work_budget)
    return -omega_dot_decreasing(tensors.omega, tensors.B) / len(bases)


def chain_average(rho: DensityMatrix, bases: list[MeasurementBasis], tensors: AdmixtureTensors,
                  log_base: float = 2.0) -> float:
    """
    -(1/N) sum_i P_i log(sum_k P_k A_i[k]) with P the tensor product of the
    Born distributions; the state-dependent quantity the admixture bound
    relaxes.
    """
    joint = tensor_product([born_probabilities(rho, basis) for basis in bases]).probs
    inner = tensors.raw @ joint

    support = joint > 0.0
    return float(-np.sum(joint[support] * np.log(inner[support])) / (np.log(log_base) * len(bases)))
