"""
Born-rule statistics, pairwise overlaps and von Neumann entropy.
"""
import logging

import numpy as np

from majbound.components import DensityMatrix, MeasurementBasis, OverlapMatrix, ProbVector
from majbound.exceptions import DimensionMismatchException, NotNormalizedException

logger = logging.getLogger(__name__)

BORN_NEGATIVITY_TOL = 1e-12


def _log(values, log_base: float):
    return np.log(values) / np.log(log_base)


def born_probabilities(rho: DensityMatrix, basis: MeasurementBasis) -> ProbVector:
    """
    p_i = <u_i|rho|u_i> for every vector of the basis.

    Slightly negative values (down to -1e-12) are clamped to 0 and the
    vector renormalized.
    """
    if rho.dim != basis.dim:
        raise DimensionMismatchException(f"State of dimension {rho.dim} cannot be measured "
                                         f"in basis {basis.label!r} of dimension {basis.dim}!")

    u = basis.matrix
    probs = np.real(np.einsum('ix,ij,jx->x', u.conj(), rho.matrix, u))

    if probs.min() < -BORN_NEGATIVITY_TOL:
        raise NotNormalizedException(f"Born probability {probs.min():.3e} is negative!")

    if probs.min() < 0.0 or probs.max() > 1.0:
        logger.debug("clamping Born probabilities %s", probs)
        probs = np.clip(probs, 0.0, 1.0)

    return ProbVector(probs / probs.sum())


def overlap_matrix(a: MeasurementBasis, b: MeasurementBasis) -> OverlapMatrix:
    """
    c(a_x, b_y) = |<a_x|b_y>|^2, rows indexed by a, columns by b.
    """
    if a.dim != b.dim:
        raise DimensionMismatchException(f"Bases {a.label!r} and {b.label!r} have different "
                                         f"dimensions: {a.dim} != {b.dim}")

    return OverlapMatrix(np.abs(a.matrix.conj().T @ b.matrix) ** 2)


def von_neumann_entropy(rho: DensityMatrix, log_base: float = 2.0) -> float:
    """
    -sum lambda log lambda over the eigenvalues of rho, 0 log 0 := 0.
    """
    lam = np.clip(rho.eigenvalues, 0.0, None)
    lam = lam[lam > 0.0]
    return float(max(-np.sum(lam * _log(lam, log_base)), 0.0))
