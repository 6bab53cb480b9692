"""
Seeded random bases and states.

All randomness flows from a 64-bit seed through SplitMix64:

    state <- state + 0x9E3779B97F4A7C15 (mod 2^64)
    z <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z <- (z ^ (z >> 27)) * 0x94D049BB133111EB
    output z ^ (z >> 31)

Uniforms take the top 53 bits, Gaussians come from the Box-Muller
transform, so outputs are bit-exact for a given seed.
"""
from __future__ import annotations

import math

import numpy as np

from majbound.components import DensityMatrix, MeasurementBasis
from majbound.exceptions import OutOfRangeException

SEED = 42
MASK_64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """
    Minimal 64-bit generator with uniform and Gaussian draws.
    """

    def __init__(self, seed: int = SEED):
        self.state = int(seed) & MASK_64
        self._spare = None

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK_64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK_64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK_64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """
        Uniform in [0, 1).
        """
        return (self.next_u64() >> 11) * 2.0 ** -53

    def gauss(self) -> float:
        """
        Standard normal; draws come in Box-Muller pairs.
        """
        if self._spare is not None:
            value, self._spare = self._spare, None
            return value

        radius = math.sqrt(-2.0 * math.log(1.0 - self.uniform()))
        angle = 2.0 * math.pi * self.uniform()
        self._spare = radius * math.sin(angle)
        return radius * math.cos(angle)

    def ginibre(self, rows: int, cols: int) -> np.ndarray:
        """
        Complex matrix with independent standard normal real and imaginary
        parts, filled row by row.
        """
        return np.array([[complex(self.gauss(), self.gauss()) for _ in range(cols)]
                         for _ in range(rows)])


def _check_dim(dim: int):
    if dim < 2:
        raise OutOfRangeException(f"Dimension should be at least 2, not {dim}!")


def gram_schmidt(matrix: np.ndarray) -> np.ndarray:
    """
    Orthonormalized columns (modified Gram-Schmidt).
    """
    q = np.array(matrix, dtype=np.complex128)

    for col in range(q.shape[1]):
        for prev in range(col):
            q[:, col] -= np.vdot(q[:, prev], q[:, col]) * q[:, prev]
        q[:, col] /= np.linalg.norm(q[:, col])

    return q


def _basis_from(rng: SplitMix64, dim: int, label: str) -> MeasurementBasis:
    return MeasurementBasis.from_columns(gram_schmidt(rng.ginibre(dim, dim)), label)


def random_basis(dim: int, seed: int = SEED, label: str = 'R') -> MeasurementBasis:
    """
    Orthonormalized Ginibre matrix.
    """
    _check_dim(dim)
    return _basis_from(SplitMix64(seed), dim, label)


def random_bases(dim: int, measurements: int, seed: int = SEED) -> list[MeasurementBasis]:
    """
    N bases drawn one after another from a single stream.
    """
    _check_dim(dim)
    rng = SplitMix64(seed)
    return [_basis_from(rng, dim, f"R{m + 1}") for m in range(measurements)]


def random_state(dim: int, rank: int = None, seed: int = SEED) -> DensityMatrix:
    """
    G G^H / tr(G G^H) with G a dim x rank Ginibre matrix; rank defaults to dim.
    """
    _check_dim(dim)
    rank = dim if rank is None else rank

    if not 1 <= rank <= dim:
        raise OutOfRangeException(f"Rank should lie in [1, {dim}], not {rank}!")

    g = SplitMix64(seed).ginibre(dim, rank)
    gram = g @ g.conj().T
    return DensityMatrix(gram / np.trace(gram).real)


def random_pure_state(dim: int, seed: int = SEED) -> DensityMatrix:
    """
    Rank-one random state.
    """
    return random_state(dim, 1, seed)
