"""
Module consists of the value classes passed between majbound operations:
MeasurementBasis, DensityMatrix, ProbVector, MajVector, OverlapMatrix,
SubsetChoice, MeasurementOrder, OmegaResult and BoundReport.

All of them validate their invariants on construction and are not mutated
afterwards.
"""
from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from majbound.algorithms import as_matrix, check_hermitian, hermitian_eigenvalues
from majbound.exceptions import (InvalidBasisException,
                                 InvalidDensityMatrixException,
                                 InvalidChoiceException,
                                 NotHermitianException,
                                 NotNormalizedException,
                                 OutOfRangeException)

BASIS_TOL = 1e-10
STATE_TOL = 1e-10
NORMALIZATION_TOL = 1e-10
NEGATIVITY_TOL = 1e-12


class MeasurementBasis:
    """
    Orthonormal basis of C^d, the eigenvectors of one projective measurement.

    Args:
        vectors (list): d vectors of length d (rows of the input are the vectors).
        label (str): human readable name used in reports.

    Note: internally the vectors are stored as the columns of a unitary matrix.
    """

    def __init__(self, vectors, label: str = ''):
        rows = as_matrix(vectors)
        count, dim = rows.shape

        if count != dim:
            raise InvalidBasisException(f"Basis {label!r} should have {dim} vectors, not {count}!")

        self.dim = dim
        self.label = label
        self.matrix = rows.T.copy()
        self.matrix.setflags(write=False)

        for idx in range(dim):
            norm = np.linalg.norm(self.matrix[:, idx])
            if abs(norm - 1.0) > BASIS_TOL:
                raise InvalidBasisException(f"Vector {idx} of basis {label!r} has norm {norm:.12f}!")

        for x, y in combinations(range(dim), 2):
            overlap = abs(np.vdot(self.matrix[:, x], self.matrix[:, y]))
            if overlap > BASIS_TOL:
                raise InvalidBasisException(f"Vectors ({x}, {y}) of basis {label!r} are not "
                                            f"orthogonal: |<u_x|u_y>| = {overlap:.3e}")

    @classmethod
    def from_columns(cls, unitary, label: str = '') -> "MeasurementBasis":
        """
        Basis from the columns of a unitary matrix.
        """
        return cls(as_matrix(unitary).T, label)

    @classmethod
    def computational(cls, dim: int, label: str = 'Z') -> "MeasurementBasis":
        """
        Standard basis of C^dim.
        """
        return cls(np.eye(dim), label)

    def vector(self, idx: int) -> np.ndarray:
        """
        Basis vector idx as 1-d array.
        """
        return self.matrix[:, idx]

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"MeasurementBasis(label={self.label!r}, dim={self.dim})"


class DensityMatrix:
    """
    Quantum state: d x d Hermitian, positive semidefinite, unit-trace matrix.
    """

    def __init__(self, matrix):
        m = as_matrix(matrix)

        try:
            check_hermitian(m, STATE_TOL)
        except NotHermitianException as exc:
            raise InvalidDensityMatrixException(str(exc)) from exc

        trace = complex(np.trace(m))
        if abs(trace - 1.0) > STATE_TOL:
            raise InvalidDensityMatrixException(f"Density matrix trace should be 1, not {trace}!")

        self.dim = m.shape[0]
        self.matrix = (m + m.conj().T) / 2
        self.matrix.setflags(write=False)
        self.eigenvalues = hermitian_eigenvalues(self.matrix).eigenvalues

        if self.eigenvalues[-1] < -STATE_TOL:
            raise InvalidDensityMatrixException(f"Density matrix has negative eigenvalue "
                                                f"{self.eigenvalues[-1]:.3e}!")

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        """
        I / dim.
        """
        return cls(np.eye(dim) / dim)

    @classmethod
    def pure(cls, psi) -> "DensityMatrix":
        """
        |psi><psi| for a (not necessarily normalized) nonzero vector psi.
        """
        vec = np.asarray(psi, dtype=np.complex128).ravel()
        vec = vec / np.linalg.norm(vec)
        return cls(np.outer(vec, vec.conj()))

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


def _clamped_distribution(values, kind: str) -> np.ndarray:
    probs = np.array(values, dtype=float).ravel()

    if probs.size == 0:
        raise NotNormalizedException(f"{kind} cannot be empty!")

    if not np.isfinite(probs).all():
        raise NotNormalizedException(f"{kind} entries should be finite!")

    if probs.min() < -NEGATIVITY_TOL:
        raise NotNormalizedException(f"{kind} has negative entry {probs.min():.3e}!")

    total = probs.sum()
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NotNormalizedException(f"{kind} should sum to 1, not {total:.15f}!")

    if probs.min() < 0.0:
        probs = np.clip(probs, 0.0, None)
        probs = probs / probs.sum()

    return probs


class ProbVector:
    """
    Probability distribution: nonnegative entries summing to 1 within 1e-10.
    Entries down to -1e-12 are clamped to 0 and the vector renormalized.
    """

    def __init__(self, probs):
        self.probs = _clamped_distribution(probs, 'ProbVector')
        self.probs.setflags(write=False)

    def __len__(self):
        return len(self.probs)

    def __iter__(self):
        return iter(self.probs)

    def __getitem__(self, idx):
        return self.probs[idx]

    def __repr__(self):
        return f"ProbVector({np.array2string(self.probs, precision=6)})"


class MajVector:
    """
    Majorization bound vector kept in construction order (consecutive
    differences of the Omega partial sums), never resorted.

    short_form is the logical length before the implicit zero tail.
    """

    def __init__(self, entries):
        self.entries = _clamped_distribution(entries, 'MajVector')
        self.entries.setflags(write=False)

        nonzero = np.nonzero(self.entries)[0]
        self.short_form = int(nonzero[-1]) + 1 if nonzero.size else 0

    @classmethod
    def from_partial_sums(cls, partial_sums) -> "MajVector":
        """
        (Omega_1, Omega_2 - Omega_1, ..., 1 - Omega_a) from nondecreasing partial sums
        whose last value is 1.
        """
        sums = np.asarray(partial_sums, dtype=float)
        return cls(np.diff(np.concatenate(([0.0], sums))))

    def short(self) -> np.ndarray:
        """
        Entries without the zero tail.
        """
        return self.entries[:self.short_form]

    def padded(self, length: int) -> np.ndarray:
        """
        Entries zero-padded (or checked) to the given length.
        """
        short = self.short()
        if length < len(short):
            raise ValueError(f"MajVector of short length {len(short)} cannot be padded to {length}!")
        return np.concatenate((short, np.zeros(length - len(short))))

    def partial_sums(self) -> np.ndarray:
        """
        Omega_k for k = 1..short_form.
        """
        return np.cumsum(self.short())

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, idx):
        return self.entries[idx]

    def __repr__(self):
        return f"MajVector({np.array2string(self.short(), precision=6)})"


class OverlapMatrix:
    """
    Doubly stochastic matrix of overlaps c(a_x, b_y) = |<a_x|b_y>|^2 between two bases.
    Rows index the first basis, columns the second.
    """

    def __init__(self, entries):
        matrix = np.array(entries, dtype=float)

        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise OutOfRangeException(f"Overlap matrix should be square, not {matrix.shape}!")

        if matrix.min() < -NEGATIVITY_TOL or matrix.max() > 1.0 + NEGATIVITY_TOL:
            raise OutOfRangeException("Overlap entries should lie in [0, 1]!")

        for axis, name in ((1, 'row'), (0, 'column')):
            sums = matrix.sum(axis=axis)
            worst = int(np.argmax(np.abs(sums - 1.0)))
            if abs(sums[worst] - 1.0) > NORMALIZATION_TOL:
                raise OutOfRangeException(f"Overlap {name} {worst} sums to {sums[worst]:.15f}, not 1!")

        self.entries = np.clip(matrix, 0.0, 1.0)
        self.entries.setflags(write=False)

    def largest(self) -> float:
        """
        c_1, the largest overlap.
        """
        return float(self.entries.max())

    def second_largest(self) -> float:
        """
        c_2, the second entry of all overlaps sorted nonincreasing (with multiplicity).
        """
        flat = np.sort(self.entries.ravel())[::-1]
        return float(flat[1]) if flat.size > 1 else float(flat[0])

    def __repr__(self):
        return f"OverlapMatrix({np.array2string(self.entries, precision=6)})"


class SubsetChoice:
    """
    One subset of basis-vector indices per measurement.

    Args:
        subsets (list[list[int]]): strictly increasing 0-based indices, one list per measurement.
    """

    def __init__(self, subsets):
        self.subsets = tuple(tuple(int(idx) for idx in subset) for subset in subsets)

        if not self.subsets:
            raise InvalidChoiceException("SubsetChoice needs at least one measurement!")

        for m, subset in enumerate(self.subsets):
            if not subset:
                raise InvalidChoiceException(f"Subset of measurement {m} cannot be empty!")
            if any(x >= y for x, y in zip(subset, subset[1:])):
                raise InvalidChoiceException(f"Subset of measurement {m} should be strictly "
                                             f"increasing, not {subset}!")

        self.sizes = tuple(len(subset) for subset in self.subsets)

    @property
    def k(self) -> int:
        """
        k such that sum of sizes = k + N - 1.
        """
        return sum(self.sizes) - len(self.sizes) + 1

    def validate(self, dim: int, measurements: int):
        """
        Checks the choice against N bases of dimension dim.
        """
        if len(self.subsets) != measurements:
            raise InvalidChoiceException(f"Choice has {len(self.subsets)} subsets "
                                         f"for {measurements} measurements!")

        for m, subset in enumerate(self.subsets):
            if subset[0] < 0 or subset[-1] >= dim or len(subset) > dim:
                raise InvalidChoiceException(f"Subset {subset} of measurement {m} "
                                             f"does not fit dimension {dim}!")

    def __repr__(self):
        return f"SubsetChoice({self.subsets})"


class MeasurementOrder:
    """
    Order in which the measurements enter a channel bound.

    Args:
        perm (tuple[int]): 0-based permutation of range(N).
    """

    def __init__(self, perm):
        self.perm = tuple(int(x) for x in perm)

        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"{self.perm} is not a permutation of range({len(self.perm)})!")

    def apply(self, items: list) -> list:
        """
        Reorders items: result[t] = items[perm[t]].
        """
        return [items[idx] for idx in self.perm]

    def __eq__(self, other):
        return isinstance(other, MeasurementOrder) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __lt__(self, other):
        return self.perm < other.perm

    def __str__(self):
        return '(' + ' '.join(str(idx + 1) for idx in self.perm) + ')'

    def __repr__(self):
        return f"MeasurementOrder{self.perm}"


class OmegaResult:
    """
    Majorization bound together with the quantities it was built from.

    Args:
        s (list[float]): s_k (or 1 + s_hat_k) for k = 1..a+1.
        omega_values (list[float]): Omega_k, nondecreasing, last one equal to 1.
        omega (MajVector): short-form bound vector.
        a (int): number of Omega values below 1.
        enumeration_count (int): subset choices examined.
        kind (str): 'omega', 'omega_hat' or 'omega_simple'.
    """

    def __init__(self, s, omega_values, omega: MajVector, a: int,
                 enumeration_count: int, kind: str = 'omega'):
        self.s = list(s)
        self.omega_values = list(omega_values)
        self.omega = omega
        self.a = a
        self.enumeration_count = enumeration_count
        self.kind = kind

    def __repr__(self):
        return (f"OmegaResult(kind={self.kind!r}, a={self.a}, "
                f"omega={np.array2string(self.omega.short(), precision=6)})")


class BoundReport:
    """
    Named bound values for one scenario.

    Args:
        log_base (float): 2 or e.
    Note: every entry remembers whether it depends on the state, which
          formula produced it and which entry it bounds from below
          (entropy_sum_lhs unless stated otherwise). Entries with
          sound=False are diagnostics and never checked.
    """

    LHS = 'entropy_sum_lhs'

    def __init__(self, log_base: float = 2.0):
        self.log_base = log_base
        self.values = {}
        self.state_dependent = {}
        self.provenance = {}
        self.sound = {}
        self.targets = {}


    def add(self, name: str, value: float, state_dependent: bool = False,
            provenance: str = '', sound: bool = True, target: str = LHS):
        """
        Registers one bound value.
        """
        if not math.isfinite(value):
            raise ValueError(f"Bound {name!r} is not finite: {value}")

        self.values[name] = float(value)
        self.state_dependent[name] = state_dependent
        self.provenance[name] = provenance
        self.sound[name] = sound
        self.targets[name] = target


    def violations(self, tol: float = 1e-9) -> dict:
        """
        Sound entries exceeding their target entry by more than tol, as
        {name: excess}. Entries whose target is absent are skipped.
        """
        return {name: value - self.values[self.targets[name]]
                for name, value in self.values.items()
                if self.sound[name] and self.targets[name] in self.values
                and name != self.targets[name]
                and value > self.values[self.targets[name]] + tol}

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    def __contains__(self, name: str):
        return name in self.values

    def as_dict(self) -> dict:
        """
        Plain dict of values.
        """
        return dict(self.values)
