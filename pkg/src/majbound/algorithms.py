"""
Dense complex linear algebra used by majbound: Hermitian eigenvalues by cyclic
Jacobi rotations, top eigenvalue by power iteration, top singular value and
the small matrix helpers around them.

ComplexMatrix values are 2-d numpy arrays of dtype complex128. Every function
returns new arrays and never mutates its input.
"""
from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from majbound.exceptions import NotHermitianException, NoConvergenceException

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-12
POWER_TOL = 1e-10
MAX_SWEEPS = 100
MAX_POWER_STEPS = 10000


def as_matrix(m) -> np.ndarray:
    """
    Returns m as a finite complex128 2-d array (copy).
    """
    matrix = np.array(m, dtype=np.complex128)

    if matrix.ndim == 1:
        matrix = matrix.reshape(-1, 1)

    if matrix.ndim != 2:
        raise ValueError(f"Matrix should be 2-dimensional, not {matrix.ndim}-dimensional!")

    if not np.isfinite(matrix).all():
        raise ValueError("Matrix entries should be finite (no NaN/Inf)!")

    return matrix


def adjoint(m) -> np.ndarray:
    """
    Conjugate transpose.
    """
    return as_matrix(m).conj().T


def matmul(a, b) -> np.ndarray:
    """
    Matrix product a @ b.
    """
    return as_matrix(a) @ as_matrix(b)


def inner_product(u, v) -> complex:
    """
    <u|v>, antilinear in the first argument.
    """
    return complex(np.vdot(np.asarray(u, dtype=np.complex128),
                           np.asarray(v, dtype=np.complex128)))


def check_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL):
    """
    Raises NotHermitianException if m is not square or not conjugate-symmetric within tol.
    """
    rows, cols = m.shape
    if rows != cols:
        raise NotHermitianException(f"Hermitian matrix should be square, not {rows}x{cols}!")

    deviation = float(np.max(np.abs(m - m.conj().T))) if rows else 0.0
    if deviation > tol:
        raise NotHermitianException(f"Matrix is not Hermitian: max |m - m^H| = {deviation:.3e}")


def off_diagonal_mass(m: np.ndarray) -> float:
    """
    Frobenius norm of the off-diagonal part.
    """
    return float(np.linalg.norm(m - np.diag(np.diag(m))))


class HermitianEigenResult:
    """
    Eigenvalues of a Hermitian matrix.

    Args:
        eigenvalues (np.ndarray): real eigenvalues sorted nonincreasing.
        iterations (int): number of full Jacobi sweeps performed.
    """

    def __init__(self, eigenvalues: np.ndarray, iterations: int):
        self.eigenvalues = eigenvalues
        self.iterations = iterations

    def top(self) -> float:
        """
        Largest eigenvalue.
        """
        return float(self.eigenvalues[0])

    def __len__(self):
        return len(self.eigenvalues)


class EigenvalueTemplate(ABC):
    """
    Abstract class for Hermitian eigenvalue routines. Validates the input and
    keeps a private working copy; subclasses implement run.
    """
    def __init__(self, m, tol: float):
        self.matrix = as_matrix(m)
        check_hermitian(self.matrix)
        self.tol = tol
        self.dim = self.matrix.shape[0]
        self.iterations = 0


    def exec(self):
        """
        Executes the routine on the validated matrix.
        """
        return self.run()

    @abstractmethod
    def run(self):
        """
        Abstract runner, used by exec method
        """


class JacobiEigenvalueAlgorithm(EigenvalueTemplate):
    """
    Cyclic Jacobi rotations for complex Hermitian matrices.

    Each rotation first removes the phase of a[p, q] with diag(1, e^{-i theta}),
    then applies the real symmetric Jacobi rotation that zeroes the pair.
    Unitary similarity keeps the trace, so the eigenvalue sum equals trace(m).
    """

    def __init__(self, m, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS):
        super().__init__(m, tol)
        self.max_sweeps = max_sweeps
        # the real part of the diagonal is what survives; imaginary parts are < 1e-10
        self.a = (self.matrix + self.matrix.conj().T) / 2


    def _rotate(self, p: int, q: int, threshold: float):
        a = self.a
        apq = a[p, q]
        r = abs(apq)

        if r <= threshold:
            return

        phase = np.conj(apq) / r
        app, aqq = a[p, p].real, a[q, q].real

        theta = (aqq - app) / (2.0 * r)
        t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
        c = 1.0 / np.sqrt(t * t + 1.0)
        s = t * c

        rotation = np.array([[c, s], [-s * phase, c * phase]], dtype=np.complex128)
        idx = [p, q]

        a[:, idx] = a[:, idx] @ rotation
        a[idx, :] = rotation.conj().T @ a[idx, :]

        a[p, q] = a[q, p] = 0.0
        a[p, p] = app - t * r
        a[q, q] = aqq + t * r


    def run(self) -> HermitianEigenResult:
        """
        Sweeps all (p, q) pairs until the off-diagonal mass drops below
        tol * max(1, ||m||_F).
        """
        target = self.tol * max(1.0, float(np.linalg.norm(self.a)))
        # an off-diagonal part made only of entries below threshold is below target
        threshold = target / max(self.dim * self.dim, 1)

        while off_diagonal_mass(self.a) >= target:
            if self.iterations >= self.max_sweeps:
                raise NoConvergenceException(f"Jacobi did not converge in {self.max_sweeps} sweeps!")

            for p in range(self.dim - 1):
                for q in range(p + 1, self.dim):
                    self._rotate(p, q, threshold)

            self.iterations += 1

        eigenvalues = np.sort(np.real(np.diag(self.a)))[::-1].copy()
        return HermitianEigenResult(eigenvalues, self.iterations)


class PowerIterationAlgorithm(EigenvalueTemplate):
    """
    Power iteration on m + shift * I, shift taken from the Gershgorin discs so
    that the shifted matrix is positive semidefinite and its dominant
    eigenvalue is the top one. Returns the Rayleigh quotient minus the shift.
    """

    def __init__(self, m, tol: float = POWER_TOL, max_steps: int = MAX_POWER_STEPS):
        super().__init__(m, tol)
        self.max_steps = max_steps


    def shift(self) -> float:
        """
        Smallest nonnegative shift making every Gershgorin disc nonnegative.
        """
        radii = np.sum(np.abs(self.matrix), axis=1) - np.abs(np.diag(self.matrix))
        lowest = float(np.min(np.real(np.diag(self.matrix)) - radii))
        return max(0.0, -lowest)


    def run(self) -> float:
        """
        Iterates until the eigen-residual drops below tol * max(1, |lambda|).
        """
        n = self.dim
        shift = self.shift()
        shifted = self.matrix + shift * np.eye(n)

        x = np.linspace(1.0, 2.0, n) + 0.5j * np.linspace(0.0, 1.0, n)
        x = x / np.linalg.norm(x)
        lam = 0.0

        for step in range(1, self.max_steps + 1):
            y = shifted @ x
            y_norm = np.linalg.norm(y)

            if y_norm == 0.0:
                # m + shift * I vanishes on x only if the whole matrix is -shift * I
                return -shift

            lam = float(np.real(np.vdot(x, y)))
            x = y / y_norm
            residual = np.linalg.norm(shifted @ x - lam * x)
            self.iterations = step

            if residual < self.tol * max(1.0, abs(lam)):
                return float(np.real(np.vdot(x, shifted @ x))) - shift

        raise NoConvergenceException(f"Power iteration did not converge in {self.max_steps} steps!")


def hermitian_eigenvalues(m, tol: float = JACOBI_TOL) -> HermitianEigenResult:
    """
    All eigenvalues of a Hermitian matrix, sorted nonincreasing.
    """
    return JacobiEigenvalueAlgorithm(m, tol).exec()


def top_eigenvalue(m, method: str = 'exact', tol: float = None) -> float:
    """
    Largest eigenvalue of a Hermitian matrix.

    Args:
        - method (str): 'exact' (Jacobi) or 'power' (shifted power iteration).
    """
    if method == 'exact':
        return hermitian_eigenvalues(m, JACOBI_TOL if tol is None else tol).top()

    if method == 'power':
        return PowerIterationAlgorithm(m, POWER_TOL if tol is None else tol).exec()

    raise ValueError(f"method should be 'exact' or 'power', not {method!r}!")


def top_singular_value(m) -> float:
    """
    Largest singular value, from the smaller of the two Gram matrices.
    """
    matrix = as_matrix(m)
    rows, cols = matrix.shape

    if rows == 0 or cols == 0:
        return 0.0

    gram = matrix @ matrix.conj().T if rows <= cols else matrix.conj().T @ matrix
    gram = (gram + gram.conj().T) / 2

    return float(np.sqrt(max(top_eigenvalue(gram), 0.0)))
