"""
Born rule, overlap matrices and von Neumann entropy tests.
"""

import numpy as np
import pytest

from majbound.components import DensityMatrix, MeasurementBasis
from majbound.exceptions import DimensionMismatchException
from majbound.factory import ScenarioFactory
from majbound.generators import random_basis, random_bases, random_state
from majbound.quantum import born_probabilities, overlap_matrix, von_neumann_entropy


def test_born_probabilities():
    """
    Computational and Hadamard statistics of |0>.
    """
    z, x, y = ScenarioFactory.mub_qubit()
    rho = DensityMatrix.pure([1, 0])

    assert np.allclose(born_probabilities(rho, z).probs, [1.0, 0.0])
    assert np.allclose(born_probabilities(rho, x).probs, [0.5, 0.5])
    assert np.allclose(born_probabilities(rho, y).probs, [0.5, 0.5])

    plus_i = DensityMatrix.pure([1, 1j])
    assert np.allclose(born_probabilities(plus_i, y).probs, [1.0, 0.0], atol=1e-12)

    with pytest.raises(DimensionMismatchException):
        born_probabilities(rho, MeasurementBasis.computational(3))


def test_born_probabilities_random():
    """
    Over 200 random state and basis pairs the Born vector is a distribution
    equal to the diagonal of U^H rho U.
    """
    for seed in range(100):
        dim = 2 + seed % 4
        rho = random_state(dim, 1 + seed % dim, seed=seed)

        for basis in random_bases(dim, 2, 500 + seed):
            probs = born_probabilities(rho, basis).probs
            expected = np.real(np.diag(basis.matrix.conj().T @ rho.matrix @ basis.matrix))

            assert probs.min() >= 0.0
            assert probs.sum() == pytest.approx(1.0, abs=1e-12)
            assert np.allclose(probs, expected, atol=1e-12)


def test_overlap_matrix():
    """
    MUB overlaps equal 1/d, random overlaps are doubly stochastic.
    """
    z, x, y = ScenarioFactory.mub_qubit()

    for a, b in ((z, x), (z, y), (x, y)):
        assert np.allclose(overlap_matrix(a, b).entries, 0.5)

    first, second = random_bases(3, 2, 5)
    c = overlap_matrix(first, second).entries
    assert np.allclose(c.sum(axis=0), 1.0)
    assert np.allclose(c.sum(axis=1), 1.0)
    assert np.allclose(overlap_matrix(second, first).entries, c.T)

    with pytest.raises(DimensionMismatchException):
        overlap_matrix(z, MeasurementBasis.computational(3))


def test_von_neumann_entropy():
    """
    Pure states have zero entropy, I/d has log d.
    """
    assert von_neumann_entropy(DensityMatrix.pure([1, 2, 3])) == pytest.approx(0.0, abs=1e-10)
    assert von_neumann_entropy(DensityMatrix.maximally_mixed(4)) == pytest.approx(2.0, abs=1e-12)
    assert von_neumann_entropy(DensityMatrix.maximally_mixed(3), np.e) == \
        pytest.approx(np.log(3), abs=1e-12)

    assert von_neumann_entropy(random_state(3, 3, seed=1)) > 0.0


def test_von_neumann_entropy_unitary_invariance():
    """
    S(U rho U^H) = S(rho), also for d >= 4.
    """
    for seed in range(50):
        dim = 2 + seed % 5
        rho = random_state(dim, 1 + seed % dim, seed=seed)
        u = random_basis(dim, seed=900 + seed).matrix
        rotated = DensityMatrix(u @ rho.matrix @ u.conj().T)

        assert von_neumann_entropy(rotated) == pytest.approx(von_neumann_entropy(rho), abs=1e-9)
        assert von_neumann_entropy(rho) <= np.log2(dim) + 1e-12
