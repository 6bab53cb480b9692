"""
Admixture tensors A and B, the admixture bound and its state-dependent parent.
"""

from itertools import product

import numpy as np
import pytest

from majbound.admixture import (_einsum_subscripts,
                                ChainTensor,
                                admixture_bound,
                                admixture_tensors,
                                build_A,
                                build_B,
                                build_raw_A,
                                build_raw_A_enumerated,
                                chain_average,
                                cyclic_overlaps,
                                sorted_nonincreasing,
                                work_required)
from majbound.channel_bounds import cyclic_orders, state_dependent_I
from majbound.components import DensityMatrix, MajVector, MeasurementBasis
from majbound.exceptions import (LogOfNonpositiveException,
                                 TooFewMeasurementsException,
                                 WorkBudgetExceededException)
from majbound.factory import PaperFamilyParams, ScenarioFactory
from majbound.generators import SplitMix64, random_bases, random_pure_state, random_state
from majbound.majorization import omega_dot_decreasing, shannon_entropy, tensor_product
from majbound.quantum import born_probabilities, von_neumann_entropy


def naive_raw_A(bases) -> np.ndarray:
    """
    Triple loop over (i, k, j) for N = 3.
    """
    dim = bases[0].dim
    c = cyclic_overlaps(bases)
    rows = list(product(range(dim), repeat=3))
    raw = np.zeros((len(rows), len(rows)))

    for r, i in enumerate(rows):
        for s, k in enumerate(rows):
            for j in product(range(dim), repeat=3):
                term = 1.0
                for m in range(3):
                    nxt = (m + 1) % 3
                    term *= c[m][k[m], j[nxt]] * c[nxt][j[nxt], i[(m - 1) % 3]]
                raw[r, s] += term

    return raw


def test_work_required():
    assert work_required(2, 2) == 32
    assert work_required(3, 2) == 1536
    assert work_required(3, 3) == 59049


def test_einsum_subscripts():
    """
    Chain m contracts k_m through the middle j indices into i_{m-1}.
    """
    assert _einsum_subscripts(2) == 'ad,bc->cdab'
    assert _einsum_subscripts(3) == 'ahf,bid,cge->defabc'


def test_sorted_nonincreasing():
    assert list(sorted_nonincreasing([0.2, 0.5, 0.2, 0.1])) == [0.5, 0.2, 0.2, 0.1]


def test_chain_tensor():
    """
    Chains are products of pairwise overlaps along the cyclic path.
    """
    bases = random_bases(2, 3, 17)
    overlaps = cyclic_overlaps(bases)
    chains = ChainTensor(overlaps)

    assert len(chains.values) == 3
    assert chains.values[0].shape == (2, 2, 2)
    assert chains.check_against(overlaps)

    shifted = [overlaps[1], overlaps[2], overlaps[0]]
    assert not chains.check_against(shifted)


def test_raw_A_oracle():
    """
    einsum contraction agrees with the explicit enumeration for d = 2, N = 3.
    """
    for seed in (3, 4):
        bases = random_bases(2, 3, seed)
        assert np.allclose(build_raw_A(bases), naive_raw_A(bases), rtol=0.0, atol=1e-12)
        assert np.allclose(build_raw_A_enumerated(bases), naive_raw_A(bases), rtol=0.0, atol=1e-12)

    bases = ScenarioFactory.paper_three_measurements(PaperFamilyParams(0.3))
    assert np.allclose(build_raw_A(bases), naive_raw_A(bases), rtol=0.0, atol=1e-12)

    for dim in (2, 3):
        bases = random_bases(dim, 2, 20 + dim)
        assert np.allclose(build_raw_A(bases), build_raw_A_enumerated(bases), rtol=0.0, atol=1e-12)

    with pytest.raises(WorkBudgetExceededException):
        build_raw_A_enumerated(random_bases(3, 3, 5), work_budget=5000)


def test_raw_A_rows_sum():
    """
    Every column of a chain is a probability vector, so rows of A sum to 1
    over k for N = 2.
    """
    bases = random_bases(3, 2, 8)
    raw = build_raw_A(bases)

    assert raw.shape == (9, 9)
    assert np.allclose(raw.sum(axis=1), 1.0)


def test_build_A_sorted():
    bases = random_bases(2, 3, 5)
    A = build_A(bases)

    assert A.shape == (8, 8)
    assert np.all(np.diff(A, axis=1) <= 0.0)
    assert np.allclose(np.sort(A, axis=1), np.sort(build_raw_A(bases), axis=1))


def test_build_errors():
    bases = random_bases(2, 3, 5)

    with pytest.raises(WorkBudgetExceededException) as exc_info:
        build_raw_A(bases, work_budget=100)
    assert exc_info.value.required == 1536

    with pytest.raises(TooFewMeasurementsException):
        build_raw_A(bases[:1])

    with pytest.raises(LogOfNonpositiveException):
        build_B(np.zeros((2, 2)), MajVector([1.0]))


def test_identical_bases():
    """
    A is a permutation matrix, omega = (1), the bound vanishes.
    """
    bases = [MeasurementBasis.computational(2) for _ in range(3)]
    tensors = admixture_tensors(bases)

    assert np.allclose(tensors.A[:, 0], 1.0)
    assert np.allclose(tensors.B, 0.0)
    assert admixture_bound(bases) == pytest.approx(0.0, abs=1e-15)


def test_paper_family_values():
    """
    Closed forms in nats at a = 1/2 and a = 1/4.
    """
    bases = ScenarioFactory.paper_three_measurements(PaperFamilyParams(0.5))
    assert admixture_bound(bases, log_base=np.e) == pytest.approx(np.log(2), abs=1e-6)

    omega_1 = ((3 + np.sqrt(7)) / 6) ** 3
    expected = -(omega_1 * np.log(0.3515625 * (omega_1 + (1 - omega_1) / 3))
                 + (1 - omega_1) * np.log(0.28125)) / 3

    bases = ScenarioFactory.paper_three_measurements(PaperFamilyParams(0.25))
    assert expected == pytest.approx(0.393621, abs=1e-6)
    assert admixture_bound(bases, log_base=np.e) == pytest.approx(expected, abs=1e-6)


def test_chain_average_matches_cyclic_I():
    """
    For N = 2 and N = 3 the state-dependent parent is the mean of the cyclic I.
    """
    for n_meas in (2, 3):
        bases = random_bases(3, n_meas, 40 + n_meas)
        rho = random_state(3, seed=41)
        tensors = admixture_tensors(bases)

        cyclic = [state_dependent_I(rho, order.apply(bases)) for order in cyclic_orders(n_meas)]
        assert chain_average(rho, bases, tensors) == pytest.approx(np.mean(cyclic), abs=1e-9)


def test_admixture_soundness():
    """
    LHS >= chain average >= admixture bound, and every A_i . P is below
    omega . A_i, over 200 random instances (50 basis sets x 4 states).
    """
    checked = 0
    for idx in range(50):
        dim, n_meas = 2 + idx % 2, 2 + (idx // 2) % 2
        bases = random_bases(dim, n_meas, 9000 + idx)
        tensors = admixture_tensors(bases)
        bound = -omega_dot_decreasing(tensors.omega, tensors.B) / n_meas

        assert admixture_bound(bases) == pytest.approx(bound, abs=1e-12)

        for rank in range(1, 5):
            rho = random_state(dim, min(rank, dim), seed=9500 + 4 * idx + rank)
            probs = [born_probabilities(rho, basis) for basis in bases]
            joint = tensor_product(probs).probs
            lhs = sum(shannon_entropy(p) for p in probs) + (1 - n_meas) * von_neumann_entropy(rho)

            average = chain_average(rho, bases, tensors)
            assert lhs >= average - 1e-9
            assert average >= bound - 1e-9

            for row, sorted_row in zip(tensors.raw, tensors.A):
                assert float(row @ joint) <= omega_dot_decreasing(tensors.omega, sorted_row) + 1e-9
            checked += 1

    assert checked == 200


def test_admixture_paper_family_sweep():
    """
    All 101 grid points in nats, for the maximally mixed state and a random
    pure state per point.
    """
    for idx, (a, bases) in enumerate(ScenarioFactory.paper_family_grid(np.linspace(0.0, 1.0, 101))):
        bound = admixture_bound(bases, log_base=np.e)

        for rho in (DensityMatrix.maximally_mixed(3), random_pure_state(3, seed=7000 + idx)):
            probs = [born_probabilities(rho, basis) for basis in bases]
            lhs = sum(shannon_entropy(p, np.e) for p in probs) - 2 * von_neumann_entropy(rho, np.e)

            assert lhs >= bound - 1e-9, a


def test_raw_order_does_not_matter():
    """
    Sorting makes A and B independent of the column order of raw A, and
    relabelling the outcomes of every basis keeps the bound.
    """
    bases = random_bases(3, 3, 61)
    tensors = admixture_tensors(bases)
    rng = SplitMix64(62)

    for _ in range(5):
        perm = np.argsort([rng.uniform() for _ in range(tensors.raw.shape[1])])
        shuffled = np.array([sorted_nonincreasing(row) for row in tensors.raw[:, perm]])

        assert np.array_equal(shuffled, tensors.A)
        assert np.array_equal(build_B(shuffled, tensors.omega), tensors.B)

    relabelled = []
    for basis in bases:
        perm = np.argsort([rng.uniform() for _ in range(basis.dim)])
        relabelled.append(MeasurementBasis.from_columns(basis.matrix[:, perm], basis.label))

    assert admixture_bound(relabelled) == pytest.approx(admixture_bound(bases), abs=1e-9)
