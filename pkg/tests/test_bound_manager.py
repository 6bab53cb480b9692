# pylint: disable=redefined-outer-name
"""
majbound bound_manager tests.
"""

import os
import logging

import numpy as np
import pytest

from majbound.bound_manager import (BoundManager,
                                    ScenarioConfig,
                                    SYMMETRIZED_BASELINE_NOTE,
                                    TWO_MEASUREMENT_ADMIXTURE_FLAG,
                                    TWO_MEASUREMENT_ADMIXTURE_NOTE,
                                    bound_report)
from majbound.components import BoundReport, DensityMatrix
from majbound.exceptions import (BudgetExceededException,
                                 InvalidBasisException,
                                 InvalidConfigException,
                                 NoConvergenceException,
                                 TooManyMeasurementsException,
                                 WorkBudgetExceededException)
from majbound.factory import ScenarioFactory
from majbound.majorization_bounds import DEFAULT_BUDGET

CONFIGS_PATH = 'tests/configs'


@pytest.fixture()
def config_text():
    """
    Reads raw JSON scenario files from tests/configs directory.
    Malformed files are kept as text, so every test parses them itself.
    """
    texts = {}

    for file_name in os.listdir(CONFIGS_PATH):
        with open(f"{CONFIGS_PATH}/{file_name}", 'r', encoding='utf-8') as file:
            texts[file_name.split('.')[0]] = file.read()

    yield texts


@pytest.fixture()
def config(config_text):
    """
    Parsed ScenarioConfig by file name.
    """
    yield lambda name: ScenarioConfig.from_text(config_text[name], f'{name}.json')


def test_config_defaults():
    """
    An empty document takes every default.
    """
    cfg = ScenarioConfig({})

    assert cfg.source == {'kind': 'mub_qubit', 'measurements': 3}
    assert cfg.state == {'kind': 'maximally_mixed'}
    assert cfg.bounds == ['H_omega', 'liu_b']
    assert cfg.log_base == 2.0
    assert cfg.budget == DEFAULT_BUDGET
    assert cfg.output == 'stdout'
    assert cfg.workers == 1
    assert cfg.omega_hat_pairs == 'all'


def test_invalid_configs(config):
    """
    Syntax errors carry line and column, schema errors the key path.
    """
    with pytest.raises(InvalidConfigException) as exc_info:
        config('c4_malformed')
    assert str(exc_info.value).startswith('c4_malformed.json:3:')

    with pytest.raises(InvalidConfigException) as exc_info:
        ScenarioConfig.from_json(f'{CONFIGS_PATH}/c4_malformed.json')
    assert str(exc_info.value).startswith(f'{CONFIGS_PATH}/c4_malformed.json:3:')

    with pytest.raises(InvalidConfigException) as exc_info:
        config('c5_unknown_bound')
    assert str(exc_info.value).startswith('$.bounds[1]')

    with pytest.raises(InvalidConfigException) as exc_info:
        config('c6_state_none_with_I')
    assert 'cyclic_average_I' in str(exc_info.value)

    for data, path in (({'sauce': {}}, '$'),
                       ({'log_base': 10}, '$.log_base'),
                       ({'source': {'kind': 'grid'}}, '$.source.kind'),
                       ({'source': {'kind': 'explicit', 'bases': [[[[1, 0]]]]}}, '$.source.bases'),
                       ({'state': {'kind': 'thermal'}}, '$.state.kind'),
                       ({'workers': 0}, '$.workers'),
                       ({'budget': {'enumeration': 'many'}}, '$.budget.enumeration'),
                       ({'omega_hat_pairs': 'ring'}, '$.omega_hat_pairs')):
        with pytest.raises(InvalidConfigException) as exc_info:
            ScenarioConfig(data)
        assert str(exc_info.value).startswith(path)

    with pytest.raises(InvalidConfigException):
        ScenarioConfig.from_json(f'{CONFIGS_PATH}/missing.json')


def test_grid_parsing():
    """
    start/stop/step grids include both ends.
    """
    cfg = ScenarioConfig({'source': {'kind': 'paper_family',
                                     'a_grid': {'start': 0, 'stop': 1, 'step': 0.25}}})
    assert cfg.source['a_grid'] == [0.0, 0.25, 0.5, 0.75, 1.0]

    grid = ScenarioConfig({'source': {'kind': 'paper_family'}}).source['a_grid']
    assert len(grid) == 101
    assert grid[1] == 0.01 and grid[-1] == 1.0

    with pytest.raises(InvalidConfigException):
        ScenarioConfig({'source': {'kind': 'paper_family',
                                   'a_grid': {'start': 1, 'stop': 0, 'step': 0.1}}})


def test_source_ranges(config):
    """
    Grid values, measurement counts, dimensions and explicit states are
    checked against the source before any basis is built.
    """
    for name, path in (('c12_a_grid_out_of_range', '$.source.a_grid'),
                       ('c13_mub_four_measurements', '$.source.measurements'),
                       ('c14_random_dim_one', '$.source.dim'),
                       ('c15_random_one_measurement', '$.source.measurements'),
                       ('c16_state_dimension_mismatch', '$.state.matrix')):
        with pytest.raises(InvalidConfigException) as exc_info:
            config(name)
        assert str(exc_info.value).startswith(path)

    with pytest.raises(InvalidConfigException) as exc_info:
        ScenarioConfig({'verify': {'dims': [1, 2]}})
    assert str(exc_info.value).startswith('$.verify.dims')

    assert config('c17_mub_pair_admixture').dimension() == 2
    assert config('c17_mub_pair_admixture').measurements() == 2
    assert ScenarioConfig({'source': {'kind': 'paper_family'}}).measurements() == 3


def test_overrides(config):
    """
    CLI values replace the file ones, including nested seeds.
    """
    cfg = config('c3_random_entropies').apply_overrides(log_base='e', budget=50, seed=5,
                                                        output='out.csv')

    assert cfg.log_base == pytest.approx(np.e)
    assert cfg.budget == 50
    assert cfg.source['seed'] == 5 and cfg.state['seed'] == 5
    assert cfg.output == 'out.csv'

    assert config('c2_paper_family_small').apply_overrides(log_base='2').log_base == 2.0


def test_bound_report_mub_pair():
    """
    Maximally mixed qubit, Z and X: LHS = 1 bit, Maassen-Uffink and
    Coles-Piani are tight.
    """
    bases = ScenarioFactory.mub_qubit(2)
    report = bound_report(DensityMatrix.maximally_mixed(2), bases,
                          ['deutsch', 'maassen_uffink', 'coles_piani', 'liu_b', 'H_omega'])

    assert report[BoundReport.LHS] == pytest.approx(1.0, abs=1e-12)
    assert report['maassen_uffink'] == pytest.approx(1.0, abs=1e-12)
    assert report['coles_piani'] == pytest.approx(1.0, abs=1e-12)
    assert report['deutsch'] == pytest.approx(0.4569, abs=1e-4)
    assert report['liu_b'] == pytest.approx(1.0, abs=1e-12)
    assert report['entropy_sum'] == pytest.approx(2.0)
    assert report.targets['H_omega'] == 'entropy_sum'
    assert not report.violations()

    with pytest.raises(TooManyMeasurementsException):
        bound_report(None, ScenarioFactory.mub_qubit(3), ['coles_piani'])


def test_bound_report_without_state():
    """
    State-independent bounds only; nothing to compare against.
    """
    bases = ScenarioFactory.mub_qubit(3)
    report = bound_report(None, bases, ['H_omega_simple', 'liu_b', 'H_omega_simple_plus_log_b'])

    assert BoundReport.LHS not in report
    assert report['H_omega_simple_plus_log_b'] == \
        pytest.approx(report['H_omega_simple'] - report['liu_b'])
    assert not report.sound['H_omega_simple_plus_log_b']
    assert not report.violations()


def test_bound_report_random_entropies(config):
    """
    Every sound entry stays below its target.
    """
    manager = BoundManager(config('c3_random_entropies'))
    params, bases = manager.scenarios()[0]
    cfg = manager.config

    assert params == {'seed': 7}
    report = bound_report(DensityMatrix(np.diag([0.6, 0.4])), bases, cfg.bounds)

    for name in ('entropy_sum', 'renyi_entropy_sum', 'tsallis_joint'):
        assert name in report
    assert report.targets['tsallis_omega'] == 'tsallis_joint'
    assert not report.violations()

    rows = manager.run_compare()
    assert len(rows) == 1
    assert list(rows[0])[:2] == ['seed', BoundReport.LHS]
    assert rows[0]['H_omega'] <= rows[0]['entropy_sum'] + 1e-9


def test_admixture_two_measurement_flag(config):
    """
    N = 2 admixture entries carry the extension flag in their provenance
    and in the table header.
    """
    report = bound_report(DensityMatrix.maximally_mixed(2), ScenarioFactory.mub_qubit(2),
                          ['admixture'])
    assert report.provenance['admixture'].endswith(TWO_MEASUREMENT_ADMIXTURE_FLAG)
    assert not report.violations()

    report = bound_report(None, ScenarioFactory.mub_qubit(3), ['admixture'])
    assert TWO_MEASUREMENT_ADMIXTURE_FLAG not in report.provenance['admixture']

    assert TWO_MEASUREMENT_ADMIXTURE_NOTE in BoundManager(config('c17_mub_pair_admixture')).header()
    assert TWO_MEASUREMENT_ADMIXTURE_NOTE not in \
        BoundManager(config('c2_paper_family_small')).header()


def test_compare_paper_family(config, caplog):
    """
    admixture equals -ln b_min = ln 2 at a = 1/2 and drops below it at a = 1/4.
    """
    manager = BoundManager(config('c2_paper_family_small'))
    rows = manager.run_compare()

    assert [row['a'] for row in rows] == [0.25, 0.5]
    assert rows[1]['admixture'] == pytest.approx(np.log(2), abs=1e-6)
    assert rows[1]['liu_b_min'] == pytest.approx(np.log(2), abs=1e-12)
    assert rows[0]['liu_b_min'] == pytest.approx(-np.log(21 / 32), abs=1e-12)
    assert rows[0]['admixture_minus_liu_b_min'] < 0.0
    assert any('below -log b_min' in record.getMessage() for record in caplog.records
               if record.levelno == logging.WARNING)

    for row in rows:
        assert row[BoundReport.LHS] == pytest.approx(np.log(3), abs=1e-12)
        assert row['cyclic_average_I'] <= row[BoundReport.LHS] + 1e-9

    assert SYMMETRIZED_BASELINE_NOTE in manager.header()


def test_compare_workers(config):
    """
    A process pool gives the same rows as the serial loop.
    """
    serial = BoundManager(config('c2_paper_family_small')).run_compare()

    cfg = config('c2_paper_family_small')
    cfg.workers = 2
    parallel = BoundManager(cfg).run_compare()

    assert [row.keys() for row in parallel] == [row.keys() for row in serial]
    for left, right in zip(parallel, serial):
        assert left == pytest.approx(right, abs=1e-12)


def test_budget_errors(config):
    with pytest.raises(BudgetExceededException) as exc_info:
        BoundManager(config('c8_tiny_budget')).run_compare()
    assert exc_info.value.required == 27

    with pytest.raises(WorkBudgetExceededException) as exc_info:
        BoundManager(config('c9_tiny_work_budget')).run_compare()
    assert exc_info.value.required == 1536


def test_omega_summary():
    """
    Qubit MUB pair summary.
    """
    summary = BoundManager(ScenarioConfig({'source': {'kind': 'mub_qubit', 'measurements': 2}}))\
        .omega_summary()

    assert len(summary) == 1
    assert summary[0]['omega'] == pytest.approx([0.72855, 0.27145], abs=1e-4)
    assert summary[0]['H_omega'] == pytest.approx(0.8435, abs=1e-3)
    assert summary[0]['H_omega'] >= summary[0]['H_omega_simple'] - 1e-12
    assert summary[0]['enumeration_count'] == 8


def test_verify(config):
    """
    Every property holds on the seeded instances.
    """
    report = BoundManager(config('c11_verify_small')).run_verify()

    assert report.passed
    for name in ('born_majorized_by_omega', 'omega_majorized_by_omega_hat',
                 'omega_majorized_by_omega_simple', 'entropy_chain', 'admixture_soundness',
                 'chain_average_identity', 'channel_chain', 'liu_b_oracle', 'chain_tensor',
                 'raw_A_oracle'):
        assert report.results[name]['checked'] == 6
    assert report.results['two_measurement_order']['checked'] == 3
    assert report.results['s_k_two_measurement_oracle']['passed']
    assert 'basis_invariants' not in report.results


def test_verify_records_instance_errors(config, monkeypatch):
    """
    A numerical failure is the counterexample of the properties that need
    it; the remaining properties and instances still run.
    """
    def no_convergence(*args, **kwargs):
        raise NoConvergenceException("Jacobi did not converge in 100 sweeps!")

    monkeypatch.setattr('majbound.bound_manager.compute_omega', no_convergence)
    report = BoundManager(config('c11_verify_small')).run_verify()

    assert not report.passed
    failed = report.results['born_majorized_by_omega']
    assert failed['checked'] == 6
    assert failed['counterexample']['error'].startswith('NoConvergenceException')
    assert failed['counterexample']['seed'] == 123
    assert not report.results['admixture_soundness']['passed']

    for name in ('liu_b_oracle', 'channel_chain', 'chain_tensor', 'raw_A_oracle'):
        assert report.results[name]['passed']
        assert report.results[name]['checked'] == 6


def test_verify_non_orthogonal(config):
    """
    Broken explicit bases fail the basis invariant property.
    """
    manager = BoundManager(config('c7_non_orthogonal'))

    with pytest.raises(InvalidBasisException):
        manager.scenarios()

    report = manager.run_verify()
    assert not report.passed
    assert not report.results['basis_invariants']['passed']
    assert 'orthogonal' in report.results['basis_invariants']['counterexample']['error']
