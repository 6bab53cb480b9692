"""
Scenario configuration and orchestration of bound computations.

ScenarioConfig parses and validates a JSON scenario description; BoundManager
turns it into sweep rows (compare), property checks (verify) or omega
summaries (omega).
"""
from __future__ import annotations

import json
import logging
import multiprocessing

import numpy as np

from majbound.admixture import (DEFAULT_WORK_BUDGET,
                                ChainTensor,
                                admixture_bound,
                                admixture_tensors,
                                build_raw_A,
                                build_raw_A_enumerated,
                                chain_average,
                                cyclic_overlaps,
                                work_required)
from majbound.channel_bounds import (average_I,
                                     coles_piani_bound,
                                     cyclic_orders,
                                     deutsch_bound,
                                     liu_b,
                                     liu_b_enumerated,
                                     liu_b_min,
                                     maassen_uffink_bound,
                                     state_dependent_I)
from majbound.components import BoundReport, DensityMatrix, MeasurementBasis
from majbound.exceptions import (DegenerateChainException,
                                 InvalidBasisException,
                                 InvalidConfigException,
                                 LogOfNonpositiveException,
                                 NoConvergenceException,
                                 NotNormalizedException,
                                 TooManyMeasurementsException)
from majbound.factory import ScenarioFactory
from majbound.generators import SEED, random_bases, random_pure_state, random_state
from majbound.majorization import (majorized_by_bound,
                                   omega_dot_decreasing,
                                   renyi_entropy,
                                   shannon_entropy,
                                   tensor_product,
                                   tsallis_entropy)
from majbound.majorization_bounds import (DEFAULT_BUDGET,
                                          PAIR_MODES,
                                          compute_omega,
                                          compute_omega_hat,
                                          compute_s_hat_k,
                                          compute_s_k,
                                          omega_simple)
from majbound.quantum import born_probabilities, overlap_matrix, von_neumann_entropy

logger = logging.getLogger(__name__)

TWO_MEASUREMENT_BOUNDS = ('deutsch', 'maassen_uffink', 'coles_piani')
STATE_BOUNDS = ('state_dependent_I', 'cyclic_average_I', 'full_average_I')
OMEGA_ENTROPY_BOUNDS = ('H_omega', 'H_omega_hat', 'H_omega_simple')
KNOWN_BOUNDS = TWO_MEASUREMENT_BOUNDS + STATE_BOUNDS + OMEGA_ENTROPY_BOUNDS + (
    'liu_b', 'liu_b_min', 'admixture', 'admixture_hat',
    'H_omega_simple_plus_log_b', 'renyi_omega', 'tsallis_omega')

SOURCE_KINDS = ('paper_family', 'explicit', 'random', 'mub_qubit')
STATE_KINDS = ('maximally_mixed', 'pure_random', 'random', 'explicit', 'none')
LOG_BASES = {2: 2.0, 'e': float(np.e)}

VERIFY_DEFAULTS = {'instances': 40, 'dims': [2, 3], 'measurements': [2, 3]}
VERIFY_TOL = 1e-9
CLASSICS_TOL = 1e-12
ORACLE_TOL = 1e-12
ORACLE_WORK_LIMIT = 5000
INSTANCE_ERRORS = (NoConvergenceException, DegenerateChainException, LogOfNonpositiveException,
                   NotNormalizedException)

SYMMETRIZED_BASELINE_NOTE = ("-log b_min (minimum of b over all measurement orders) stands in "
                             "for the symmetrized channel bound")
TWO_MEASUREMENT_ADMIXTURE_FLAG = " [extension: N = 2]"
TWO_MEASUREMENT_ADMIXTURE_NOTE = ("admixture for N = 2 is an extension: both chains degenerate to "
                                  "single overlaps")


def _log(x: float, log_base: float) -> float:
    return float(np.log(x) / np.log(log_base))


def _fail(path: str, message: str):
    raise InvalidConfigException(f"{path}: {message}")


def _expect(value, types, path: str):
    if isinstance(value, bool) or not isinstance(value, types):
        _fail(path, f"unexpected value {value!r}")
    return value


def _measurement_count(value, lowest: int, highest: int = None) -> int:
    count = _expect(value, int, '$.source.measurements')
    if count < lowest or (highest is not None and count > highest):
        span = f"[{lowest}, {highest}]" if highest is not None else f"at least {lowest}"
        _fail('$.source.measurements', f"should be {span}, not {count}")
    return count


def _complex_array(data, path: str) -> np.ndarray:
    try:
        array = np.array(data, dtype=float)
    except (TypeError, ValueError):
        _fail(path, "should be nested lists of [re, im] pairs")

    if array.ndim < 1 or array.shape[-1] != 2:
        _fail(path, f"should end in [re, im] pairs, got shape {array.shape}")
    return array[..., 0] + 1j * array[..., 1]


class ScenarioConfig:
    """
    Validated scenario description.

    Args:
        data (dict): parsed JSON document.
    Note: keys that are omitted take the defaults below; bases and states
          are only built by BoundManager, so invalid explicit matrices surface
          there with their own exception.
    """

    def __init__(self, data: dict):
        if not isinstance(data, dict):
            _fail('$', f"config should be a JSON object, not {type(data).__name__}")

        unknown = set(data) - {'source', 'state', 'bounds', 'log_base', 'budget', 'omega_hat_pairs',
                               'output', 'workers', 'title', 'seed', 'renyi_alpha', 'tsallis_q',
                               'verify'}
        if unknown:
            _fail('$', f"unknown keys {sorted(unknown)}")

        self.seed = _expect(data.get('seed', SEED), int, '$.seed')
        self.source = self._parse_source(data.get('source', {'kind': 'mub_qubit'}))
        self.state = self._parse_state(data.get('state', 'maximally_mixed'))
        self.bounds = self._parse_bounds(data.get('bounds', ['H_omega', 'liu_b']))

        log_base = data.get('log_base', 2)
        if log_base not in LOG_BASES:
            _fail('$.log_base', f"should be 2 or \"e\", not {log_base!r}")
        self.log_base = LOG_BASES[log_base]

        budget = _expect(data.get('budget', {}), dict, '$.budget')
        self.budget = _expect(budget.get('enumeration', DEFAULT_BUDGET), int, '$.budget.enumeration')
        self.work_budget = _expect(budget.get('work', DEFAULT_WORK_BUDGET), int, '$.budget.work')

        self.omega_hat_pairs = data.get('omega_hat_pairs', 'all')
        if self.omega_hat_pairs not in PAIR_MODES:
            _fail('$.omega_hat_pairs', f"should be one of {PAIR_MODES}")

        self.output = _expect(data.get('output', 'stdout'), str, '$.output')
        self.workers = _expect(data.get('workers', 1), int, '$.workers')
        if self.workers < 1:
            _fail('$.workers', "should be at least 1")

        self.title = _expect(data.get('title', ''), str, '$.title')
        self.renyi_alpha = float(_expect(data.get('renyi_alpha', 2.0), (int, float), '$.renyi_alpha'))
        self.tsallis_q = float(_expect(data.get('tsallis_q', 2.0), (int, float), '$.tsallis_q'))

        verify = _expect(data.get('verify', {}), dict, '$.verify')
        self.verify = {key: verify.get(key, default) for key, default in VERIFY_DEFAULTS.items()}
        _expect(self.verify['instances'], int, '$.verify.instances')
        for key in ('dims', 'measurements'):
            values = _expect(self.verify[key], list, f'$.verify.{key}')
            if not values or any(_expect(value, int, f'$.verify.{key}') < 2 for value in values):
                _fail(f'$.verify.{key}', f"should be a nonempty list of integers >= 2, not {values}")

        if self.state['kind'] == 'explicit' and self.state['matrix'].shape[0] != self.dimension():
            _fail('$.state.matrix', f"state of dimension {self.state['matrix'].shape[0]} does not "
                                    f"fit bases of dimension {self.dimension()}")

        if self.state['kind'] == 'none':
            stateful = [bound for bound in self.bounds if bound in STATE_BOUNDS]
            if stateful:
                _fail('$.bounds', f"{stateful} need a state, but state is \"none\"")


    def dimension(self) -> int:
        """
        Hilbert space dimension of the configured source.
        """
        kind = self.source['kind']
        if kind == 'paper_family':
            return 3
        if kind == 'explicit':
            return int(self.source['bases'][0].shape[-1])
        if kind == 'random':
            return self.source['dim']
        return 2


    def measurements(self) -> int:
        """
        Number of measurements of the configured source.
        """
        kind = self.source['kind']
        if kind == 'paper_family':
            return 3
        if kind == 'explicit':
            return len(self.source['bases'])
        return self.source['measurements']


    @classmethod
    def from_text(cls, text: str, origin: str = '<string>') -> "ScenarioConfig":
        """
        Parses JSON text; syntax errors name the line and column.
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidConfigException(f"{origin}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
        return cls(data)

    @classmethod
    def from_json(cls, path: str) -> "ScenarioConfig":
        try:
            with open(path, encoding='utf-8') as config_file:
                text = config_file.read()
        except OSError as exc:
            raise InvalidConfigException(f"Cannot read config {path}: {exc}") from exc
        return cls.from_text(text, path)


    def _parse_source(self, source) -> dict:
        source = _expect(source, dict, '$.source')
        kind = source.get('kind')

        if kind not in SOURCE_KINDS:
            _fail('$.source.kind', f"should be one of {SOURCE_KINDS}, not {kind!r}")

        if kind == 'paper_family':
            grid = source.get('a_grid', {'start': 0.0, 'stop': 1.0, 'step': 0.01})
            phi = float(_expect(source.get('phi', np.pi / 2), (int, float), '$.source.phi'))
            return {'kind': kind, 'a_grid': self._parse_grid(grid), 'phi': phi}

        if kind == 'explicit':
            bases = _expect(source.get('bases'), list, '$.source.bases')
            if len(bases) < 2:
                _fail('$.source.bases', "at least 2 bases are needed")
            return {'kind': kind,
                    'bases': [_complex_array(basis, f'$.source.bases[{idx}]')
                              for idx, basis in enumerate(bases)]}

        if kind == 'random':
            dim = _expect(source.get('dim'), int, '$.source.dim')
            if dim < 2:
                _fail('$.source.dim', f"should be at least 2, not {dim}")
            return {'kind': kind, 'dim': dim,
                    'measurements': _measurement_count(source.get('measurements'), 2),
                    'seed': _expect(source.get('seed', self.seed), int, '$.source.seed')}

        return {'kind': kind, 'measurements': _measurement_count(source.get('measurements', 3), 2, 3)}


    @staticmethod
    def _parse_grid(grid) -> list[float]:
        if isinstance(grid, list):
            values = [float(_expect(a, (int, float), f'$.source.a_grid[{idx}]'))
                      for idx, a in enumerate(grid)]
        else:
            values = ScenarioConfig._grid_range(grid)

        outside = [a for a in values if not 0.0 <= a <= 1.0]
        if outside:
            _fail('$.source.a_grid', f"a should lie in [0, 1], got {outside}")
        return values


    @staticmethod
    def _grid_range(grid) -> list[float]:
        grid = _expect(grid, dict, '$.source.a_grid')
        start, stop, step = (float(_expect(grid.get(key), (int, float), f'$.source.a_grid.{key}'))
                             for key in ('start', 'stop', 'step'))
        if step <= 0 or stop < start:
            _fail('$.source.a_grid', "needs step > 0 and stop >= start")

        count = int(round((stop - start) / step))
        return [round(start + idx * step, 12) for idx in range(count + 1)]


    def _parse_state(self, state) -> dict:
        if isinstance(state, str):
            state = {'kind': state}
        state = _expect(state, dict, '$.state')
        kind = state.get('kind')

        if kind not in STATE_KINDS:
            _fail('$.state.kind', f"should be one of {STATE_KINDS}, not {kind!r}")

        if kind == 'explicit':
            return {'kind': kind, 'matrix': _complex_array(state.get('matrix'), '$.state.matrix')}

        if kind in ('pure_random', 'random'):
            parsed = {'kind': kind, 'seed': _expect(state.get('seed', self.seed), int, '$.state.seed')}
            if kind == 'random' and 'rank' in state:
                parsed['rank'] = _expect(state['rank'], int, '$.state.rank')
            return parsed

        return {'kind': kind}


    @staticmethod
    def _parse_bounds(bounds) -> list[str]:
        bounds = _expect(bounds, list, '$.bounds')
        for idx, bound in enumerate(bounds):
            if bound not in KNOWN_BOUNDS:
                _fail(f'$.bounds[{idx}]', f"unknown bound {bound!r}")
        return list(dict.fromkeys(bounds))


    def apply_overrides(self, log_base=None, budget: int = None, seed: int = None,
                        output: str = None) -> "ScenarioConfig":
        """
        CLI flags take precedence over the file.
        """
        if log_base is not None:
            key = 'e' if log_base == 'e' else int(log_base)
            if key not in LOG_BASES:
                _fail('--log-base', f"should be 2 or e, not {log_base!r}")
            self.log_base = LOG_BASES[key]

        if budget is not None:
            self.budget = budget

        if seed is not None:
            self.seed = seed
            for section in (self.source, self.state):
                if 'seed' in section:
                    section['seed'] = seed

        if output is not None:
            self.output = output

        return self


def build_state(state: dict, dim: int) -> DensityMatrix | None:
    """
    DensityMatrix described by a parsed state section, or None.
    """
    kind = state['kind']

    if kind == 'maximally_mixed':
        return DensityMatrix.maximally_mixed(dim)
    if kind == 'pure_random':
        return random_pure_state(dim, state['seed'])
    if kind == 'random':
        return random_state(dim, state.get('rank'), state['seed'])
    if kind == 'explicit':
        return DensityMatrix(state['matrix'])
    return None


def bound_report(rho: DensityMatrix | None, bases: list[MeasurementBasis], bounds: list[str],
                 log_base: float = 2.0, budget: int = DEFAULT_BUDGET,
                 work_budget: int = DEFAULT_WORK_BUDGET, pairs: str = 'all',
                 renyi_alpha: float = 2.0, tsallis_q: float = 2.0) -> BoundReport:
    """
    Evaluates the requested bounds for one scenario.

    With a state, entropy_sum_lhs = sum_m H(M_m) + (1 - N) S(rho) is added
    together with the per-family targets (entropy_sum for H(omega) bounds,
    renyi_entropy_sum, tsallis_joint) so that BoundReport.violations() can
    check every sound entry.
    """
    report = BoundReport(log_base)
    n_meas = len(bases)
    cache = {}

    def cached(key, compute):
        if key not in cache:
            cache[key] = compute()
        return cache[key]

    omega = lambda: cached('omega', lambda: compute_omega(bases, budget).omega)
    omega_hat = lambda: cached('omega_hat', lambda: compute_omega_hat(bases, budget, pairs).omega)
    b = lambda: cached('b', lambda: liu_b(bases))
    b_min = lambda: cached('b_min', lambda: liu_b_min(bases)[0])

    if rho is not None:
        probs = [born_probabilities(rho, basis) for basis in bases]
        entropy_sum = sum(shannon_entropy(p, log_base) for p in probs)

        report.add(BoundReport.LHS, entropy_sum + (1 - n_meas) * von_neumann_entropy(rho, log_base),
                   state_dependent=True, provenance='sum_m H(M_m) + (1 - N) S(rho)', sound=False)

        if set(bounds) & set(OMEGA_ENTROPY_BOUNDS):
            report.add('entropy_sum', entropy_sum, state_dependent=True,
                       provenance='sum_m H(M_m)', sound=False)
        if 'renyi_omega' in bounds:
            report.add('renyi_entropy_sum', sum(renyi_entropy(p, renyi_alpha, log_base) for p in probs),
                       state_dependent=True, provenance='sum_m H_alpha(M_m)', sound=False)
        if 'tsallis_omega' in bounds:
            report.add('tsallis_joint', tsallis_entropy(tensor_product(probs), tsallis_q),
                       state_dependent=True, provenance='T_q(P^1 x ... x P^N)', sound=False)

    if set(bounds) & set(TWO_MEASUREMENT_BOUNDS) and n_meas != 2:
        raise TooManyMeasurementsException(f"{sorted(set(bounds) & set(TWO_MEASUREMENT_BOUNDS))} "
                                           f"need exactly 2 measurements, got {n_meas}!")

    for bound in bounds:
        if bound in TWO_MEASUREMENT_BOUNDS:
            overlaps = overlap_matrix(bases[0], bases[1])
            c1 = overlaps.largest()
            value = {'deutsch': lambda: deutsch_bound(c1, log_base),
                     'maassen_uffink': lambda: maassen_uffink_bound(c1, log_base),
                     'coles_piani': lambda: coles_piani_bound(c1, overlaps.second_largest(),
                                                              log_base)}[bound]()
            report.add(bound, value, provenance=f'{bound}(c1)')

        elif bound == 'liu_b':
            report.add(bound, -_log(b(), log_base), provenance='-log b(1, ..., N)')

        elif bound == 'liu_b_min':
            report.add(bound, -_log(b_min(), log_base), provenance='-log min over orders of b')

        elif bound == 'state_dependent_I':
            report.add(bound, state_dependent_I(rho, bases, log_base), state_dependent=True,
                       provenance='I(1, ..., N)')

        elif bound == 'cyclic_average_I':
            report.add(bound, average_I(rho, bases, 'cyclic', log_base), state_dependent=True,
                       provenance='mean of I over cyclic shifts')

        elif bound == 'full_average_I':
            report.add(bound, average_I(rho, bases, 'full', log_base), state_dependent=True,
                       provenance='mean of I over all orders')

        elif bound == 'admixture':
            report.add(bound, admixture_bound(bases, omega(), log_base, budget, work_budget),
                       provenance='-(1/N) omega . B' + (TWO_MEASUREMENT_ADMIXTURE_FLAG
                                                        if n_meas == 2 else ''))

        elif bound == 'admixture_hat':
            report.add(bound, admixture_bound(bases, omega_hat(), log_base, budget, work_budget),
                       provenance='-(1/N) omega_hat . B', sound=False)

        elif bound == 'H_omega':
            report.add(bound, shannon_entropy(omega(), log_base), provenance='H(omega)',
                       target='entropy_sum')

        elif bound == 'H_omega_hat':
            report.add(bound, shannon_entropy(omega_hat(), log_base), provenance='H(omega_hat)',
                       target='entropy_sum')

        elif bound == 'H_omega_simple':
            report.add(bound, shannon_entropy(omega_simple(bases, budget), log_base),
                       provenance='H(Omega_1, 1 - Omega_1)', target='entropy_sum')

        elif bound == 'H_omega_simple_plus_log_b':
            report.add(bound, shannon_entropy(omega_simple(bases, budget), log_base)
                       + _log(b(), log_base), provenance='H(omega_0) + log b', sound=False)

        elif bound == 'renyi_omega':
            report.add(bound, renyi_entropy(omega(), renyi_alpha, log_base),
                       provenance=f'H_{renyi_alpha}(omega)', target='renyi_entropy_sum')

        elif bound == 'tsallis_omega':
            report.add(bound, tsallis_entropy(omega(), tsallis_q), provenance=f'T_{tsallis_q}(omega)',
                       target='tsallis_joint')

    if 'admixture' in bounds and 'liu_b_min' in bounds:
        gap = report['admixture'] - report['liu_b_min']
        report.add('admixture_minus_liu_b_min', gap, provenance='admixture - (-log b_min)',
                   sound=False)
        if gap < -VERIFY_TOL:
            logger.warning("admixture bound lies %.3e below -log b_min", -gap)

    return report


def compare_row(task: tuple) -> dict:
    """
    One sweep row; module level so that a process pool can pickle it.
    """
    config, params, bases = task
    rho = build_state(config.state, bases[0].dim)

    report = bound_report(rho, bases, config.bounds, config.log_base, config.budget,
                          config.work_budget, config.omega_hat_pairs, config.renyi_alpha,
                          config.tsallis_q)

    for name, excess in report.violations(VERIFY_TOL).items():
        logger.error("%s: bound %s exceeds its target by %.3e", params, name, excess)

    logger.debug("row %s done", params)
    return {**params, **report.as_dict()}


class VerificationReport:
    """
    Outcome of run_verify: one entry per property with the number of
    instances checked and the first counterexample found.
    """

    def __init__(self):
        self.results = {}

    def record(self, name: str, passed: bool, counterexample: dict = None):
        entry = self.results.setdefault(name, {'checked': 0, 'passed': True, 'counterexample': None})
        entry['checked'] += 1

        if not passed and entry['passed']:
            entry['passed'] = False
            entry['counterexample'] = counterexample
            logger.error("property %s failed: %s", name, counterexample)

    def check(self, name: str, info: dict, check):
        """
        Records check() -> (passed, details); a numerical failure inside
        check counts as a counterexample of this property only.
        """
        try:
            passed, details = check()
        except INSTANCE_ERRORS as exc:
            passed, details = False, {'error': f"{type(exc).__name__}: {exc}"}

        self.record(name, passed, {**info, **details})

    @property
    def passed(self) -> bool:

        return all(entry['passed'] for entry in self.results.values())

    def __repr__(self):
        return f"VerificationReport(passed={self.passed}, properties={len(self.results)})"


class BoundManager:
    """
    Runs the commands of the CLI for one ScenarioConfig.
    """

    def __init__(self, config: ScenarioConfig):
        self.config = config


    def scenarios(self) -> list[tuple[dict, list[MeasurementBasis]]]:
        """
        (sweep parameters, bases) per row, in grid order.
        """
        source = self.config.source
        kind = source['kind']

        if kind == 'paper_family':
            return [({'a': a}, bases)
                    for a, bases in ScenarioFactory.paper_family_grid(source['a_grid'], source['phi'])]

        if kind == 'explicit':
            return [({'index': 0}, [MeasurementBasis(vectors, f'M{idx + 1}')
                                    for idx, vectors in enumerate(source['bases'])])]

        if kind == 'random':
            return [({'seed': source['seed']},
                     random_bases(source['dim'], source['measurements'], source['seed']))]

        return [({'index': 0}, ScenarioFactory.mub_qubit(source['measurements']))]


    def header(self) -> list[str]:
        """
        Human readable notes preceding a compare table.
        """
        lines = [self.config.title] if self.config.title else []
        lines.append(f"log base: {'e' if self.config.log_base != 2.0 else 2}")
        if 'liu_b_min' in self.config.bounds:
            lines.append(SYMMETRIZED_BASELINE_NOTE)
        if 'admixture' in self.config.bounds and self.config.measurements() == 2:
            lines.append(TWO_MEASUREMENT_ADMIXTURE_NOTE)
        return lines


    def run_compare(self) -> list[dict]:
        """
        One row per scenario: sweep parameters followed by the report values.
        """
        tasks = [(self.config, params, bases) for params, bases in self.scenarios()]
        logger.info("compare: %d rows, bounds %s", len(tasks), self.config.bounds)

        if self.config.workers > 1 and len(tasks) > 1:
            with multiprocessing.Pool(self.config.workers) as pool:
                rows = pool.map(compare_row, tasks)
        else:
            rows = [compare_row(task) for task in tasks]

        logger.info("compare: done")
        return rows


    def omega_summary(self) -> list[dict]:
        """
        Omega_k, omega, omega_hat, omega_0 and their entropies per scenario.
        """
        cfg = self.config
        summaries = []

        for params, bases in self.scenarios():
            result = compute_omega(bases, cfg.budget)
            hat = compute_omega_hat(bases, cfg.budget, cfg.omega_hat_pairs)
            simple = omega_simple(bases, cfg.budget)

            summaries.append({**params,
                              'Omega': result.omega_values,
                              'omega': list(result.omega.short()),
                              'omega_hat': list(hat.omega.short()),
                              'omega_simple': list(simple.short()),
                              'H_omega': shannon_entropy(result.omega, cfg.log_base),
                              'H_omega_hat': shannon_entropy(hat.omega, cfg.log_base),
                              'H_omega_simple': shannon_entropy(simple, cfg.log_base),
                              'renyi_omega': renyi_entropy(result.omega, cfg.renyi_alpha, cfg.log_base),
                              'tsallis_omega': tsallis_entropy(result.omega, cfg.tsallis_q),
                              'enumeration_count': result.enumeration_count})
        return summaries


    def _instances(self):
        cfg = self.config
        dims, measurements = cfg.verify['dims'], cfg.verify['measurements']

        for idx in range(cfg.verify['instances']):
            dim = dims[idx % len(dims)]
            n_meas = measurements[(idx // len(dims)) % len(measurements)]
            seed = cfg.seed + idx
            rank = 1 + idx % dim
            yield ({'seed': seed, 'dim': dim, 'measurements': n_meas, 'rank': rank},
                   random_bases(dim, n_meas, seed),
                   random_state(dim, rank, seed + 1_000_003))


    def run_verify(self) -> VerificationReport:
        """
        Checks the bound relations on seeded random instances and, for an
        explicit source, the basis invariants of the configured bases.
        """
        cfg = self.config
        report = VerificationReport()

        if cfg.source['kind'] == 'explicit':
            try:
                self.scenarios()
                report.record('basis_invariants', True)
            except InvalidBasisException as exc:
                report.record('basis_invariants', False, {'error': str(exc)})

        for info, bases, rho in self._instances():
            self._verify_instance(report, info, bases, rho)

        logger.info("verify: %s", 'passed' if report.passed else 'FAILED')
        return report


    def _verify_instance(self, report: VerificationReport, info: dict,
                         bases: list[MeasurementBasis], rho: DensityMatrix):
        cfg = self.config
        base = cfg.log_base
        n_meas, dim = info['measurements'], info['dim']
        cache = {}

        def cached(key, compute):
            if key not in cache:
                cache[key] = compute()
            return cache[key]

        probs = lambda: cached('probs', lambda: [born_probabilities(rho, basis) for basis in bases])
        entropy_sum = lambda: cached('entropy_sum',
                                     lambda: sum(shannon_entropy(p, base) for p in probs()))
        lhs = lambda: entropy_sum() + (1 - n_meas) * von_neumann_entropy(rho, base)
        omega = lambda: cached('omega', lambda: compute_omega(bases, cfg.budget).omega)
        omega_hat = lambda: cached('omega_hat',
                                   lambda: compute_omega_hat(bases, cfg.budget, 'all').omega)
        simple = lambda: cached('simple', lambda: omega_simple(bases, cfg.budget))
        tensors = lambda: cached('tensors', lambda: admixture_tensors(bases, omega(), base, cfg.budget,
                                                                      cfg.work_budget))
        cyclic = lambda: cached('cyclic', lambda: [state_dependent_I(rho, order.apply(bases), base)
                                                   for order in cyclic_orders(n_meas)])

        report.check('born_majorized_by_omega', info,
                     lambda: (majorized_by_bound(tensor_product(probs()), omega()), {}))
        report.check('omega_majorized_by_omega_hat', info,
                     lambda: (majorized_by_bound(omega(), omega_hat()), {}))
        report.check('omega_majorized_by_omega_simple', info,
                     lambda: (majorized_by_bound(omega(), simple()), {}))

        def entropy_chain():
            values = {'entropy_sum': entropy_sum(),
                      'H_omega': shannon_entropy(omega(), base),
                      'H_omega_hat': shannon_entropy(omega_hat(), base),
                      'H_omega_simple': shannon_entropy(simple(), base)}
            passed = (values['entropy_sum'] >= max(values['H_omega'], values['H_omega_hat']) - VERIFY_TOL
                      and values['H_omega'] >= values['H_omega_simple'] - VERIFY_TOL)
            return passed, values

        report.check('entropy_chain', info, entropy_chain)

        def admixture_soundness():
            bound = -omega_dot_decreasing(tensors().omega, tensors().B) / n_meas
            return lhs() >= bound - VERIFY_TOL, {'lhs': lhs(), 'bound': bound}

        report.check('admixture_soundness', info, admixture_soundness)

        def chain_average_identity():
            average = chain_average(rho, bases, tensors(), base)
            mean = sum(cyclic()) / len(cyclic())
            return abs(average - mean) <= VERIFY_TOL, {'chain_average': average, 'mean_cyclic_I': mean}

        report.check('chain_average_identity', info, chain_average_identity)

        def channel_chain():
            average = sum(cyclic()) / len(cyclic())
            b_value, b_min_value = liu_b(bases), liu_b_min(bases)[0]
            passed = (lhs() >= average - VERIFY_TOL and average >= min(cyclic()) - VERIFY_TOL
                      and b_min_value <= b_value)
            return passed, {'lhs': lhs(), 'average_I': average, 'b': b_value, 'b_min': b_min_value}

        report.check('channel_chain', info, channel_chain)

        def liu_b_oracle():
            dp, enumerated = liu_b(bases), liu_b_enumerated(bases)
            return abs(enumerated - dp) <= ORACLE_TOL, {'dp': dp, 'enumerated': enumerated}

        report.check('liu_b_oracle', info, liu_b_oracle)

        report.check('chain_tensor', info,
                     lambda: (ChainTensor.from_bases(bases).check_against(cyclic_overlaps(bases)), {}))

        if work_required(n_meas, dim) <= ORACLE_WORK_LIMIT:
            def raw_A_oracle():
                deviation = float(np.max(np.abs(build_raw_A(bases, cfg.work_budget)
                                                - build_raw_A_enumerated(bases, cfg.work_budget))))
                return deviation <= ORACLE_TOL, {'max_deviation': deviation}

            report.check('raw_A_oracle', info, raw_A_oracle)

        if n_meas == 2:
            def two_measurement_order():
                c = overlap_matrix(bases[0], bases[1])
                values = {'coles_piani': coles_piani_bound(c.largest(), c.second_largest(), base),
                          'maassen_uffink': maassen_uffink_bound(c.largest(), base),
                          'deutsch': deutsch_bound(c.largest(), base)}
                passed = (values['coles_piani'] >= values['maassen_uffink'] - CLASSICS_TOL
                          and values['maassen_uffink'] >= values['deutsch'] - CLASSICS_TOL)
                return passed, values

            report.check('two_measurement_order', info, two_measurement_order)

            for k in range(1, 2 * (dim - 1) + 2):
                def s_k_oracle(k=k):
                    exact = compute_s_k(bases, k, cfg.budget)
                    relaxed = 1.0 + compute_s_hat_k(bases, k, cfg.budget)
                    return abs(exact - relaxed) <= VERIFY_TOL, {'k': k, 's_k': exact,
                                                                '1 + s_hat_k': relaxed}

                report.check('s_k_two_measurement_oracle', info, s_k_oracle)
