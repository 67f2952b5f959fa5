# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

"""
    Task-oriented functions, the gating suites behind each CLI verify target

Every target returns a list of TestReport. Sampled suites take the sample
count and seed from the arguments, falling back to config.OPTIONS, and a
single tolerance override applies to every sampled suite of the run.
"""

import itertools
import logging
import typing as t

import numpy as np

from . import algebra as alg
from . import config
from . import harness
from . import matrices as mat
from . import model
from . import orbits
from . import sponge
from . import util as u


log = logging.getLogger(__name__)

Reports = t.List[harness.TestReport]


class Run(t.NamedTuple):
    samples: int
    seed:    int
    tol:     t.Optional[float]

    def tolerance(self, suite:str) -> float:
        return config.tolerance(suite, self.tol)

    @property
    def pairs(self) -> int:
        return max(self.samples // 10, 1)


def _invariance(run:Run, kind:str, map_id:str, group_id:str) -> harness.TestReport:
    return harness.invariance_suite(map_id, group_id, run.samples, run.tolerance(kind),
                                    run.seed, suite=f"{kind}:{map_id}:{group_id}")


def _constraint(run:Run, kind:str, map_id:str) -> harness.TestReport:
    return harness.constraint_suite(map_id, run.samples, run.tolerance(kind), run.seed,
                                    suite=f"{kind}:{map_id}")


def _separation(run:Run, kind:str, map_id:str, group_id:str) -> harness.TestReport:
    return harness.separation_suite(map_id, group_id, run.pairs, tol=run.tolerance(kind),
                                    seed=run.seed, suite=f"{kind}:{map_id}:{group_id}")


# Octonions ##############################################################

def _random_automorphism(rng:np.random.Generator) -> alg.OctonionAutomorphism:
    return alg.OctonionAutomorphism(*rng.uniform(0, u.TAU, 2))


def octonion_suites(run:Run) -> Reports:
    basis = np.eye(8, dtype=int)
    products = alg.omul(basis[:, None, :], basis[None, :, :])
    norms = (products * products).sum(axis=-1)
    reports = [harness.exact_report('octonion/basis-norms', bool((norms == 1).all()), 64)]

    def norm(rng, _):
        x, y = rng.standard_normal((2, 8))
        return abs(np.linalg.norm(alg.omul(x, y)) - np.linalg.norm(x) * np.linalg.norm(y))

    def automorphism(rng, _):
        s = _random_automorphism(rng).matrix()
        x, y = rng.standard_normal((2, 100, 8))
        return np.abs(alg.omul(x, y) @ s.T - alg.omul(x @ s.T, y @ s.T)).max()

    def orthogonality(rng, _):
        s = _random_automorphism(rng).matrix()
        return np.abs(s.T @ s - np.eye(8)).max()

    def homomorphism(rng, _):
        a, b = _random_automorphism(rng), _random_automorphism(rng)
        return np.abs(a.matrix() @ b.matrix() - (a @ b).matrix()).max()

    triples = max(run.samples // 10, 1)
    for kind, check, n in (('octonion/norm', norm, run.samples),
                           ('octonion/automorphism', automorphism, triples),
                           ('octonion/orthogonality', orthogonality, triples),
                           ('octonion/homomorphism', homomorphism, triples)):
        reports.append(harness.property_suite(kind, check, n, run.tolerance(kind), run.seed))
    return reports


# Matrix quotients #######################################################

def matrices_suites(run:Run) -> Reports:
    reports = []
    for n in (2, 3, 4):
        for prefix in ('gram', 'psd_sqrt'):
            reports.append(_invariance(run, 'matrices/invariance', f'{prefix}-{n}', f'O{n}'))
        reports.append(_invariance(run, 'matrices/invariance', f'ynn_son-{n}', f'SO{n}'))
        reports.append(_constraint(run, 'matrices/height', f'ynn_son-{n}'))
    for n in (3, 4):
        reports.append(_constraint(run, 'matrices/rank', f'yn1n_on-{n}'))
    reports.append(_invariance(run, 'matrices/invariance', 'hopf_ynn-2', 'SO2'))
    reports.append(_constraint(run, 'matrices/sphere', 'hopf_ynn-2'))
    reports.append(_separation(run, 'matrices/separation', 'ynn_son-3', 'SO3'))
    dims = [mat.dim_formulas(n)[2] for n in (2, 3, 4, 5)]
    reports.append(harness.exact_report('matrices/dimensions',
                                        mat.dim_formulas(3) == (4, 5, 5) and dims == [2, 5, 9, 14]))
    return reports


# HP^2 ###################################################################

def hp2_suites(run:Run) -> Reports:
    reports = [
        _invariance(run, 'hp2/invariance', 'hp2_to_s5', 'T3'),
        _invariance(run, 'hp2/invariance', 'hp2_to_s5', 'Sp1-right'),
        _constraint(run, 'hp2/constraint', 'hp2_to_s5'),
        _separation(run, 'hp2/separation', 'hp2_to_s5', 'T3xSp1'),
    ]
    images = [orbits.hp2_to_s5(orbits.hp2_fixed_point(i)).coords for i in range(3)]
    gaps = [u.distance(a, b) for a, b in itertools.combinations(images, 2)]
    log.debug("Distances between images of the fixed points: %s", gaps)
    reports.append(harness.exact_report('hp2/fixed-points', min(gaps) > 0.1, 3))
    strata = [orbits.stratify_hp2(orbits.hp2_fixed_point(i)) for i in range(3)]
    reports.append(harness.exact_report(
        'hp2/fixed-point-strata',
        [str(_) for _ in strata] == ['v0', 'v1', 'v2']
        and all(orbits.hp2_stabilizer_check(orbits.hp2_fixed_point(i)).dimension == 3
                for i in range(3)), 3))
    return reports


# Spheres and projective planes ##########################################

def s6_suites(run:Run) -> Reports:
    return [
        _invariance(run, 's6/invariance', 's6_to_s4', 'T2'),
        _invariance(run, 's6/sigma', 's6_to_s4', 'sigma-T2'),
        _constraint(run, 's6/constraint', 's6_to_s4'),
    ]


def cp2_suites(run:Run) -> Reports:
    return [
        _invariance(run, 'cp2/invariance', 'cp2_conj_to_s4', 'U1xconj'),
        _constraint(run, 'cp2/constraint', 'cp2_conj_to_s4'),
        _separation(run, 'cp2/separation', 'cp2_conj_to_s4', 'U1xconj'),
    ]


# Fiber lemmas ###########################################################

def quoric_fiber_suites(run:Run) -> Reports:
    reports = []
    for map_id in ('s3_biaxial', 's3s3_t3-A', 's3s3_t3-B'):
        for group_id in harness.get_map(map_id).groups:
            reports.append(_invariance(run, 'quoric-fibers/invariance', map_id, group_id))
        reports.append(_constraint(run, 'quoric-fibers/constraint', map_id))

    functors = model.enumerate_quoric(4, model.Symmetry.FULL)
    welldef = [model.quoric_t3_welldef(qf, count=max(run.samples // 100, 1), seed=run.seed)[0]
               for qf in functors]
    reports.append(harness.exact_report('quoric-fibers/torus-welldef', all(welldef),
                                        len(functors)))
    reports.append(harness.exact_report(
        'quoric-fibers/chart-weights',
        all(model.general_position_check(model.chart_weights(c)) for c in 'AB'), 2))
    return reports


def arnold_suites(run:Run) -> Reports:
    reports = []
    for map_id, group_id in (('s3_conj_circle', 'U1-conj'),
                             ('s3s3_diag', 'U1-conj-diag'),
                             ('torus_invol', 'Z2-negate'),
                             ('s4_invol', 'Z2-conj')):
        reports.append(_invariance(run, 'arnold/invariance', map_id, group_id))
        reports.append(_constraint(run, 'arnold/constraint', map_id))
    cp = model.QTCharPair.from_vectors((1, 0), (0, 1), (-1, -1))
    count = max(run.samples // 10, 1)
    reports.append(harness.exact_report(
        'arnold/conjugation-welldef',
        model.conj_involution_welldef(cp, count=count, seed=run.seed)[0], count))
    return reports


# Combinatorics and homology #############################################

QUORIC_COUNTS = {3: 6, 4: 18, 5: 30, 6: 66}


def combinatorics_suites(run:Run = None) -> Reports:
    e = harness.exact_report
    reports = []
    counts = {m: len(model.enumerate_quoric(m)) for m in QUORIC_COUNTS}
    brute = {m: len(model.brute_force_quoric(m)) for m in QUORIC_COUNTS}
    log.debug("Quoric colorings per m: %s, brute force %s", counts, brute)
    reports.append(e('combinatorics/quoric-counts',
                     counts == brute == QUORIC_COUNTS, len(QUORIC_COUNTS)))
    reports.append(e('combinatorics/general-position',
                     all(model.general_position_check(model.chart_weights(c)) for c in 'AB'), 2))
    reports.append(e('combinatorics/h-vectors',
                     all(model.h_vector(model.Polygon(m)) == (1, m - 2, 1)
                         and sum(model.h_vector(model.Polygon(m))) == m for m in range(3, 9)), 6))

    for name in sponge.PRESETS:
        sponge.preset(name).chain_complex().check()  # raises ComplexError
    reports.append(e('combinatorics/boundary-squared', True, len(sponge.PRESETS)))
    rp2 = sponge.homology(sponge.preset('rp2').chain_complex())
    reports.append(e('combinatorics/rp2-homology', str(rp2) == "(Z; Z/2; 0)"))
    reports.append(e('combinatorics/antipodal-quotient', sponge.antipodal_quotient_check()[0]))

    ok, failing = sponge.homology_polytope_check(sponge.build_fig2())
    reports.append(e('combinatorics/fig2',
                     not ok and len(failing) == 1
                     and next(iter(failing.values())).betti[1:2] == (1,)))
    reports.append(e('combinatorics/rugby-ball',
                     sponge.homology_polytope_check(sponge.build_rugby_ball())[0]))

    census = sponge.hp2_skeleton_census()
    spheres = [_ for _ in census.patterns if _.startswith('S')]
    incidences = all(sum(_.startswith('M') for _ in census.contained[s]) == 1
                     and sum(_.startswith('N') for _ in census.contained[s]) == 2
                     for s in spheres)
    reports.append(e('combinatorics/census', census.counts() == (3, 4, 6, 3) and incidences))

    gkm = sponge.build_hp2_gkm()
    reports.append(e('combinatorics/gkm-graph',
                     gkm.number_of_nodes() == 3 and gkm.number_of_edges() == 6
                     and all(d == 4 for _, d in gkm.degree())))
    return reports


# Targets ################################################################

TARGETS: t.Dict[str, t.Callable[[Run], Reports]] = {
    'hp2':           hp2_suites,
    's6':            s6_suites,
    'cp2':           cp2_suites,
    'octonion':      octonion_suites,
    'quoric-fibers': quoric_fiber_suites,
    'arnold':        arnold_suites,
}

# Everything gating, in report order
REPORT_TARGETS: t.Dict[str, t.Callable[[Run], Reports]] = {
    'octonion':      octonion_suites,
    'matrices':      matrices_suites,
    **{k: v for k, v in TARGETS.items() if k != 'octonion'},
    'combinatorics': combinatorics_suites,
}


def verify(target:str, samples:int = None, seed:int = None, tol:float = None) -> Reports:
    try:
        plan = REPORT_TARGETS[target]
    except KeyError:
        raise u.UsageError("Unknown verify target %r, try one of: %s",
                           target, ', '.join(REPORT_TARGETS))
    run = Run(config.OPTIONS['samples'] if samples is None else samples,
              config.OPTIONS['seed'] if seed is None else seed,
              tol)
    if run.samples < 1:
        raise u.UsageError("Sample count must be positive, got %s", run.samples)
    log.info("Verifying %s with %s samples, seed %s", target, run.samples, run.seed)
    return plan(run)


def verify_all(samples:int = None, seed:int = None, tol:float = None) -> Reports:
    return [r for target in REPORT_TARGETS for r in verify(target, samples, seed, tol)]


def check_reports(reports:Reports) -> Reports:
    """Raise SuiteFailure if any gating report failed, else return them"""
    failed = [_.suite for _ in reports if _.gating and not _.passed]
    if failed:
        raise u.SuiteFailure("%s of %s suites failed: %s",
                             len(failed), len(reports), ', '.join(failed))
    return reports
