# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

import json

import numpy as np
import pytest

from orbitspaces import algebra as al
from orbitspaces import config
from orbitspaces import harness as hs
from orbitspaces import matrices as mx
from orbitspaces import model as md
from orbitspaces import util as u


# Sampling ###############################################################

def test_streams_are_reproducible():
    a = hs.rng_for(42, 7).standard_normal(5)
    b = hs.rng_for(42, 7).standard_normal(5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, hs.rng_for(42, 8).standard_normal(5))
    assert not np.array_equal(a, hs.rng_for(42, 7, hs.GROUP).standard_normal(5))
    assert not np.array_equal(a, hs.rng_for(43, 7).standard_normal(5))


def test_parse_space():
    assert hs.parse_space('S3xS3') == [('S', (3,)), ('S', (3,))]
    assert hs.parse_space('Y2,3') == [('Y', (2, 3))]
    assert hs.parse_space('T2 x S1') == [('T', (2,)), ('S', (1,))]


@pytest.mark.parametrize('space', ['Q3', 'T5', 'T0', 'Y2', 'S2,3', ''])
def test_unknown_spaces(space):
    with pytest.raises(u.RegistryError):
        hs.parse_space(space)


@pytest.mark.parametrize('space, size', [('S11', 12), ('Y2,3', 6), ('S3xS3', 8), ('T2', 2)])
def test_space_dimension(space, size):
    assert hs.space_dimension(space) == size


def test_sample_shapes_and_norms():
    points = hs.sample(hs.SampleSpec('S3xS3', 20, seed=5))
    assert points.shape == (20, 8)
    assert np.allclose(np.linalg.norm(points[:, :4], axis=1), 1)
    assert np.allclose(np.linalg.norm(points[:, 4:], axis=1), 1)
    matrices = hs.sample(hs.SampleSpec('Y2,3', 10))
    assert np.allclose(np.linalg.norm(matrices, axis=1), 1)
    angles = hs.sample(hs.SampleSpec('T2', 50))
    assert np.all((angles >= 0) & (angles < u.TAU))
    assert hs.sample(hs.SampleSpec('S6', 0)).shape == (0, 7)


def test_sample_rows_are_independent_of_count():
    few = hs.sample(hs.SampleSpec('S5', 3, seed=9))
    many = hs.sample(hs.SampleSpec('S5', 30, seed=9))
    assert np.array_equal(few, many[:3])
    assert np.array_equal(many[17], hs.sample_point('S5', hs.rng_for(9, 17)))


def test_domain_distance_on_angles():
    x, y = np.array((0.1, 0.0)), np.array((u.TAU - 0.1, 0.0))
    assert hs.domain_distance('T2', x, y) == pytest.approx(0.2)
    assert hs.domain_distance('S1', x, y) == pytest.approx(u.TAU - 0.2)


# Registry ###############################################################

def test_registry_contents():
    ids = set(hs.registry())
    for map_id in ('hopf', 'hp2_to_s5', 's6_to_s4', 'cp2_conj_to_s4', 'torus_invol',
                   's4_invol', 's3_conj_circle', 's3_biaxial', 's3s3_t3-A', 's3s3_t3-B',
                   's3s3_diag', 'hopf_ynn-2', 'gram-3', 'psd_sqrt-4', 'ynn_son-2',
                   'yn1n_on-3', 'yn1n_on-4'):
        assert map_id in ids
    assert set(hs.get_map('s3_biaxial').groups) == {'T2++', 'T2+-', 'T2-+', 'T2--'}


def test_registry_errors():
    with pytest.raises(u.RegistryError):
        hs.get_map('klein_bottle')
    with pytest.raises(u.RegistryError):
        hs.get_map('hopf').group('T3')
    assert hs.get_map('hopf').group('trivial') is hs.TRIVIAL


def test_bimultiply_identity(rng):
    x = rng.normal(size=8)
    assert np.allclose(hs.bimultiply(np.zeros(3), x, md.CHARTS['A']), x)
    batch = hs.bimultiply(np.zeros((5, 3)), x, md.CHARTS['B'])
    assert batch.shape == (5, 8)


# Orbit distance #########################################################

def test_grid_distance_finds_the_orbit():
    entry = hs.get_map('hopf')
    group = entry.group('U1-left')
    x = hs.sample_point('S3', hs.rng_for(1, 0))
    y = group.act(group.sample(hs.rng_for(1, 0, hs.GROUP)), x)
    assert hs.orbit_distance('hopf', 'U1-left', x, y) < 1e-5
    assert hs.orbit_distance('hopf', 'trivial', x, -x) == pytest.approx(2)


def test_grid_distance_on_torus_domain():
    x = np.array((0.3, 1.1))
    y = u.wrap_angle(-x)
    assert hs.orbit_distance('torus_invol', 'Z2-negate', x, y) < 1e-12


def test_procrustes_distance(rng):
    x = hs.sample_point('Y3,3', rng)
    q = mx.random_orthogonal(3, rng)
    y = (q @ x.reshape(3, 3)).reshape(-1)
    assert hs.orbit_distance('gram-3', 'O3', x, y) < 1e-12


def test_procrustes_agrees_with_grid(rng):
    x, y = (hs.sample_point('Y2,2', rng) for _ in range(2))
    exact = hs.orbit_distance('hopf_ynn-2', 'SO2', x, y)
    grid = hs.orbit_distance('hopf_ynn-2', 'SO2-angle', x, y)
    assert grid == pytest.approx(exact, abs=1e-4)


def test_right_aligned_distance(rng):
    x, y = (hs.sample_point('S11', rng).reshape(3, 4) for _ in range(2))
    q = u.normalize(rng.standard_normal(4))
    assert hs.right_aligned_distance(x, al.qmul(x, q)) < 1e-12
    best = hs.right_aligned_distance(x, y)
    for _ in range(200):
        q = u.normalize(rng.standard_normal(4))
        assert best <= np.linalg.norm(al.qmul(x, q) - y) + 1e-12


@pytest.mark.parametrize('group_id', ('Sp1-right', 'T3xSp1'))
def test_hp2_distance_finds_the_orbit(rng, group_id):
    group = hs.get_map('hp2_to_s5').group(group_id)
    x = hs.sample_point('S11', rng)
    y = group.act(group.sample(rng), x)
    assert hs.orbit_distance('hp2_to_s5', group_id, x, y) < 1e-5


def test_hp2_distance_is_measured_in_s11(rng):
    group = hs.get_map('hp2_to_s5').group('T3xSp1')
    for _ in range(3):
        x, y = (hs.sample_point('S11', rng) for _ in range(2))
        estimate = hs.orbit_distance('hp2_to_s5', 'T3xSp1', x, y)
        sampled = min(np.linalg.norm(group.act(group.sample(rng), x) - y)
                      for _ in range(500))
        assert estimate <= sampled + 1e-9


def test_missing_distance_method(rng):
    x = hs.sample_point('S6', rng)
    with pytest.raises(u.RegistryError):
        hs.orbit_distance('s6_to_s4', 'sigma-T2', x, x)


# Suites #################################################################

@pytest.mark.parametrize('map_id, group_id, tol', [
    ('hopf',           'U1-left',      1e-12),
    ('hp2_to_s5',      'T3xSp1',       1e-9),
    ('s6_to_s4',       'sigma-T2',     1e-11),
    ('cp2_conj_to_s4', 'U1xconj',      1e-11),
    ('s3_biaxial',     'T2-+',         1e-12),
    ('s3s3_t3-B',      'T3-B',         1e-12),
    ('s3s3_diag',      'U1-conj-diag', 1e-12),
    ('ynn_son-3',      'SO3',          1e-10),
    ('yn1n_on-4',      'O3',           1e-11),
])
def test_invariance_suites(map_id, group_id, tol):
    report = hs.invariance_suite(map_id, group_id, 40, tol, seed=3)
    assert report.passed, report.line()
    assert report.samples == 40
    assert report.min_separation is None


def test_property_suite_detects_a_wrong_group():
    # the Hopf map is not invariant under conjugation
    hopf = hs.get_map('hopf')
    conj = hs.get_map('s3_conj_circle').group('U1-conj')

    def check(rng, _):
        x = hs.sample_point('S3', rng)
        return u.distance(hopf(conj.act(conj.sample(rng), x)).coords, hopf(x).coords)

    report = hs.property_suite('hopf/conjugation', check, 20, 1e-9, seed=3)
    assert not report.passed
    assert report.worst is not None


def test_property_suite_reports_the_worst_sample():
    report = hs.property_suite('toy', lambda rng, i: float(i % 7), 30, 10.0, seed=1)
    assert report.passed
    assert report.max_residual == 6
    assert report.worst == 6


def test_results_do_not_depend_on_workers():
    config.OPTIONS['batch'] = 8
    one = hs.invariance_suite('hp2_to_s5', 'T3', 40, 1e-9, seed=11, workers=1)
    many = hs.invariance_suite('hp2_to_s5', 'T3', 40, 1e-9, seed=11, workers=3)
    assert one.max_residual == many.max_residual
    assert one.worst == many.worst


def test_constraint_suite():
    report = hs.constraint_suite('s6_to_s4', 50)
    assert report.passed
    assert report.tolerance == 1e-12
    assert hs.constraint_suite('torus_invol', 50, tol=1e-12).passed


def test_separation_suite():
    report = hs.separation_suite('torus_invol', 'Z2-negate', 30, seed=2)
    assert report.passed
    assert report.max_residual is None
    assert report.min_separation > 1e-4


def test_separation_suite_vacuous():
    report = hs.separation_suite('hopf', 'U1-left', 10, gap=100)
    assert report.passed
    assert report.min_separation is None


def test_separation_suite_failure():
    report = hs.separation_suite('hopf', 'trivial', 20, tol=10)
    assert not report.passed
    assert report.min_separation <= 2


def test_coverage_report():
    assert hs.coverage_report('hopf', 0) == {'map': 'hopf', 'samples': 0, 'seed': 42}
    report = hs.coverage_report('hopf', 200)
    assert 0 < report['median_spacing'] <= report['max_spacing']
    assert report['hole_radius'] > 0
    assert report['monotone']


# Reports ################################################################

def test_report_dict_and_json():
    report = hs.exact_report('exact', True, label='toy')
    assert report.max_residual == 0
    d = report.to_dict()
    assert set(d) == {'suite', 'map', 'group', 'samples', 'seed', 'tolerance',
                      'max_residual', 'min_separation', 'pass', 'millis'}
    assert d['millis'] is None
    assert d['pass'] is True
    doc = json.loads(hs.reports_json([report, hs.exact_report('broken', False)], timings=True))
    assert doc['schema'] == hs.SCHEMA_VERSION
    assert [_['pass'] for _ in doc['reports']] == [True, False]
    assert doc['reports'][0]['millis'] == 0


def test_report_line():
    assert hs.exact_report('exact', True).line().startswith("PASS\texact\tmax_residual=")
    report = hs.separation_suite('torus_invol', 'Z2-negate', 5, seed=2)
    assert "min_separation=" in report.line()
    vacuous = hs.separation_suite('hopf', 'U1-left', 3, gap=100)
    assert "min_separation=none" in vacuous.line()
