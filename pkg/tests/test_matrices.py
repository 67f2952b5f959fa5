# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

import numpy as np
import pytest

from orbitspaces import matrices as mx
from orbitspaces import util as u


def test_normalized_matrix():
    a = mx.NormalizedMatrix([[3, 0], [0, 4]], normalize=True)
    assert a.shape == (2, 2)
    assert np.allclose(a.entries, [[0.6, 0], [0, 0.8]])
    with pytest.raises(u.AlgebraError):
        mx.NormalizedMatrix([[3, 0], [0, 4]])
    with pytest.raises(AttributeError):
        a.entries = None


def test_psd_matrix_validation():
    p = mx.PSDMatrix([[2, 1], [1, 2]])
    assert p.lambda_min == pytest.approx(1)
    assert p.rank == 2
    assert list(p.coords()) == [2, 1, 2]
    with pytest.raises(u.AlgebraError):
        mx.PSDMatrix([[1, 1], [0, 1]])
    with pytest.raises(u.AlgebraError):
        mx.PSDMatrix([[1, 0], [0, -1]])
    with pytest.raises(u.AlgebraError):
        mx.PSDMatrix([[1, 0], [0, 1]], trace_normalized=True)


@pytest.mark.parametrize('n', [2, 3, 4])
def test_gram_is_left_orthogonal_invariant(rng, n):
    a = mx.random_normalized((n - 1, n), rng)
    q = mx.random_orthogonal(n - 1, rng)
    g1, g2 = mx.gram(a), mx.gram(q @ a.entries)
    assert np.allclose(g1.entries, g2.entries, atol=1e-13)


@pytest.mark.parametrize('n', [2, 3, 4])
def test_gram_quotient_lands_on_boundary(rng, n):
    p = mx.quotient_Yn1n_On(mx.random_normalized((n - 1, n), rng))
    assert p.trace() == pytest.approx(1, abs=1e-13)
    assert abs(p.lambda_min) < 1e-12
    assert mx.spectrahedron_contains(p)
    assert mx.SpectrahedronPoint(p).on_boundary()


def test_gram_quotient_shape():
    with pytest.raises(u.AlgebraError):
        mx.quotient_Yn1n_On(np.eye(3) / np.sqrt(3))


@pytest.mark.parametrize('n', [2, 3, 4])
def test_polar_quotient_is_special_orthogonal_invariant(rng, n):
    a = mx.random_normalized((n, n), rng)
    r = mx.random_orthogonal(n, rng, special=True)
    x, y = mx.quotient_Ynn_SOn(a), mx.quotient_Ynn_SOn(r @ a.entries)
    assert np.allclose(x.coords(), y.coords(), atol=1e-11)
    assert abs(x.residual) < 1e-12
    assert x.matrix.trace() == pytest.approx(1)


def test_polar_quotient_height_sign(rng):
    a = mx.random_normalized((3, 3), rng).entries
    if np.linalg.det(a) < 0:
        a = -a
    reflection = np.diag([1.0, 1.0, -1.0])
    x, y = mx.quotient_Ynn_SOn(a), mx.quotient_Ynn_SOn(reflection @ a)
    assert x.height > 0
    assert y.height == pytest.approx(-x.height)
    assert np.allclose(x.matrix.entries, y.matrix.entries, atol=1e-12)


def test_polar_quotient_of_singular_matrix():
    a = np.array([[1.0, 0.0], [0.0, 0.0]])
    x = mx.quotient_Ynn_SOn(a)
    assert abs(x.height) < 1e-15
    assert np.allclose(x.matrix.entries, [[1, 0], [0, 0]])


def test_polar_decomposition(rng):
    a = mx.random_normalized((3, 3), rng).entries
    q, p = mx.polar(a)
    assert np.allclose(q @ p.entries, a, atol=1e-14)
    assert np.allclose(q.T @ q, np.eye(3), atol=1e-14)
    assert np.allclose(mx.psd_sqrt_part(a).entries, p.entries, atol=1e-12)


def test_identity_polar_part():
    p = mx.psd_sqrt_part(np.eye(3) / np.sqrt(3))
    assert np.allclose(p.entries, np.eye(3) / np.sqrt(3))


def test_kabsch_recovers_rotation(rng):
    a = rng.standard_normal((3, 5))
    r = mx.random_orthogonal(3, rng, special=True)
    assert np.allclose(mx.kabsch(a, r @ a), r, atol=1e-12)
    assert np.linalg.det(mx.kabsch(a, -a)) == pytest.approx(1)


def test_procrustes_recovers_reflection(rng):
    a = rng.standard_normal((3, 5))
    q = mx.random_orthogonal(3, rng)
    q[:, 0] *= -1 if np.linalg.det(q) > 0 else 1
    assert np.linalg.det(q) == pytest.approx(-1)
    assert np.allclose(mx.procrustes(a, q @ a), q, atol=1e-12)


def test_random_orthogonal(rng):
    for n in (1, 2, 5):
        r = mx.random_orthogonal(n, rng, special=True)
        assert np.allclose(r @ r.T, np.eye(n), atol=1e-13)
        assert np.linalg.det(r) == pytest.approx(1)


def test_spectrahedron_contains():
    assert mx.spectrahedron_contains(np.eye(3) / 3)
    assert mx.spectrahedron_contains(np.diag([1.0, 0.0]))
    assert not mx.spectrahedron_contains(np.diag([1.5, -0.5]))
    assert not mx.spectrahedron_contains(np.eye(2))
    assert not mx.spectrahedron_contains(np.ones((2, 3)) / 6)
    assert not mx.spectrahedron_contains([[0.5, 0.1], [0.0, 0.5]])


def test_lambda_min():
    assert mx.lambda_min([[2, 1], [1, 2]]) == pytest.approx(1)
    assert mx.lambda_min(mx.PSDMatrix(np.eye(2))) == pytest.approx(1)


def test_dim_formulas():
    assert mx.dim_formulas(2) == (1, 2, 2)
    assert mx.dim_formulas(3) == (4, 5, 5)
    assert mx.dim_formulas(4) == (8, 9, 9)
    with pytest.raises(u.AlgebraError):
        mx.dim_formulas(1)


def test_dimensions_match_the_spaces():
    for n in (2, 3, 4):
        sphere, doubled, spectrahedron = mx.dim_formulas(n)
        assert sphere == (n - 1) * n - 1 - (n - 1) * (n - 2) // 2
        assert doubled == n * n - 1 - n * (n - 1) // 2
        assert doubled == spectrahedron


def test_hopf_coordinates_are_unit(rng):
    for _ in range(20):
        x = mx.quotient_Ynn_SOn(mx.random_normalized((2, 2), rng))
        v = mx.hopf_coordinates(x)
        assert np.linalg.norm(v) == pytest.approx(1, abs=1e-12)


def test_hopf_coordinates_of_rotation():
    # a multiple of a rotation has a scalar polar part
    x = mx.quotient_Ynn_SOn(np.eye(2) / np.sqrt(2))
    assert np.allclose(mx.hopf_coordinates(x), [0, 0, 1])
    with pytest.raises(u.AlgebraError):
        mx.hopf_coordinates(mx.quotient_Ynn_SOn(np.eye(3) / np.sqrt(3)))


@pytest.mark.parametrize('n', [2, 3, 4])
def test_polar_quotient_recovers_the_orbit(rng, n):
    for _ in range(20):
        a = mx.random_normalized((n, n), rng).entries
        point = mx.quotient_Ynn_SOn(a)
        p = point.matrix.entries / np.linalg.norm(point.matrix.entries)
        if point.height < 0:
            p[-1] *= -1
        assert np.allclose(mx.kabsch(p, a) @ p, a, atol=1e-10)


def test_polar_quotient_separates_orbits(rng):
    closest = np.inf
    for _ in range(200):
        a, b = (mx.random_normalized((3, 3), rng).entries for _ in range(2))
        if np.linalg.norm(mx.kabsch(a, b) @ a - b) <= 0.1:
            continue
        closest = min(closest, u.distance(mx.quotient_Ynn_SOn(a).coords(),
                                          mx.quotient_Ynn_SOn(b).coords()))
    assert 1e-4 < closest < np.inf
