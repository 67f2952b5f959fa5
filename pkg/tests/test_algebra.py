# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

import numpy as np
import pytest

from orbitspaces import algebra as al
from orbitspaces import util as u


I = al.Quaternion(0, 1, 0, 0)
J = al.Quaternion(0, 0, 1, 0)
K = al.Quaternion(0, 0, 0, 1)


def test_hamilton_rules():
    assert I * J == K
    assert J * K == I
    assert K * I == J
    assert J * I == -K
    for q in (I, J, K):
        assert q * q == al.Quaternion(-1)


def test_quaternion_norm_is_multiplicative(rng):
    p, q = (al.Quaternion.from_array(rng.normal(size=4)) for _ in range(2))
    assert (p * q).norm() == pytest.approx(p.norm() * q.norm(), rel=1e-14)


def test_quaternion_inverse(rng):
    q = al.Quaternion.from_array(rng.normal(size=4))
    assert (q * q.inverse()).isclose(al.Quaternion(1))
    with pytest.raises(u.AlgebraError):
        al.Quaternion().inverse()


def test_quaternion_default_tolerances():
    assert al.Quaternion(1, 0, 0, 1e-7).is_unit()
    assert not al.Quaternion(1, 0, 0, 1e-3).is_unit()
    assert al.Quaternion(1).isclose(al.Quaternion(1, 1e-14))
    assert not al.Quaternion(1).isclose(al.Quaternion(1, 1e-6))


def test_quaternion_is_immutable():
    with pytest.raises(AttributeError):
        I.a = 2
    with pytest.raises(ValueError):
        I.array[0] = 2


def test_complex_split():
    h = al.Quaternion(1, 2, 3, 4)
    assert h.z == 1 + 2j
    assert h.u == 3 - 4j
    assert al.Quaternion.from_complex(h.z, h.u) == h
    assert al.Quaternion.from_complex(0, 1j) == -K


def test_left_circle_is_left_multiplication(rng):
    h = al.Quaternion.from_array(rng.normal(size=4))
    theta = 0.7
    t = al.Quaternion(np.cos(theta), np.sin(theta))
    assert al.left_circle_on_quat(np.exp(1j * theta), h).isclose(t * h)
    assert al.left_circle_on_quat(al.TorusElement([theta]), h).isclose(t * h)
    assert al.left_circle_on_quat(1j, J) == K


def test_left_circle_rejects_wide_torus():
    with pytest.raises(u.AlgebraError):
        al.left_circle_on_quat(al.TorusElement([0, 1]), I)


def test_octonion_basis_squares():
    one = al.Octonion.basis('1')
    for name in al.OCTONION_BASIS[1:]:
        e = al.Octonion.basis(name)
        assert e * e == -one


def test_octonion_basis_by_name():
    assert al.Octonion.basis('il').coeffs[3] == 1
    with pytest.raises(u.AlgebraError):
        al.Octonion.basis('m')
    with pytest.raises(u.AlgebraError):
        al.Octonion([1, 2, 3])


def test_octonion_restricts_to_quaternions(rng):
    p, q = (al.Quaternion.from_array(rng.normal(size=4)) for _ in range(2))
    lhs = al.Octonion.from_quaternion(p) * al.Octonion.from_quaternion(q)
    rhs = al.Octonion.from_quaternion(p * q)
    assert np.allclose(lhs.coeffs, rhs.coeffs, atol=1e-14)


def test_octonions_are_not_associative():
    i, j, l = (al.Octonion.basis(_) for _ in ('i', 'j', 'l'))
    assert (i * j) * l == -(i * (j * l))


def test_octonions_are_alternative(rng):
    x, y = rng.normal(size=(2, 8))
    xx_y = al.omul(al.omul(x, x), y)
    x_xy = al.omul(x, al.omul(x, y))
    assert np.allclose(xx_y, x_xy, atol=1e-12)


def test_octonion_norm_is_multiplicative(rng):
    x, y = rng.normal(size=(2, 100, 8))
    lhs = np.linalg.norm(al.omul(x, y), axis=-1)
    rhs = np.linalg.norm(x, axis=-1) * np.linalg.norm(y, axis=-1)
    assert np.allclose(lhs, rhs, rtol=1e-13)


def test_multiplication_table():
    table = al.multiplication_table()
    assert table.shape == (8, 8, 2)
    assert table.dtype.kind == 'i'
    assert tuple(table[0, 5]) == (1, 5)
    for p in range(1, 8):
        assert tuple(table[p, p]) == (-1, 0)
        for q in range(1, 8):
            if p != q:
                # distinct imaginary units anticommute
                assert table[p, q, 0] == -table[q, p, 0]
                assert table[p, q, 1] == table[q, p, 1]


def test_automorphism_angles_must_sum_to_zero():
    s = al.OctonionAutomorphism(0.3, 0.5)
    assert s.gamma == pytest.approx(u.TAU - 0.8)
    with pytest.raises(u.AlgebraError):
        al.OctonionAutomorphism(0.3, 0.5, 0.1)


def test_automorphism_is_immutable():
    with pytest.raises(AttributeError):
        al.OctonionAutomorphism(0, 0).alpha = 1


def test_automorphism_preserves_products(rng):
    s = al.OctonionAutomorphism(*rng.uniform(0, u.TAU, size=2))
    x, y = (al.Octonion(_) for _ in rng.normal(size=(2, 8)))
    assert np.allclose(s(x * y).coeffs, (s(x) * s(y)).coeffs, atol=1e-12)


def test_automorphism_fixes_one_and_l():
    s = al.OctonionAutomorphism(1.0, 2.0)
    for name in ('1', 'l'):
        e = al.Octonion.basis(name)
        assert np.allclose(s(e).coeffs, e.coeffs)


def test_sigma_matrix():
    alpha = 0.4
    m = al.OctonionAutomorphism(alpha, 0.0).matrix()
    assert np.allclose(m @ m.T, np.eye(8), atol=1e-15)
    assert np.allclose(m[:, 2], [0, 0, np.cos(alpha), -np.sin(alpha), 0, 0, 0, 0])


def test_sigma_rotates_i_towards_l():
    alpha = 0.9
    s = al.OctonionAutomorphism(alpha, -alpha)
    l, i = al.Octonion.basis('l'), al.Octonion.basis('i')
    rotation = al.Octonion.basis('1') * np.cos(alpha) + l * np.sin(alpha)
    assert np.allclose(s(i).coeffs, (rotation * i).coeffs, atol=1e-15)


def test_automorphism_composition():
    s = al.OctonionAutomorphism(0.1, 0.2)
    r = al.OctonionAutomorphism(0.3, -0.1)
    assert np.all(u.angle_distance((s @ r).angles, s.angles + r.angles) < 1e-12)
    assert np.allclose((s @ r).matrix(), s.matrix() @ r.matrix(), atol=1e-14)


def test_sigma_on_s6_is_a_phase(rng):
    x = np.zeros(8)
    x[1:] = u.normalize(rng.normal(size=7))
    s = al.OctonionAutomorphism(0.5, 1.5)
    image = al.imaginary_to_s6(s.matrix() @ x)
    expected = al.imaginary_to_s6(x) * np.exp(-1j * np.r_[0, s.angles])
    assert np.allclose(image, expected, atol=1e-14)
    assert np.allclose(al.s6_to_imaginary(al.imaginary_to_s6(x)), x)


def test_torus_elements():
    t = al.TorusElement([3, 4])
    assert t.rank == 2
    assert np.all((t.angles >= 0) & (t.angles < u.TAU))
    assert t * t.inverse() == al.TorusElement.identity(2)
    assert al.TorusElement([u.TAU - 1e-14]) == al.TorusElement([0])
    with pytest.raises(u.AlgebraError):
        al.TorusElement(np.zeros(5))
