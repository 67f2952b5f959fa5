# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

import numpy as np
import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from orbitspaces import sponge as sp
from orbitspaces import util as u


# Smith normal form ######################################################

def test_smith_normal_form_small():
    m = [[2, 0], [0, 3]]
    d, left, right = sp.smith_normal_form(m)
    assert d.tolist() == [[1, 0], [0, 6]]
    assert (left.dot(np.array(m, dtype=object)).dot(right) == d).all()


@pytest.mark.parametrize('shape', [(3, 3), (4, 6), (5, 2)])
def test_smith_normal_form_against_sympy(rng, shape):
    for _ in range(5):
        m = rng.integers(-6, 7, size=shape)
        d, left, right = sp.smith_normal_form(m)
        assert (left.dot(np.array(m.tolist(), dtype=object)).dot(right) == d).all()
        assert abs(int(sympy.Matrix(left.tolist()).det())) == 1
        assert abs(int(sympy.Matrix(right.tolist()).det())) == 1
        expected = sympy_snf(sympy.Matrix(m.tolist()), domain=sympy.ZZ)
        diagonal = [abs(int(expected[i, i])) for i in range(min(shape))]
        assert sp.elementary_divisors(m) == [_ for _ in diagonal if _]
        divisors = sp.elementary_divisors(m)
        assert all(b % a == 0 for a, b in zip(divisors, divisors[1:]))


def test_integer_rank():
    assert sp.integer_rank([[1, 2], [2, 4]]) == 1
    assert sp.integer_rank([[0, 0]]) == 0
    assert sp.integer_rank(np.zeros((0, 3))) == 0


# Chain complexes ########################################################

def test_chain_complex_validation():
    with pytest.raises(u.ComplexError):
        sp.ChainComplex((1, 1, 1), [[[1]], [[1]]])
    with pytest.raises(u.ComplexError):
        sp.ChainComplex((1, 2), [[[1]]])
    with pytest.raises(u.ComplexError):
        sp.ChainComplex((1, 1), [])


def test_boundary_edges():
    c = sp.preset('circle').chain_complex()
    assert c.boundary(0).shape == (0, 1)
    assert c.boundary(2).shape == (1, 0)
    assert c.euler_characteristic() == 0


@pytest.mark.parametrize('name, expected', [
    ('S0',         "(Z^2)"),
    ('S1',         "(Z; Z)"),
    ('S2',         "(Z; 0; Z)"),
    ('S3',         "(Z; 0; 0; Z)"),
    ('circle',     "(Z; Z)"),
    ('rp2',        "(Z; Z/2; 0)"),
    ('rp2-4',      "(Z; Z/2; 0)"),
    ('hp2-sponge', "(Z; 0; Z^3)"),
    ('g42-sponge', "(Z; 0; Z^4)"),
    ('rugby-ball', "(Z; 0; 0; 0)"),
    ('cube',       "(Z; 0; 0; 0)"),
])
def test_preset_homology(name, expected):
    assert str(sp.preset(name).homology()) == expected


def test_homology_result():
    h = sp.preset('rp2').homology()
    assert h.betti == (1, 0, 0)
    assert h.torsion == ((), (2,), ())
    assert not h.is_acyclic()
    assert h.table()[1] == "H1\tZ/2\tbetti=0\ttorsion=[2]"
    assert sp.preset('cube').homology().is_acyclic()


def test_sponge_cell_counts():
    assert sp.build_hp2_sponge().counts == (3, 6, 7)
    assert sp.build_g42_sponge().counts == (6, 12, 11)
    assert sp.build_hp2_sponge().chain_complex().euler_characteristic() == 4


def test_unknown_preset():
    with pytest.raises(u.RegistryError):
        sp.preset('torus')
    with pytest.raises(u.ComplexError):
        sp.build_sphere(4)


# Text format ############################################################

def test_format_and_parse():
    c = sp.build_hp2_sponge().chain_complex()
    text = sp.format_chain_complex(c)
    assert text.splitlines()[:2] == ["2", "3 6 7"]
    parsed = sp.parse_chain_complex(text)
    assert parsed.counts == c.counts
    assert str(sp.homology(parsed)) == "(Z; 0; Z^3)"


def test_parse_with_comments():
    text = """
    # RP^2, minimal
    2
    1 1 1
    0      # d1
    2      # d2
    """
    assert str(sp.homology(sp.parse_chain_complex(text))) == "(Z; Z/2; 0)"


@pytest.mark.parametrize('text', [
    "",
    "1\n1 1 1\n0",
    "1\n2 1\n1",
    "1\n2 1\n1\n-1\n0",
    "1\n2 1\n1 2\n-1 1",
    "1\n1 x\n",
])
def test_parse_errors(text):
    with pytest.raises(u.ComplexError):
        sp.parse_chain_complex(text)


def test_read_chain_complex(tmp_path):
    path = tmp_path / 'rp2.txt'
    path.write_text(sp.format_chain_complex(sp.build_rp2().chain_complex()))
    assert str(sp.homology(sp.read_chain_complex(str(path)))) == "(Z; Z/2; 0)"
    with pytest.raises(u.ComplexError):
        sp.read_chain_complex(str(tmp_path / 'missing.txt'))


# Cell complexes #########################################################

def test_cell_complex_validation():
    cx = sp.CellComplex("test").add(0, 'a').add(0, 'b')
    with pytest.raises(u.ComplexError):
        cx.add(0, 'a')
    with pytest.raises(u.ComplexError):
        cx.add(2, 'f', {'a': 1})
    with pytest.raises(u.ComplexError):
        cx.closure(['z'])


def test_closure_and_subcomplex():
    sponge = sp.build_hp2_sponge()
    assert sponge.closure(['M01']) == {'M01', 'e01+', 'e01-', 'v0', 'v1'}
    biangle = sponge.subcomplex(['M01'])
    assert biangle.counts == (2, 2, 1)
    assert biangle.homology().is_acyclic()


def test_quotient_needs_an_involution():
    circle = sp.build_sphere(1)
    bad = {c: (c, 1) for c in circle.dims}
    bad['[0,1]'] = ('[1,2]', 1)
    with pytest.raises(u.ComplexError):
        circle.quotient(bad)


def test_antipodal_quotient():
    ok, phi = sp.antipodal_quotient_check()
    assert ok
    assert {target for target, _ in phi.values()} == set(sp.build_hp2_sponge().dims)


def test_find_isomorphism():
    assert sp.find_isomorphism(sp.build_sphere(2), sp.build_sphere(2)) is not None
    assert sp.find_isomorphism(sp.build_circle(), sp.build_sphere(1)) is None


def test_gkm_graph():
    graph = sp.build_hp2_gkm()
    assert graph.number_of_nodes() == 3
    assert graph.number_of_edges() == 6
    assert all(degree == 4 for _, degree in graph.degree())


# Homology polytopes #####################################################

@pytest.mark.parametrize('builder', [sp.build_cube, sp.build_rugby_ball])
def test_homology_polytopes(builder):
    assert sp.homology_polytope_check(builder()) == (True, {})


def test_fig2_is_not_a_homology_polytope():
    fc = sp.build_fig2()
    ok, failing = sp.homology_polytope_check(fc)
    assert not ok
    assert list(failing) == ['T']
    assert failing['T'].betti[1] == 1
    assert fc.cells.homology().is_acyclic()


def test_face_needs_a_vertex():
    cx = sp.build_circle()
    with pytest.raises(u.ComplexError):
        sp.FaceComplex(cx, {'empty': []})


# Census #################################################################

def test_hp2_census():
    census = sp.hp2_skeleton_census()
    assert census.counts() == (3, 4, 6, 3)
    assert census.contained['S0+1+'] == {'M01', 'N+++', 'N++-'}
    assert census.contained['S0+1-'] == {'M01', 'N+-+', 'N+--'}
    assert len(census.contained['v0']) == 6
    assert census.contained['M01'] == set()
