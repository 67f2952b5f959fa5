# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

"""
    Finite cell complexes, Smith normal form homology and preset complexes

All arithmetic is on Python integers, so there is no overflow.
Cells are named, and each carries its boundary as a {face: coefficient} dict.
"""

import dataclasses
import itertools
import logging
import typing as t

import networkx as nx
import numpy as np

from . import orbits
from . import util as u


log = logging.getLogger(__name__)

IntMatrix = t.List[t.List[int]]


# Smith normal form ######################################################

def _identity(n:int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m:t.Any) -> t.Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form D = U M V, U and V unimodular, diagonal d1 | d2 | ... >= 0

    Returns (D, U, V) as numpy arrays of Python integers.
    """
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        m = m.reshape(len(m), -1) if m.size else m.reshape(0, 0)
    rows, cols = m.shape
    a = [[int(x) for x in row] for row in m.tolist()]
    left, right = _identity(rows), _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in itertools.chain(a, right):
            row[i], row[j] = row[j], row[i]

    def add_row(target, source, k):
        """row target += k * row source"""
        for mat in (a, left):
            mat[target] = [x + k*y for x, y in zip(mat[target], mat[source])]

    def add_col(target, source, k):
        for row in itertools.chain(a, right):
            row[target] += k * row[source]

    for p in range(min(rows, cols)):
        nonzero = [(abs(a[i][j]), i, j) for i in range(p, rows) for j in range(p, cols) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(p, i)
        swap_cols(p, j)
        while True:
            for i in range(p + 1, rows):
                if a[i][p]:
                    add_row(i, p, -(a[i][p] // a[p][p]))
            for j in range(p + 1, cols):
                if a[p][j]:
                    add_col(j, p, -(a[p][j] // a[p][p]))
            rest = ([(abs(a[i][p]), i, p) for i in range(p + 1, rows) if a[i][p]] +
                    [(abs(a[p][j]), p, j) for j in range(p + 1, cols) if a[p][j]])
            if rest:
                # a remainder smaller than the pivot is left, move it in
                _, i, j = min(rest)
                swap_rows(p, i)
                swap_cols(p, j)
                continue
            bad = next(((i, j) for i in range(p + 1, rows) for j in range(p + 1, cols)
                        if a[i][j] % a[p][p]), None)
            if bad is None:
                break
            add_row(p, bad[0], 1)
        if a[p][p] < 0:
            a[p] = [-x for x in a[p]]
            left[p] = [-x for x in left[p]]

    def array(mat, shape):
        out = np.zeros(shape, dtype=object)
        for i, row in enumerate(mat):
            out[i, :len(row)] = row
        return out

    return array(a, (rows, cols)), array(left, (rows, rows)), array(right, (cols, cols))


def elementary_divisors(m:t.Any) -> t.List[int]:
    """Non-zero diagonal of the Smith normal form"""
    d, _, _ = smith_normal_form(m)
    return [int(d[i, i]) for i in range(min(d.shape)) if d[i, i]]


def integer_rank(m:t.Any) -> int:
    return len(elementary_divisors(m)) if np.size(m) else 0


# Chain complexes and homology ###########################################

class ChainComplex:
    """Integer boundary matrices d_1, ..., d_top, with d_k of shape (n_(k-1), n_k)"""

    def __init__(self, counts:t.Sequence[int], boundaries:t.Sequence[t.Any], check:bool = True):
        self.counts = tuple(int(_) for _ in counts)
        if len(boundaries) != len(self.counts) - 1:
            raise u.ComplexError("Need %s boundary matrices for %s dimensions, got %s",
                                 len(self.counts) - 1, len(self.counts), len(boundaries))
        self.boundaries = []
        for k, b in enumerate(boundaries, 1):
            mat = np.zeros((self.counts[k-1], self.counts[k]), dtype=object)
            b = np.asarray(b, dtype=object)
            if b.size or mat.size:
                if b.shape != mat.shape:
                    raise u.ComplexError("Boundary %s has shape %s, expected %s",
                                         k, b.shape, mat.shape)
                mat[...] = b
            self.boundaries.append(mat)
        if check:
            self.check()

    @property
    def dimension(self) -> int:
        return len(self.counts) - 1

    def boundary(self, k:int) -> np.ndarray:
        """d_k, with d_0 and d_(top+1) as empty matrices"""
        if 1 <= k <= self.dimension:
            return self.boundaries[k-1]
        rows = self.counts[k-1] if k > 0 else 0
        cols = self.counts[k] if k <= self.dimension else 0
        return np.zeros((rows, cols), dtype=object)

    def check(self):
        for k in range(1, self.dimension):
            product = self.boundaries[k-1].dot(self.boundaries[k])
            if np.any(product != 0):
                raise u.ComplexError("Boundary of boundary is not zero in dimension %s", k + 1)

    def euler_characteristic(self) -> int:
        return sum((-1)**k * n for k, n in enumerate(self.counts))

    def __repr__(self):
        return u.fullrepr(self, ('counts',))


@dataclasses.dataclass(frozen=True)
class HomologyGroup:
    betti:   int
    torsion: t.Tuple[int, ...] = ()

    def is_zero(self) -> bool:
        return not self.betti and not self.torsion

    def __str__(self):
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts.extend(f"Z/{_}" for _ in self.torsion)
        return " + ".join(parts) or "0"


class HomologyResult(tuple):
    """Integral homology groups H_0, ..., H_top"""

    @property
    def betti(self) -> t.Tuple[int, ...]:
        return tuple(_.betti for _ in self)

    @property
    def torsion(self) -> t.Tuple[t.Tuple[int, ...], ...]:
        return tuple(_.torsion for _ in self)

    def is_acyclic(self) -> bool:
        """Reduced homology vanishes"""
        return (bool(self) and self[0] == HomologyGroup(1)
                and all(_.is_zero() for _ in self[1:]))

    def table(self) -> t.List[str]:
        return [f"H{k}\t{g}\tbetti={g.betti}\ttorsion={list(g.torsion)}"
                for k, g in enumerate(self)]

    def __str__(self):
        return "(" + "; ".join(map(str, self)) + ")"


def homology(c:ChainComplex) -> HomologyResult:
    c.check()
    divisors = [elementary_divisors(c.boundary(k)) if np.size(c.boundary(k)) else []
                for k in range(c.dimension + 2)]
    groups = []
    for k, n in enumerate(c.counts):
        rank_out = len(divisors[k]) if k > 0 else 0
        rank_in = len(divisors[k+1]) if k < c.dimension else 0
        torsion = tuple(_ for _ in (divisors[k+1] if k < c.dimension else []) if _ > 1)
        groups.append(HomologyGroup(n - rank_out - rank_in, torsion))
    return HomologyResult(groups)


# Text format ############################################################

def format_chain_complex(c:ChainComplex) -> str:
    """Top dimension, cell counts, then each boundary matrix as rows of integers"""
    lines = [str(c.dimension), ' '.join(map(str, c.counts))]
    for k, b in enumerate(c.boundaries, 1):
        lines.append(f"# d{k}")
        lines.extend(' '.join(str(int(x)) for x in row) for row in b)
    return '\n'.join(lines) + '\n'


def parse_chain_complex(text:str) -> ChainComplex:
    lines = [_.split('#', 1)[0].strip() for _ in text.splitlines()]
    lines = [_ for _ in lines if _]
    try:
        dim = int(lines[0])
        counts = [int(_) for _ in lines[1].split()]
        if len(counts) != dim + 1:
            raise u.ComplexError("Expected %s cell counts, got %s", dim + 1, len(counts))
        rows = iter(lines[2:])
        boundaries = []
        for k in range(1, dim + 1):
            mat = [[int(x) for x in next(rows).split()] for _ in range(counts[k-1])
                   ] if counts[k] else []
            if counts[k] and any(len(_) != counts[k] for _ in mat):
                raise u.ComplexError("Rows of boundary %s must have %s entries", k, counts[k])
            boundaries.append(mat)
        if next(rows, None) is not None:
            raise u.ComplexError("Trailing data after the last boundary matrix")
    except (IndexError, ValueError, StopIteration) as e:
        raise u.ComplexError("Malformed chain complex: %s", str(e) or "missing rows")
    return ChainComplex(counts, boundaries)


def read_chain_complex(path:str) -> ChainComplex:
    try:
        with open(path, encoding='utf-8') as fd:
            return parse_chain_complex(fd.read())
    except OSError as e:
        raise u.ComplexError("Cannot read chain complex: %s", e)


# Cell complexes #########################################################

Boundary = t.Dict[str, int]


class CellComplex:
    """Named cells by dimension, each with its signed boundary"""

    def __init__(self, name:str = ""):
        self.name = name
        self.cells: t.List[t.List[str]] = []
        self.boundary: t.Dict[str, Boundary] = {}
        self.dims: t.Dict[str, int] = {}

    def add(self, dim:int, name:str, boundary:t.Optional[Boundary] = None) -> 'CellComplex':
        if name in self.dims:
            raise u.ComplexError("Duplicate cell %r in %s", name, self.name)
        boundary = {k: v for k, v in (boundary or {}).items() if v}
        for face in boundary:
            if self.dims.get(face) != dim - 1:
                raise u.ComplexError("Face %r of %r is not a %s-cell", face, name, dim - 1)
        while len(self.cells) <= dim:
            self.cells.append([])
        self.cells[dim].append(name)
        self.boundary[name] = boundary
        self.dims[name] = dim
        return self

    @property
    def counts(self) -> t.Tuple[int, ...]:
        return tuple(map(len, self.cells))

    def chain_complex(self) -> ChainComplex:
        index = {c: i for cells in self.cells for i, c in enumerate(cells)}
        mats = []
        for k in range(1, len(self.cells)):
            mat = np.zeros((len(self.cells[k-1]), len(self.cells[k])), dtype=object)
            for j, c in enumerate(self.cells[k]):
                for face, coeff in self.boundary[c].items():
                    mat[index[face], j] = coeff
            mats.append(mat)
        return ChainComplex(self.counts, mats)

    def homology(self) -> HomologyResult:
        return homology(self.chain_complex())

    def closure(self, names:t.Iterable[str]) -> t.Set[str]:
        todo = list(names)
        found = set()
        while todo:
            c = todo.pop()
            if c not in self.dims:
                raise u.ComplexError("No such cell %r in %s", c, self.name)
            if c not in found:
                found.add(c)
                todo.extend(self.boundary[c])
        return found

    def subcomplex(self, names:t.Iterable[str], name:str = "") -> 'CellComplex':
        """Closure of the given cells, as a complex of its own"""
        keep = self.closure(names)
        sub = CellComplex(name or self.name)
        for dim, cells in enumerate(self.cells):
            for c in cells:
                if c in keep:
                    sub.add(dim, c, self.boundary[c])
        return sub

    def quotient(self, involution:t.Mapping[str, t.Tuple[str, int]], name:str = ""
                 ) -> 'CellComplex':
        """Quotient by a cellular involution c -> sign * sigma(c)

        Free orbits keep their first cell as representative. A cell mapped to
        itself gets half the image of its boundary, the cone over half of it.
        """
        rep = {}
        for cells in self.cells:
            for c in cells:
                image, sign = involution[c]
                if involution[image] != (c, sign):
                    raise u.ComplexError("Not an involution at %r", c)
                if image != c and image in rep:
                    rep[c] = (rep[image][0], sign)
                else:
                    rep[c] = (c, 1)
        quo = CellComplex(name or f"{self.name}/involution")
        for dim, cells in enumerate(self.cells):
            for c in cells:
                if rep[c][0] != c:
                    continue
                image = {}
                for face, coeff in self.boundary[c].items():
                    r, s = rep[face]
                    image[r] = image.get(r, 0) + s * coeff
                if involution[c][0] == c:
                    if any(_ % 2 for _ in image.values()):
                        raise u.ComplexError("Boundary of self-paired cell %r is not doubled", c)
                    image = {k: v // 2 for k, v in image.items()}
                quo.add(dim, c, image)
        return quo

    def __repr__(self):
        return u.fullrepr(self, ('name', 'counts'))


def find_isomorphism(a:CellComplex, b:CellComplex
                     ) -> t.Optional[t.Dict[str, t.Tuple[str, int]]]:
    """Incidence-preserving bijection a -> b, cells with signs, by backtracking

    Vertices map with sign +1, and every cell c must satisfy
    d(phi c) = sign(c) phi(d c).
    """
    if a.counts != b.counts:
        return None
    order = [c for cells in a.cells for c in cells]
    phi: t.Dict[str, t.Tuple[str, int]] = {}
    used: t.Set[str] = set()

    def compatible(c, target, sign):
        if len(a.boundary[c]) != len(b.boundary[target]):
            return False
        image = {}
        for face, coeff in a.boundary[c].items():
            f, s = phi[face]
            image[f] = sign * s * coeff
        return image == b.boundary[target]

    def search(k):
        if k == len(order):
            return True
        c = order[k]
        for target in b.cells[a.dims[c]]:
            if target in used:
                continue
            for sign in ((1,) if a.dims[c] == 0 else (1, -1)):
                if compatible(c, target, sign):
                    phi[c] = (target, sign)
                    used.add(target)
                    if search(k + 1):
                        return True
                    del phi[c]
                    used.discard(target)
        return False

    return dict(phi) if search(0) else None


def conjugates(a:CellComplex, b:CellComplex, phi:t.Mapping[str, t.Tuple[str, int]]) -> bool:
    """Whether the signed permutation matrices of phi conjugate the boundary matrices"""
    ca, cb = a.chain_complex(), b.chain_complex()

    def matrix(dim):
        index = {c: i for i, c in enumerate(b.cells[dim])}
        mat = np.zeros((len(b.cells[dim]), len(a.cells[dim])), dtype=object)
        for j, c in enumerate(a.cells[dim]):
            target, sign = phi[c]
            mat[index[target], j] = sign
        return mat

    for k in range(1, ca.dimension + 1):
        lhs = matrix(k - 1).dot(ca.boundary(k))
        rhs = cb.boundary(k).dot(matrix(k))
        if np.any(lhs != rhs):
            return False
    return True


# Presets ################################################################

def build_sphere(k:int) -> CellComplex:
    """S^k as the boundary of the (k+1)-simplex"""
    if not 0 <= k <= 3:
        raise u.ComplexError("Sphere presets go up to dimension 3, got %s", k)
    sphere = CellComplex(f"S{k}")
    name = lambda s: '[' + ','.join(map(str, s)) + ']'
    for dim in range(k + 1):
        for s in itertools.combinations(range(k + 2), dim + 1):
            sphere.add(dim, name(s), {name(s[:i] + s[i+1:]): (-1)**i
                                      for i in range(len(s))} if dim else None)
    return sphere


def build_circle() -> CellComplex:
    return CellComplex("circle").add(0, 'v').add(1, 'e', {})


def build_rp2() -> CellComplex:
    """Minimal CW structure of RP^2: one cell per dimension, the 2-cell wrapping twice"""
    return CellComplex("rp2").add(0, 'v').add(1, 'e', {}).add(2, 'f', {'e': 2})


SIGNS = ('+', '-')
_SIGN = {'+': 1, '-': -1}
_PAIRS = ((0, 1), (1, 2), (0, 2))


def _mult(a:str, b:str) -> str:
    return '+' if a == b else '-'


def build_hp2_sponge() -> CellComplex:
    """Codimension-2 skeleton of HP^2 / T^3: four triangles of RP^2 plus three biangles

    Vertices v_i are the fixed points, edge e{ij}{s} is the 2-sphere S_{i+ j s},
    triangle N{eps} the CP^2 with sign pattern eps, biangle M{ij} the HP^1,
    attached with degree one along its two edges.
    """
    sponge = CellComplex("hp2-sponge")
    for i in range(3):
        sponge.add(0, f"v{i}")
    for (i, j), s in itertools.product(_PAIRS, SIGNS):
        sponge.add(1, f"e{i}{j}{s}", {f"v{i}": -1, f"v{j}": 1})
    for eps in itertools.product('+', SIGNS, SIGNS):
        e0, e1, e2 = eps
        sponge.add(2, 'N' + ''.join(eps), {f"e01{_mult(e0, e1)}": 1,
                                            f"e12{_mult(e1, e2)}": 1,
                                            f"e02{_mult(e0, e2)}": -1})
    for i, j in _PAIRS:
        sponge.add(2, f"M{i}{j}", {f"e{i}{j}+": 1, f"e{i}{j}-": -1})
    return sponge


def build_rp2_triangulated() -> CellComplex:
    """The four triangles of the HP^2 sponge, a triangulation of RP^2"""
    sponge = build_hp2_sponge()
    return sponge.subcomplex([_ for _ in sponge.cells[2] if _.startswith('N')], "rp2-4")


_AXES = 'xyz'


def build_g42_sponge() -> CellComplex:
    """Octahedron boundary plus three squares along the equators

    Vertices x+, x-, y+, ..., edge e{ab}{sa}{sb} joins axis a to axis b (a before b),
    triangle T{sx}{sy}{sz}, square Q{c} spans the equator orthogonal to axis c.
    """
    sponge = CellComplex("g42-sponge")
    for axis, s in itertools.product(_AXES, SIGNS):
        sponge.add(0, f"{axis}{s}")
    for (i, j), (si, sj) in itertools.product(_PAIRS, itertools.product(SIGNS, repeat=2)):
        a, b = _AXES[i], _AXES[j]
        sponge.add(1, f"e{a}{b}{si}{sj}", {f"{a}{si}": -1, f"{b}{sj}": 1})
    for sx, sy, sz in itertools.product(SIGNS, repeat=3):
        sponge.add(2, f"T{sx}{sy}{sz}", {f"exy{sx}{sy}": 1,
                                          f"eyz{sy}{sz}": 1,
                                          f"exz{sx}{sz}": -1})
    for c, (i, j) in zip('zxy', _PAIRS):
        a, b = _AXES[i], _AXES[j]
        # a+ -> b+ -> a- -> b- -> a+
        sponge.add(2, f"Q{c}", {f"e{a}{b}++": 1, f"e{a}{b}-+": -1,
                                f"e{a}{b}--": 1, f"e{a}{b}+-": -1})
    return sponge


def antipodal_involution(g42:CellComplex) -> t.Dict[str, t.Tuple[str, int]]:
    """x -> -x on the G(4,2) sponge: flips every sign, preserving orientations"""
    flip = lambda s: s.translate(str.maketrans('+-', '-+'))
    return {c: (c if c.startswith('Q') else flip(c), 1) for c in g42.dims}


def antipodal_quotient_check() -> t.Tuple[bool, t.Optional[t.Dict[str, t.Tuple[str, int]]]]:
    """The G(4,2) sponge mod the antipodal map is the HP^2 sponge, as incidence structures"""
    g42 = build_g42_sponge()
    quo = g42.quotient(antipodal_involution(g42), "g42-sponge/antipodal")
    hp2 = build_hp2_sponge()
    phi = find_isomorphism(quo, hp2)
    if phi is None:
        log.warning("No isomorphism between %r and %r", quo, hp2)
        return False, None
    if not conjugates(quo, hp2, phi):
        log.warning("Isomorphism does not conjugate the boundary matrices")
        return False, phi
    return True, phi


def build_hp2_gkm() -> nx.MultiGraph:
    """GKM graph of HP^2: a triangle with doubled edges, one per invariant 2-sphere"""
    graph = nx.MultiGraph(name="hp2-gkm")
    graph.add_nodes_from(f"v{i}" for i in range(3))
    for (i, j), s in itertools.product(_PAIRS, SIGNS):
        graph.add_edge(f"v{i}", f"v{j}", key=s, sphere=f"S{i}+{j}{s}")
    return graph


# Face complexes and homology polytopes ##################################

class FaceComplex:
    """Manifold with corners: a cell complex plus its faces, each a set of cells"""

    def __init__(self, cells:CellComplex, faces:t.Mapping[str, t.Iterable[str]]):
        self.cells = cells
        self.faces = {name: frozenset(cells.closure(top)) for name, top in faces.items()}
        for name, face in self.faces.items():
            if not any(cells.dims[_] == 0 for _ in face):
                raise u.ComplexError("Face %r has no vertex", name)

    def face_complex(self, name:str) -> CellComplex:
        return self.cells.subcomplex(self.faces[name], name)

    def __repr__(self):
        return u.fullrepr(self, ('cells',))


def homology_polytope_check(fc:FaceComplex) -> t.Tuple[bool, t.Dict[str, HomologyResult]]:
    """Whether every face is Z-acyclic. Returns the failing faces with their homology"""
    failing = {}
    for name in fc.faces:
        h = fc.face_complex(name).homology()
        if not h.is_acyclic():
            log.debug("Face %s is not acyclic: %s", name, h)
            failing[name] = h
    return not failing, failing


def build_cube(n:int = 3) -> FaceComplex:
    """Cubical structure of [0,1]^n, every cell a face"""
    cube = CellComplex(f"cube{n}")
    for dim in range(n + 1):
        for word in sorted(set(itertools.permutations('*' * dim + '01' * n, n))):
            word = ''.join(word)
            if word.count('*') != dim:
                continue
            stars = [i for i, ch in enumerate(word) if ch == '*']
            boundary = {}
            for k, i in enumerate(stars):
                for end, sign in (('1', 1), ('0', -1)):
                    boundary[word[:i] + end + word[i+1:]] = (-1)**k * sign
            cube.add(dim, word, boundary)
    return FaceComplex(cube, {c: [c] for c in cube.dims})


def _rugby_cells(cx:CellComplex, prime:str = "") -> None:
    s, n = f"S{prime}", f"N{prime}"
    cx.add(0, s).add(0, n)
    for i, j in ((1, 2), (1, 3), (2, 3)):
        cx.add(1, f"E{prime}{i}{j}", {s: -1, n: 1})


def build_rugby_ball() -> FaceComplex:
    """Orbit space of the standard T^3 action on S^6: a 3-disk with two corners"""
    cx = CellComplex("rugby-ball")
    _rugby_cells(cx)
    cx.add(2, 'F1', {'E12': 1, 'E13': -1})
    cx.add(2, 'F2', {'E23': 1, 'E12': -1})
    cx.add(2, 'F3', {'E13': 1, 'E23': -1})
    cx.add(3, 'B', {'F1': 1, 'F2': 1, 'F3': 1})
    return FaceComplex(cx, {c: [c] for c in cx.dims})


def build_fig2() -> FaceComplex:
    """Connected sum of two rugby balls along interior points of facets F1 and F1'

    The merged facet T is an annulus, a single 2-cell glued along both
    boundary circles. The connecting edge X is not a face of its own, it
    belongs to the faces T and B.
    """
    cx = CellComplex("fig2")
    _rugby_cells(cx)
    _rugby_cells(cx, "'")
    cx.add(1, 'X', {'S': -1, "S'": 1})
    cx.add(2, 'F2', {'E23': 1, 'E12': -1})
    cx.add(2, 'F3', {'E13': 1, 'E23': -1})
    cx.add(2, "F2'", {"E'23": 1, "E'12": -1})
    cx.add(2, "F3'", {"E'13": 1, "E'23": -1})
    cx.add(2, 'T', {'E12': 1, 'E13': -1, "E'12": -1, "E'13": 1})
    cx.add(3, 'B', {'F2': 1, 'F3': 1, 'T': 1, "F2'": -1, "F3'": -1})
    faces = {c: [c] for c in cx.dims if c != 'X'}
    faces['T'] = ['T', 'X']  # X runs across the annulus, cutting it into a disk
    faces['B'] = ['B', 'X']
    return FaceComplex(cx, faces)


# Registry of named presets, for the CLI
PRESETS: t.Dict[str, t.Callable[[], CellComplex]] = {
    'hp2-sponge': build_hp2_sponge,
    'g42-sponge': build_g42_sponge,
    'rp2':        build_rp2,
    'rp2-4':      build_rp2_triangulated,
    'circle':     build_circle,
    'fig2':       lambda: build_fig2().cells,
    'rugby-ball': lambda: build_rugby_ball().cells,
    'cube':       lambda: build_cube().cells,
    **{f"S{k}": (lambda k=k: build_sphere(k)) for k in range(4)},
}


def preset(name:str) -> CellComplex:
    try:
        return PRESETS[name]()
    except KeyError:
        raise u.RegistryError("Unknown preset %r, try one of: %s", name, ', '.join(PRESETS))


# Skeleton census of HP^2 ################################################

@dataclasses.dataclass
class Census:
    patterns:  t.Dict[str, str]
    contained: t.Dict[str, t.Set[str]]

    def counts(self) -> t.Tuple[int, int, int, int]:
        """(M, N, S, fixed points)"""
        return tuple(sum(1 for _ in self.patterns if _.startswith(p))
                     for p in 'MNSv')


def _refines(small:str, big:str) -> bool:
    allowed = {'*': '*+-0', '+': '+0', '-': '-0', '0': '0'}
    return all(s in allowed[b] for s, b in zip(small, big))


def hp2_skeleton_census() -> Census:
    """Invariant submanifolds of HP^2 from their coordinate patterns, with inclusions

    Patterns are taken modulo the global sign flip, the right action of j.
    """
    kinds = orbits.StratumKind
    strata = []
    for k, (i, j) in zip((2, 0, 1), _PAIRS):
        strata.append(orbits.Stratum(kinds.QUATERNIONIC,
                                     ''.join('0' if _ == k else '*' for _ in range(3))))
        for s in SIGNS:
            p = ['0'] * 3
            p[i], p[j] = '+', s
            strata.append(orbits.Stratum(kinds.SPHERE, ''.join(p)))
    for eps in itertools.product('+', SIGNS, SIGNS):
        strata.append(orbits.Stratum(kinds.COMPLEX, ''.join(eps)))
    for i in range(3):
        strata.append(orbits.Stratum(kinds.VERTEX, ''.join('+' if _ == i else '0'
                                                           for _ in range(3))))
    flip = str.maketrans('+-', '-+')
    patterns = {s.label: s.pattern for s in strata}
    contained = {
        a: {b for b, q in patterns.items() if a != b and b[0] in 'MN'
            and (_refines(p, q) or _refines(p.translate(flip), q))}
        for a, p in patterns.items()
    }
    return Census(patterns, contained)
