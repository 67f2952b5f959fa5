# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

"""
    Model spaces over polygons: quasitoric pairs and quoric characteristic functors

Polygons are purely combinatorial: sides 0..m-1 in cyclic order, and vertex i
joins sides i and i+1 (mod m).
"""

import dataclasses
import enum
import fractions
import itertools
import logging
import math
import typing as t

import numpy as np

from . import algebra as alg
from . import orbits
from . import sponge
from . import util as u


log = logging.getLogger(__name__)

Vector = t.Tuple[int, ...]


class Color(enum.Enum):
    """Subgroups of S^3 x S^3 assigned to the sides of a quoric polygon"""
    S1  = 'S1'   # first factor
    S2  = 'S2'   # second factor
    S12 = 'S12'  # diagonal

    @classmethod
    def from_string(cls, s:str) -> 'Color':
        """Case-insensitive by name, allowing a missing 'S' prefix"""
        s = s.strip().upper()
        try:
            return cls[s if s.startswith('S') else 'S' + s]
        except KeyError:
            raise u.ModelError("Invalid color: %r, try '%s'", s,
                               "', '".join(_.value for _ in cls))

    @property
    def order(self) -> int:
        return list(Color).index(self)

    def swapped(self) -> 'Color':
        """Exchange of the two factors, which fixes the diagonal"""
        return {Color.S1: Color.S2, Color.S2: Color.S1}.get(self, self)

    def __str__(self):
        return self.value


class FaceKind(enum.Enum):
    INTERIOR = 'interior'
    SIDE     = 'side'
    VERTEX   = 'vertex'


class FiberType(enum.Enum):
    POINT    = 'point'
    INTERVAL = 'interval'
    SPHERE   = 'sphere'      # 2-sphere, interior fibers of the involution quotient
    S3       = 'S3-quotient'  # 3-sphere, interior fibers of the quoric T^3 quotient


class Symmetry(enum.Enum):
    RAW    = 'raw'
    SWAP12 = 'swap12'
    FULL   = 'full'

    @classmethod
    def from_string(cls, s:str) -> 'Symmetry':
        s = s.strip().lower()
        if s == 'dihedral+swap12':
            return cls.FULL
        try:
            return cls(s)
        except ValueError:
            raise u.ModelError("Invalid symmetry: %r, try '%s'", s,
                               "', '".join(_.value for _ in cls))


@dataclasses.dataclass(frozen=True)
class Polygon:
    m: int

    def __post_init__(self):
        if self.m < 3:
            raise u.ModelError("A polygon needs at least 3 sides, got %s", self.m)

    def sides_at(self, vertex:int) -> t.Tuple[int, int]:
        return vertex % self.m, (vertex + 1) % self.m

    def vertices_of(self, side:int) -> t.Tuple[int, int]:
        return (side - 1) % self.m, side % self.m

    def f_vector(self) -> t.Tuple[int, int, int]:
        """(f_-1, f_0, f_1): the empty face, vertices and sides"""
        return 1, self.m, self.m


@dataclasses.dataclass(frozen=True)
class FacePoint:
    """Point of a polygon, located by the open face containing it"""
    kind:  FaceKind
    index: int = 0

    @classmethod
    def interior(cls) -> 'FacePoint':
        return cls(FaceKind.INTERIOR)

    @classmethod
    def side(cls, i:int) -> 'FacePoint':
        return cls(FaceKind.SIDE, i)

    @classmethod
    def vertex(cls, i:int) -> 'FacePoint':
        return cls(FaceKind.VERTEX, i)


@dataclasses.dataclass(frozen=True)
class QTCharPair:
    """Quasitoric characteristic pair: per side a primitive vector of Z^2"""
    polygon: Polygon
    lambdas: t.Tuple[Vector, ...]

    def __post_init__(self):
        lambdas = tuple(tuple(int(_) for _ in v) for v in self.lambdas)
        object.__setattr__(self, 'lambdas', lambdas)
        if len(lambdas) != self.polygon.m:
            raise u.ModelError("Need %s side vectors, got %s", self.polygon.m, len(lambdas))
        for v in lambdas:
            if len(v) != 2 or math.gcd(*v) != 1:
                raise u.ModelError("Side vector is not a primitive vector of Z^2: %s", v)

    @classmethod
    def from_vectors(cls, *lambdas:Vector) -> 'QTCharPair':
        return cls(Polygon(len(lambdas)), lambdas)

    def __str__(self):
        return format_char_pair(self)


@dataclasses.dataclass(frozen=True)
class QuoricFunctor:
    """Quoric characteristic functor over a polygon: a color per side"""
    polygon: Polygon
    colors:  t.Tuple[Color, ...]

    def __post_init__(self):
        object.__setattr__(self, 'colors', tuple(
            _ if isinstance(_, Color) else Color.from_string(_) for _ in self.colors))
        if len(self.colors) != self.polygon.m:
            raise u.ModelError("Need %s side colors, got %s", self.polygon.m, len(self.colors))

    @classmethod
    def from_colors(cls, *colors:t.Union[Color, str]) -> 'QuoricFunctor':
        return cls(Polygon(len(colors)), tuple(colors))

    def key(self) -> t.Tuple[int, ...]:
        return tuple(_.order for _ in self.colors)

    def __str__(self):
        return format_coloring(self)


@dataclasses.dataclass(frozen=True)
class WeightSet:
    """Tangent weights of a torus representation, with the chart they come from"""
    weights:    t.Tuple[Vector, ...]
    chart:      str = ""
    relabeling: t.Optional[t.Tuple[Vector, ...]] = None

    def __iter__(self):
        return iter(self.weights)

    def __len__(self):
        return len(self.weights)

    def as_set(self) -> t.Set[Vector]:
        return set(self.weights)


class HVector(tuple):
    """(h_0, ..., h_n) of a simple polytope"""
    def __repr__(self):
        return u.clsrepr(self, ', '.join(map(str, self)))


# Quasitoric pairs and the conjugation involution ########################

def star_condition_check(cp:QTCharPair) -> t.Tuple[bool, t.List[int]]:
    """Adjacent side vectors must form a basis of Z^2. Returns the violating vertices"""
    bad = []
    for v in range(cp.polygon.m):
        i, j = cp.polygon.sides_at(v)
        (a, b), (c, d) = cp.lambdas[i], cp.lambdas[j]
        if abs(a*d - b*c) != 1:
            bad.append(v)
    return not bad, bad


def circle_contains(lam:Vector, angles:t.Sequence[fractions.Fraction]) -> bool:
    """Whether angles (as fractions of a turn) lie in the circle subgroup of primitive lam"""
    a, b = lam
    x, y = angles
    return (b*x - a*y) % 1 == 0


def equivalent(cp:QTCharPair, face:FacePoint, t1, t2) -> bool:
    """Whether (x, t1) and (x, t2) are identified in X = (P x T^2) / ~"""
    diff = tuple(fractions.Fraction(b) - fractions.Fraction(a) for a, b in zip(t1, t2))
    if face.kind is FaceKind.INTERIOR:
        return all(_ % 1 == 0 for _ in diff)
    if face.kind is FaceKind.SIDE:
        return circle_contains(cp.lambdas[face.index], diff)
    return True


def conjugate(angles):
    return tuple((-fractions.Fraction(_)) % 1 for _ in angles)


def random_fraction(rng:np.random.Generator, denominator:int = 720) -> fractions.Fraction:
    return fractions.Fraction(int(rng.integers(denominator)), denominator)


def conj_involution_welldef(cp:QTCharPair, count:int = 10000, seed:int = 0,
                            samples:t.Optional[t.Iterable] = None
                            ) -> t.Tuple[bool, t.Optional[tuple]]:
    """Check that t -> conj(t) respects the identifications of X_(P, lambda)

    Samples are (face, t, t') with t' equivalent to t over face, by default
    drawn over sides and vertices. Arithmetic is exact, with angles as
    fractions of a turn. Returns the first violating sample, if any.
    """
    if samples is None:
        samples = _equivalent_samples(cp, count, seed)
    for face, t1, t2 in samples:
        if not equivalent(cp, face, t1, t2):
            raise u.ModelError("Sample is not an equivalent pair: %s", (face, t1, t2))
        if not equivalent(cp, face, conjugate(t1), conjugate(t2)):
            log.warning("Involution breaks the identification at %s: %s ~ %s", face, t1, t2)
            return False, (face, t1, t2)
    return True, None


def _equivalent_samples(cp:QTCharPair, count:int, seed:int):
    rng = np.random.default_rng(seed)
    m = cp.polygon.m
    for _ in range(count):
        t1 = (random_fraction(rng), random_fraction(rng))
        k = int(rng.integers(2 * m))
        if k < m:
            face = FacePoint.side(k)
            s = random_fraction(rng)
            a, b = cp.lambdas[k]
            t2 = ((t1[0] + s*a) % 1, (t1[1] + s*b) % 1)
        else:
            face = FacePoint.vertex(k - m)
            t2 = (random_fraction(rng), random_fraction(rng))
        yield face, t1, t2


def sigma_fixed(cp:QTCharPair, face:FacePoint, angles) -> bool:
    """Whether the point (face, t) of X_(P, lambda) is fixed by t -> conj(t)

    Interior points need t in {+-1}^2, side points need t^2 in the side
    circle, and vertices are always fixed.
    """
    return equivalent(cp, face, angles, conjugate(angles))


def sigma_fixed_interior() -> t.List[t.Tuple[fractions.Fraction, fractions.Fraction]]:
    """Interior torus fibers fixed by conjugation: t = conj(t), that is t in {+-1}^2"""
    halves = (fractions.Fraction(0), fractions.Fraction(1, 2))
    return [p for p in itertools.product(halves, repeat=2) if conjugate(p) == p]


def sigma_fiber_type(cp:QTCharPair, x:FacePoint) -> FiberType:
    """Fiber of X / conj -> P over x: T^2/conj, a circle mod conj, or a point"""
    return {
        FaceKind.INTERIOR: FiberType.SPHERE,
        FaceKind.SIDE:     FiberType.INTERVAL,
        FaceKind.VERTEX:   FiberType.POINT,
    }[x.kind]


def sigma_fiber_point(cp:QTCharPair, x:FacePoint, angles:t.Sequence[float]) -> np.ndarray:
    """Coordinates of the orbit of (x, t) in the model of its fiber

    interior: the sphere w^2 = (1 - u^2)(1 - v^2) of T^2 / conj;
    side:     cos of the angle of T^2 / lambda, folded by conj to [-1, 1];
    vertex:   the empty coordinate vector.
    """
    x1, y1 = (float(_) for _ in angles)
    if x.kind is FaceKind.INTERIOR:
        return orbits.torus_invol_quotient(x1, y1).coords
    if x.kind is FaceKind.SIDE:
        a, b = cp.lambdas[x.index]
        return np.array((np.cos(u.TAU * (b*x1 - a*y1)),))
    return np.zeros(0)


# Quoric functors ########################################################

def quoric_coloring_valid(qf:QuoricFunctor) -> bool:
    m = qf.polygon.m
    return all(qf.colors[i] != qf.colors[(i + 1) % m] for i in range(m))


def _backtrack(m:int) -> t.Iterator[t.Tuple[Color, ...]]:
    colors = list(Color)
    path: t.List[Color] = []

    def extend():
        if len(path) == m:
            if path[-1] != path[0]:
                yield tuple(path)
            return
        for c in colors:
            if path and c == path[-1]:
                continue
            path.append(c)
            yield from extend()
            path.pop()

    yield from extend()


def brute_force_quoric(m:int) -> t.List[t.Tuple[Color, ...]]:
    """All proper colorings by exhaustion of the 3^m assignments"""
    return [c for c in itertools.product(Color, repeat=m)
            if quoric_coloring_valid(QuoricFunctor(Polygon(m), c))]


def canonical(colors:t.Sequence[Color], symmetry:Symmetry) -> t.Tuple[Color, ...]:
    """Lexicographically minimal representative under the allowed symmetries

    The diagonal color is never exchanged with the others.
    """
    colors = tuple(colors)
    variants = [colors]
    if symmetry is Symmetry.RAW:
        return colors
    if symmetry is Symmetry.FULL:
        m = len(colors)
        rotations = [colors[k:] + colors[:k] for k in range(m)]
        variants = rotations + [tuple(reversed(_)) for _ in rotations]
    variants += [tuple(_.swapped() for _ in v) for v in variants]
    return min(variants, key=lambda v: tuple(_.order for _ in v))


def enumerate_quoric(m:int, symmetry:t.Union[str, Symmetry] = Symmetry.RAW
                     ) -> t.List[QuoricFunctor]:
    """All proper cyclic 3-colorings of the m-gon, optionally up to symmetry"""
    polygon = Polygon(m)
    if isinstance(symmetry, str):
        symmetry = Symmetry.from_string(symmetry)
    seen = set()
    found = []
    for colors in _backtrack(m):
        key = canonical(colors, symmetry)
        if key in seen:
            continue
        seen.add(key)
        found.append(QuoricFunctor(polygon, key))
    found.sort(key=QuoricFunctor.key)
    log.debug("%s colorings of the %s-gon, symmetry %s", len(found), m, symmetry.value)
    return found


def count_proper_colorings(m:int) -> int:
    """Chromatic polynomial of the m-cycle at 3 colors"""
    return 2**m + 2 * (-1)**m


# Torus action weights ###################################################

# Bimultiplication charts: per quaternion factor, the exponent vectors (L, R)
# of the action s -> t^L s t^R of T^3
CHARTS = {
    'A': (((1, 0, 0), (0, 0, 1)), ((0, 1, 0), (0, 0, 1))),   # (t1 s1 t3, t2 s2 t3)
    'B': (((1, 0, 0), (0, -1, 0)), ((0, 1, 0), (0, 0, 1))),  # (t1 s1 t2^-1, t2 s2 t3)
}
SWAP_FACTORS = ((0, 1, 0), (1, 0, 0), (0, 0, 1))


def _primitive_sign(v:Vector) -> Vector:
    first = next((_ for _ in v if _), 1)
    return tuple(_ if first > 0 else -_ for _ in v)


def tangent_weights(chart:t.Sequence[t.Tuple[Vector, Vector]]) -> t.Tuple[Vector, ...]:
    """Weights of h -> t^L h t^R on each H = C + jC at the origin

    z has weight L + R and j u has weight R - L, signs normalized so the
    first non-zero entry is positive.
    """
    weights = []
    for left, right in chart:
        left, right = np.array(left), np.array(right)
        weights.append(_primitive_sign(tuple(int(_) for _ in left + right)))
        weights.append(_primitive_sign(tuple(int(_) for _ in right - left)))
    return tuple(weights)


def chart_weights(chart:str) -> WeightSet:
    try:
        return WeightSet(tangent_weights(CHARTS[chart.upper()]), chart.upper())
    except KeyError:
        raise u.ModelError("Unsupported chart %r, try '%s'", chart, "' or '".join(CHARTS))


def quoric_weights(qf:QuoricFunctor, vertex:int) -> WeightSet:
    """Tangent weights of the T^3 action at the fixed point over a vertex

    {S1, S2} uses chart A; {S1, S12} uses chart B; {S2, S12} uses chart B
    after exchanging the factors, recorded as the relabeling matrix.
    """
    i, j = qf.polygon.sides_at(vertex)
    pair = {qf.colors[i], qf.colors[j]}
    if pair == {Color.S1, Color.S2}:
        return chart_weights('A')
    if pair == {Color.S1, Color.S12}:
        return chart_weights('B')
    if pair == {Color.S2, Color.S12}:
        swap = np.array(SWAP_FACTORS)
        weights = tuple(_primitive_sign(tuple(int(_) for _ in swap @ w))
                        for w in chart_weights('B'))
        return WeightSet(weights, 'B', SWAP_FACTORS)
    raise u.ModelError("Unsupported chart at vertex %s, colors %s",
                       vertex, ', '.join(sorted(map(str, pair))))


def general_position_check(ws:t.Iterable[Vector], codim:int = 1) -> bool:
    """Every (n - codim)-subset of the n weights is linearly independent"""
    weights = [tuple(_) for _ in ws]
    k = len(weights) - codim
    if k <= 0:
        return True
    return all(sponge.integer_rank(list(subset)) == k
               for subset in itertools.combinations(weights, k))


# Polytope invariants ####################################################

def h_vector_from_f(f:t.Sequence[int]) -> HVector:
    """h_k = sum_i (-1)^(k-i) C(n-i, k-i) f_(i-1), for f = (f_-1, f_0, ..., f_(n-1))"""
    n = len(f) - 1
    return HVector(sum((-1)**(k - i) * math.comb(n - i, k - i) * f[i] for i in range(k + 1))
                   for k in range(n + 1))


def h_vector(p:Polygon) -> HVector:
    return h_vector_from_f(p.f_vector())


def betti_quoric(qf:QuoricFunctor) -> t.Dict[int, int]:
    """Betti numbers of the quoric 8-manifold, concentrated in degrees 0, 4, 8"""
    return {4*k: h for k, h in enumerate(h_vector(qf.polygon))}


# Quoric fibers ##########################################################

def quoric_fiber_type(qf:QuoricFunctor, x:FacePoint) -> FiberType:
    return {
        FaceKind.INTERIOR: FiberType.S3,
        FaceKind.SIDE:     FiberType.INTERVAL,
        FaceKind.VERTEX:   FiberType.POINT,
    }[x.kind]


def quoric_fiber_point(qf:QuoricFunctor, x:FacePoint, s1:t.Any, s2:t.Any
                       ) -> orbits.QuotientPoint:
    """Coordinates of the orbit of (x, s1, s2) in the model of its fiber

    Over a side, the side subgroup is collapsed first: S1 kills the first
    factor, S2 the second, and S12 leaves s1 s2^-1.
    """
    s1 = s1.array if isinstance(s1, alg.Quaternion) else np.asarray(s1, dtype=float)
    s2 = s2.array if isinstance(s2, alg.Quaternion) else np.asarray(s2, dtype=float)
    if x.kind is FaceKind.INTERIOR:
        return orbits.s3s3_t3_quotient(s1, s2, 'A')
    if x.kind is FaceKind.VERTEX:
        return orbits.QuotientPoint(np.zeros(0))
    color = qf.colors[x.index]
    if color is Color.S1:
        return orbits.s3_biaxial_quotient(s2)
    if color is Color.S2:
        return orbits.s3_biaxial_quotient(s1)
    return orbits.s3_biaxial_quotient(alg.qmul(s1, alg.qconj(s2)), (1, -1))


def subgroup_contains(color:t.Optional[Color], g1, g2, tol:float = u.EPS_IDENTITY) -> bool:
    """Membership of (g1, g2) in the subgroup of a color, or the trivial one for None"""
    one = np.array((1.0, 0, 0, 0))
    g1, g2 = np.asarray(g1, dtype=float), np.asarray(g2, dtype=float)
    if color is Color.S1:
        return bool(np.linalg.norm(g2 - one) <= tol)
    if color is Color.S2:
        return bool(np.linalg.norm(g1 - one) <= tol)
    if color is Color.S12:
        return bool(np.linalg.norm(g1 - g2) <= tol)
    return bool(np.linalg.norm(g1 - one) <= tol and np.linalg.norm(g2 - one) <= tol)


def quoric_t3_welldef(qf:QuoricFunctor, count:int = 1000, seed:int = 0,
                      tol:float = u.EPS_IDENTITY) -> t.Tuple[bool, t.Optional[tuple]]:
    """Check that conjugation by the torus preserves each side subgroup

    S1 and S2 are normal factors, so any (t_a, t_b) is tried; the diagonal
    S12 is conjugated by (t, t). The interior carries the trivial subgroup.
    """
    if not quoric_coloring_valid(qf):
        raise u.ModelError("Not a proper coloring: %s", qf)
    rng = np.random.default_rng(seed)
    colors = list(dict.fromkeys(qf.colors)) + [None]
    for _ in range(count):
        for color in colors:
            g = u.normalize(rng.standard_normal(4))
            one = np.array((1.0, 0, 0, 0))
            g1, g2 = {Color.S1: (g, one), Color.S2: (one, g), Color.S12: (g, g)}.get(
                color, (one, one))
            ta, tb = np.exp(1j * rng.uniform(0, u.TAU, 2))
            if color is Color.S12:
                tb = ta
            c1 = alg.unsplit(ta, 0)
            c2 = alg.unsplit(tb, 0)
            h1 = alg.qmul(alg.qconj(c1), alg.qmul(g1, c1))
            h2 = alg.qmul(alg.qconj(c2), alg.qmul(g2, c2))
            if not subgroup_contains(color, h1, h2, tol):
                log.warning("Conjugation leaves the %s subgroup: %s, %s", color, g1, g2)
                return False, (color, g1, g2, ta, tb)
    return True, None


# Text format ############################################################

def format_coloring(qf:QuoricFunctor) -> str:
    return f"{qf.polygon.m}; " + ' '.join(map(str, qf.colors))


def format_char_pair(cp:QTCharPair) -> str:
    return f"{cp.polygon.m}; " + ' '.join(f"{a},{b}" for a, b in cp.lambdas)


def parse_line(text:str) -> t.Union[QuoricFunctor, QTCharPair]:
    """Parse 'm; side_0 ... side_(m-1)', sides as S1|S2|S12 or as integer vectors a,b"""
    try:
        head, body = text.split(';', 1)
        m = int(head)
        sides = body.split()
    except ValueError:
        raise u.ModelError("Malformed line, expected 'm; side_0 ... side_(m-1)': %r", text)
    if len(sides) != m:
        raise u.ModelError("Expected %s sides, got %s: %r", m, len(sides), text)
    if all(',' in _ for _ in sides):
        try:
            return QTCharPair(Polygon(m), tuple(tuple(map(int, _.split(','))) for _ in sides))
        except ValueError:
            raise u.ModelError("Malformed side vectors: %r", text)
    return QuoricFunctor(Polygon(m), tuple(map(Color.from_string, sides)))
