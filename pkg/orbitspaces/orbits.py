# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

"""
    Explicit orbit maps of torus and circle actions

Each map sends a point to ambient coordinates of a concrete model of the orbit
space, together with named residuals of the equations cutting that model out.
Quaternions use the complex split h = z + j u, see algebra.split().
"""

import dataclasses
import enum
import logging
import typing as t

import numpy as np
import scipy.optimize

from . import algebra as alg
from . import matrices as mat
from . import util as u


log = logging.getLogger(__name__)

STRATUM_TOL = 1e-8


# Points #################################################################

@dataclasses.dataclass(frozen=True)
class QuotientPoint:
    """Ambient coordinates of an orbit image, with named constraint residuals"""
    coords:    np.ndarray
    residuals: t.Dict[str, float] = dataclasses.field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max((abs(_) for _ in self.residuals.values()), default=0.0)

    def satisfies(self, tol:float) -> bool:
        return self.max_residual <= tol

    def __repr__(self):
        return u.fullrepr(self, ('coords', 'residuals'))


class HP2Point:
    """Point [h0:h1:h2] of the quaternionic projective plane, sum |h_i|^2 = 1

    Defined up to right multiplication by a unit quaternion.
    """
    __slots__ = ('h',)

    def __init__(self, h:t.Any, normalize:bool = True):
        h = np.array(h, dtype=float).reshape(3, 4)
        if normalize:
            h = u.normalize(h)
        if abs(np.linalg.norm(h) - 1) > u.EPS_IDENTITY:
            raise u.AlgebraError("Homogeneous coordinates are not normalized: %r", h)
        h.flags.writeable = False
        object.__setattr__(self, 'h', h)

    def __setattr__(self, name, value):
        raise AttributeError(f"{self.__class__.__name__} is immutable")

    @classmethod
    def from_quaternions(cls, *h:alg.Quaternion) -> 'HP2Point':
        return cls([_.array for _ in h])

    @classmethod
    def from_complex(cls, *zu:t.Tuple[complex, complex]) -> 'HP2Point':
        """From three (z, u) pairs, h_i = z_i + j u_i"""
        return cls(alg.unsplit(*np.array(zu, dtype=complex).T))

    def quaternions(self) -> t.List[alg.Quaternion]:
        return [alg.Quaternion.from_array(_) for _ in self.h]

    def torus_act(self, t:t.Any) -> 'HP2Point':
        """Left action of T^3 given as three complex units"""
        return HP2Point(alg.left_circle(np.asarray(t), self.h), normalize=False)

    def right_act(self, q:t.Any) -> 'HP2Point':
        """Right multiplication by a unit quaternion, the gauge of the coordinates"""
        q = q.array if isinstance(q, alg.Quaternion) else np.asarray(q)
        return HP2Point(alg.qmul(self.h, q), normalize=False)

    def __repr__(self):
        return u.clsrepr(self, np.array2string(self.h, precision=4))


class S6Point:
    """(r, z1, z2, z3) with r^2 + sum |z_i|^2 = 1"""
    __slots__ = ('r', 'z')

    def __init__(self, r:float, z:t.Sequence[complex], normalize:bool = False):
        z = np.array(z, dtype=complex).reshape(3)
        norm = np.sqrt(r*r + np.vdot(z, z).real)
        if normalize:
            r, z = r / norm, z / norm
        elif abs(norm - 1) > u.EPS_IDENTITY:
            raise u.AlgebraError("Point is not on the unit 6-sphere, norm %r", norm)
        z.flags.writeable = False
        object.__setattr__(self, 'r', float(r))
        object.__setattr__(self, 'z', z)

    def __setattr__(self, name, value):
        raise AttributeError(f"{self.__class__.__name__} is immutable")

    @classmethod
    def from_real(cls, v:t.Sequence[float], normalize:bool = False) -> 'S6Point':
        """From 7 reals (r, x1, y1, x2, y2, x3, y3)"""
        v = np.asarray(v, dtype=float)
        return cls(v[0], v[1::2] + 1j*v[2::2], normalize=normalize)

    @classmethod
    def from_octonion(cls, x:alg.Octonion) -> 'S6Point':
        if not x.is_imaginary():
            raise u.AlgebraError("Not an imaginary octonion: %r", x)
        p = alg.imaginary_to_s6(x.coeffs)
        return cls(p[0].real, p[1:])

    def to_octonion(self) -> alg.Octonion:
        return alg.Octonion(alg.s6_to_imaginary(np.concatenate(([self.r], self.z))))

    def torus_act(self, t:t.Any) -> 'S6Point':
        """Standard T^3 action (r, t1 z1, t2 z2, t3 z3)"""
        return S6Point(self.r, np.asarray(t) * self.z)

    def __repr__(self):
        return u.fullrepr(self, self.__slots__)


@dataclasses.dataclass(frozen=True)
class JoinCoordinates:
    """S^11 as the join S^3 * S^3 * S^3, pushed down by the Hopf map on each factor"""
    weights: np.ndarray  # c_i >= 0, sum c_i^2 = 1
    factors: np.ndarray  # three unit vectors of R^3, as rows

    def matrix(self) -> np.ndarray:
        """A = [c0 v0 | c1 v1 | c2 v2], a point of Y_{3,3}"""
        return (self.weights[:, None] * self.factors).T


class StratumKind(enum.Enum):
    VERTEX = 'v'
    SPHERE = 'S'
    QUATERNIONIC = 'M'
    COMPLEX = 'N'
    FREE = 'free'


@dataclasses.dataclass(frozen=True)
class Stratum:
    """Orbit type stratum of the T^3 action on HP^2

    Pattern has one symbol per homogeneous coordinate: '0' zero,
    '+' complex (u = 0), '-' j-complex (z = 0), '*' other.
    """
    kind:      StratumKind
    pattern:   str
    ambiguous: bool  = False
    distance:  float = 0.0

    @property
    def label(self) -> str:
        nonzero = [i for i, s in enumerate(self.pattern) if s != '0']
        if self.kind is StratumKind.VERTEX:
            return f"v{nonzero[0]}"
        if self.kind is StratumKind.SPHERE:
            return 'S' + ''.join(f"{i}{self.pattern[i]}" for i in nonzero)
        if self.kind is StratumKind.QUATERNIONIC:
            return 'M' + ''.join(map(str, nonzero))
        if self.kind is StratumKind.COMPLEX:
            return 'N' + self.pattern
        return 'free'

    def __str__(self):
        return self.label


@dataclasses.dataclass(frozen=True)
class Stabilizer:
    """T^3 stabilizer: identity component spanned by integer circle generators,
    plus the finite subgroup always present

    (-1, -1, -1) acts trivially on HP^2, since -1 commutes with everything.
    """
    stratum:    Stratum
    generators: t.Tuple[t.Tuple[int, int, int], ...]
    finite:     t.Tuple[t.Tuple[int, int, int], ...] = ((-1, -1, -1),)

    @property
    def dimension(self) -> int:
        if not self.generators:
            return 0
        return int(np.linalg.matrix_rank(np.array(self.generators)))

    def describe(self) -> str:
        if not self.generators:
            return "trivial mod <(-1,-1,-1)>"
        if self.dimension > 1:
            return f"T^{self.dimension}"
        g = self.generators[0]
        if sum(map(abs, g)) == 1:
            return "circle {" + '='.join(f"t{i}" for i, e in enumerate(g) if not e) + "=1}"
        return "circle {" + '='.join(f"t{i}" + ('^-1' if e < 0 else '')
                                     for i, e in enumerate(g)) + "}"

    def contains(self, angles:t.Sequence[float], tol:float = 1e-6) -> bool:
        """Whether a torus element, given by angles, lies in this subgroup"""
        gens = np.array(self.generators, dtype=float).reshape(-1, 3)
        for f in ((1, 1, 1),) + self.finite:
            target = np.asarray(angles, dtype=float) - np.where(np.array(f) < 0, np.pi, 0.0)
            if not len(gens):
                if np.all(u.angle_distance(target, 0) <= tol):
                    return True
                continue
            # Real parameters by least squares, for each lift of the target mod 2pi
            for k in np.ndindex(3, 3, 3):
                x, *_ = np.linalg.lstsq(gens.T, target + u.TAU * (np.array(k) - 1), rcond=None)
                if np.all(u.angle_distance(gens.T @ x, target) <= tol):
                    return True
        return False


# Hopf and join ##########################################################

def hopf(h:t.Any) -> np.ndarray:
    """Hopf map S^3 -> S^2, (|z|^2 - |u|^2, Re 2zu, Im 2zu), invariant under t(z, u) = (tz, t*u)

    Accepts a Quaternion or quaternion arrays of shape (..., 4).
    """
    z, w = alg.split(h.array if isinstance(h, alg.Quaternion) else h)
    zu = 2 * z * w
    return np.stack((abs(z)**2 - abs(w)**2, zu.real, zu.imag), axis=-1)


def join_coordinates(p:HP2Point) -> JoinCoordinates:
    c = np.linalg.norm(p.h, axis=1)
    v = np.tile((1.0, 0.0, 0.0), (3, 1))  # arbitrary where the weight vanishes
    nonzero = c > 0
    v[nonzero] = hopf(p.h[nonzero] / c[nonzero, None])
    return JoinCoordinates(c, v)


def hp2_to_s5(p:HP2Point) -> QuotientPoint:
    """HP^2 / T^3 -> S^5, through (S^2 * S^2 * S^2) / SO(3) = Y_{3,3} / SO(3)"""
    point = mat.quotient_Ynn_SOn(join_coordinates(p).matrix())
    return QuotientPoint(point.coords(), {'height': point.residual})


def hp2_fixed_point(i:int) -> HP2Point:
    h = np.zeros((3, 4))
    h[i, 0] = 1
    return HP2Point(h)


# Sphere and projective plane quotients ##################################

def s6_to_s4(p:S6Point) -> QuotientPoint:
    """S^6 / T^2 -> S^4 for T^2 = {t1 t2 t3 = 1}, doubling the rugby ball over its boundary"""
    m = np.abs(p.z)
    w = np.prod(p.z)
    return QuotientPoint(np.array((p.r, *m, w.real, w.imag)),
                         {'radius': abs(w) - np.prod(m)})


def cp2_conj_to_s4(z:t.Sequence[complex]) -> mat.PSDMatrix:
    """CP^2 / conj -> boundary of Spec_3, via B = [x^T; y^T] in Y_{2,3} and its Gram matrix"""
    z = np.asarray(z, dtype=complex)
    norm = np.linalg.norm(z)
    if abs(norm - 1) > u.EPS_IDENTITY:
        raise u.AlgebraError("Expected a unit vector of C^3, norm %r", norm)
    z = z / norm  # gram() needs trace 1 to rounding
    return mat.quotient_Yn1n_On(np.stack((z.real, z.imag)))


def cp2_conj_quotient(z:t.Sequence[complex]) -> QuotientPoint:
    g = cp2_conj_to_s4(z)
    return QuotientPoint(g.coords(), {'rank': abs(g.lambda_min), 'trace': g.trace() - 1})


def torus_invol_quotient(x:float, y:float) -> QuotientPoint:
    """T^2 / (a -> -a) -> S^2, the surface w^2 = (1 - u^2)(1 - v^2)"""
    a, b = u.TAU * x, u.TAU * y
    cu, cv, w = np.cos(a), np.cos(b), np.sin(a) * np.sin(b)
    return QuotientPoint(np.array((cu, cv, w)),
                         {'surface': w*w - (1 - cu*cu) * (1 - cv*cv)})


def s4_invol_quotient(r:float, z1:complex, z2:complex) -> QuotientPoint:
    """S^4 / (r, z1, z2) -> (r, z1*, z2*), squaring the imaginary plane"""
    y1, y2 = z1.imag, z2.imag
    block = np.array((y1*y1 - y2*y2, 2*y1*y2))
    return QuotientPoint(np.array((r, z1.real, z2.real, *block)),
                         {'cone': np.linalg.norm(block) - (y1*y1 + y2*y2)})


# Fiber lemmas for circle and torus actions on S^3 and S^3 x S^3 ########

def s3_conj_circle_quotient(h:t.Any) -> QuotientPoint:
    """S^3 / conjugation by complex units -> closed upper hemisphere of S^2, a disk"""
    a, b, c, d = np.asarray(h.array if isinstance(h, alg.Quaternion) else h, dtype=float)
    coords = np.array((a, b, np.hypot(c, d)))
    return QuotientPoint(coords, {'sphere': np.linalg.norm(coords) - 1})


def s3_biaxial_quotient(s:t.Any, chart:t.Tuple[int, int] = (1, 1)) -> QuotientPoint:
    """S^3 / T^2 acting by t1^(+-1) s t2^(+-1) -> segment c1 + c2 = 1, c_i = |z_i|^2

    Every sign chart gives the same invariants.
    """
    if not set(chart) <= {1, -1} or len(chart) != 2:
        raise u.AlgebraError("Sign chart must be a pair of +1/-1, got %r", chart)
    z, w = alg.split(s.array if isinstance(s, alg.Quaternion) else s)
    c = np.array((abs(z)**2, abs(w)**2))
    return QuotientPoint(c, {'simplex': c.sum() - 1})


def s3s3_invariant(s1:t.Any, s2:t.Any, chart:str = 'A') -> complex:
    """Invariant phase monomial p of the T^3 action on S^3 x S^3

    chart A, (t1 s1 t3, t2 s2 t3): p = z1 u1 conj(z2 u2)
    chart B, (t1 s1 t2^-1, t2 s2 t3): p = z1 u1 z2 conj(u2)
    """
    z1, u1 = alg.split(s1)
    z2, u2 = alg.split(s2)
    if chart == 'A':
        return z1 * u1 * np.conj(z2 * u2)
    if chart == 'B':
        return z1 * u1 * z2 * np.conj(u2)
    raise u.ModelError("Unsupported chart %r, try 'A' or 'B'", chart)


def s3s3_t3_quotient(s1:t.Any, s2:t.Any, chart:str = 'A') -> QuotientPoint:
    """(S^3 x S^3) / T^3 -> S^3 in R^4, (c1, c2, Re p, Im p) with |p|^2 = c1(1-c1)c2(1-c2)"""
    s1 = s1.array if isinstance(s1, alg.Quaternion) else np.asarray(s1, dtype=float)
    s2 = s2.array if isinstance(s2, alg.Quaternion) else np.asarray(s2, dtype=float)
    p = s3s3_invariant(s1, s2, chart)
    c1 = abs(alg.split(s1)[0])**2
    c2 = abs(alg.split(s2)[0])**2
    radius = np.sqrt(max(c1 * (1 - c1) * c2 * (1 - c2), 0.0))
    return QuotientPoint(np.array((c1, c2, p.real, p.imag)), {'radius': abs(p) - radius})


def s3s3_diag_circle_quotient(s1:t.Any, s2:t.Any) -> QuotientPoint:
    """(S^3 x S^3) / simultaneous conjugation by complex units -> S^5 model in R^6

    With h = a + b i + c j + d k, w = (c1 + i d1) conj(c2 + i d2).
    """
    a1, b1, c1, d1 = np.asarray(s1.array if isinstance(s1, alg.Quaternion) else s1, dtype=float)
    a2, b2, c2, d2 = np.asarray(s2.array if isinstance(s2, alg.Quaternion) else s2, dtype=float)
    w = complex(c1, d1) * complex(c2, -d2)
    return QuotientPoint(np.array((a1, b1, a2, b2, w.real, w.imag)),
                         {'radius': abs(w) - np.hypot(c1, d1) * np.hypot(c2, d2)})


def arnold_fiber(s1:t.Any, s2:t.Any = None) -> QuotientPoint:
    """Conjugation circle quotient of a point of S^3, or of S^3 x S^3 acting diagonally"""
    if s2 is None:
        return s3_conj_circle_quotient(s1)
    return s3s3_diag_circle_quotient(s1, s2)


# Strata and stabilizers of HP^2 ########################################

def gauge_fix(p:HP2Point, tol:float = STRATUM_TOL) -> np.ndarray:
    """Right-multiply so the first non-vanishing coordinate is real positive"""
    c = np.linalg.norm(p.h, axis=1)
    first = int(np.argmax(c > tol))
    q = alg.qconj(p.h[first]) / c[first]
    return alg.qmul(p.h, q)


def stratify_hp2(p:HP2Point, tol:float = STRATUM_TOL) -> Stratum:
    """Orbit type stratum of p, from the zero pattern of (z_i, u_i) after gauge fixing

    A modulus within tol of zero, but not exactly zero, classifies to the nearest
    stratum and flags the result ambiguous, with the distance to that stratum.
    """
    h = gauge_fix(p, tol)
    z, w = alg.split(h)
    c = np.linalg.norm(h, axis=1)
    pattern = []
    dropped = []
    for ci, zi, wi in zip(c, abs(z), abs(w)):
        if ci <= tol:
            pattern.append('0')
            dropped.append(ci)
        elif wi <= tol:
            pattern.append('+')
            dropped.append(wi)
        elif zi <= tol:
            pattern.append('-')
            dropped.append(zi)
        else:
            pattern.append('*')
    pattern = ''.join(pattern)
    distance = float(np.linalg.norm(dropped)) if dropped else 0.0

    zeros = pattern.count('0')
    if zeros >= 2:
        kind = StratumKind.VERTEX
    elif zeros == 1:
        kind = StratumKind.QUATERNIONIC if '*' in pattern else StratumKind.SPHERE
    elif '*' in pattern:
        kind = StratumKind.FREE
    else:
        kind = StratumKind.COMPLEX

    ambiguous = distance > u.EPS_RAW
    if ambiguous:
        log.debug("Ambiguous stratum %s at distance %g", pattern, distance)
    return Stratum(kind, pattern, ambiguous, distance)


def hp2_stabilizer_check(p:HP2Point, tol:float = STRATUM_TOL) -> Stabilizer:
    """T^3 stabilizer of p, as predicted by its stratum"""
    stratum = stratify_hp2(p, tol)
    pattern = stratum.pattern
    signs = tuple(0 if s == '0' else (-1 if s == '-' else 1) for s in pattern)
    axes = tuple(tuple(int(i == k) for i in range(3)) for k in range(3))

    if stratum.kind is StratumKind.VERTEX:
        gens = axes
    elif stratum.kind is StratumKind.SPHERE:
        gens = (axes[pattern.index('0')], signs)
    elif stratum.kind is StratumKind.QUATERNIONIC:
        gens = (axes[pattern.index('0')],)
    elif stratum.kind is StratumKind.COMPLEX:
        gens = (signs,)
    else:
        gens = ()
    return Stabilizer(stratum, gens)


def hp2_projector(h:t.Any) -> np.ndarray:
    """Quaternionic projector h h^*, 36 reals, a gauge-free embedding of HP^2

    Accepts (..., 3, 4) coordinate arrays.
    """
    h = np.asarray(h.h if isinstance(h, HP2Point) else h, dtype=float)
    proj = alg.qmul(h[..., :, None, :], alg.qconj(h[..., None, :, :]))
    return proj.reshape(h.shape[:-2] + (36,))


def torus_fixers(p:HP2Point, steps:int = 16, tol:float = 1e-9,
                 seed_tol:float = 0.05) -> np.ndarray:
    """Torus elements (as angle triples) found fixing p, by grid search plus refinement

    Grid points closer than seed_tol to a fixer are refined by Nelder-Mead,
    and kept when the residual of the action drops below tol. Angles are
    reported in [0, 2pi), rounded so duplicates collapse.
    """
    base = hp2_projector(p)

    def residual(angles):
        t = np.exp(1j * np.asarray(angles))
        return np.linalg.norm(hp2_projector(alg.left_circle(t, p.h)) - base,
                              axis=-1)

    grid = np.stack(np.meshgrid(*3*[np.arange(steps) * u.TAU / steps], indexing='ij'),
                    axis=-1).reshape(-1, 3)
    res = residual(grid)
    found = []
    for start in grid[res < seed_tol]:
        opt = scipy.optimize.minimize(lambda a: residual(a)**2, start, method='Nelder-Mead',
                                      options=dict(xatol=1e-12, fatol=1e-24, maxiter=4000))
        angles = u.wrap_angle(opt.x)
        if residual(angles) < tol:
            found.append(angles)
    if not found:
        return np.zeros((0, 3))
    found = np.round(np.array(found), 6) % np.round(u.TAU, 6)
    return np.unique(found, axis=0)
