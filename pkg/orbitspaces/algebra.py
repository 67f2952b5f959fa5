# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

"""
    Quaternions, octonions, torus elements and the torus of octonion automorphisms

Values are immutable wrappers around numpy arrays. The array-level functions
(qmul, omul, ...) work on any leading shape, so sample batches can be processed
at once, and keep integer dtypes intact for exact checks on basis elements.

Octonion basis order is 1, l, i, il, j, jl, k, kl, and the product is the
Cayley-Dickson doubling of the quaternions with l as the doubling unit:
    (a + b l)(c + d l) = (a c - d* b) + (d a + b c*) l
"""

import logging
import typing as t

import numpy as np

from . import util as u


log = logging.getLogger(__name__)

# Positions of the quaternion halves p, q of an octonion x = p + q l
_P = [0, 2, 4, 6]
_Q = [1, 3, 5, 7]

OCTONION_BASIS = ('1', 'l', 'i', 'il', 'j', 'jl', 'k', 'kl')


# Array-level arithmetic #################################################

def qconj(q):
    q = np.asarray(q)
    return q * np.array([1, -1, -1, -1], dtype=q.dtype)


def qmul(p, q):
    """Hamilton product of quaternion arrays of shape (..., 4)"""
    p, q = np.asarray(p), np.asarray(q)
    a1, b1, c1, d1 = np.moveaxis(p, -1, 0)
    a2, b2, c2, d2 = np.moveaxis(q, -1, 0)
    return np.stack((
        a1*a2 - b1*b2 - c1*c2 - d1*d2,
        a1*b2 + b1*a2 + c1*d2 - d1*c2,
        a1*c2 - b1*d2 + c1*a2 + d1*b2,
        a1*d2 + b1*c2 - c1*b2 + d1*a2,
    ), axis=-1)


def oconj(x):
    x = np.asarray(x)
    return x * np.array([1] + 7*[-1], dtype=x.dtype)


def omul(x, y):
    """Octonion product of arrays of shape (..., 8), by Cayley-Dickson doubling"""
    x, y = np.asarray(x), np.asarray(y)
    a, b = x[..., _P], x[..., _Q]
    c, d = y[..., _P], y[..., _Q]
    p = qmul(a, c) - qmul(qconj(d), b)
    q = qmul(d, a) + qmul(b, qconj(c))
    out = np.empty(np.broadcast_shapes(x.shape, y.shape), dtype=p.dtype)
    out[..., _P] = p
    out[..., _Q] = q
    return out


def split(h):
    """Complex split h = z + j u of quaternion arrays, returning (z, u)"""
    h = np.asarray(h, dtype=float)
    return h[..., 0] + 1j*h[..., 1], h[..., 2] - 1j*h[..., 3]


def unsplit(z, u):
    """Inverse of split(): quaternion array from complex components"""
    z, u = np.broadcast_arrays(np.asarray(z, dtype=complex), np.asarray(u, dtype=complex))
    return np.stack((z.real, z.imag, u.real, -u.imag), axis=-1)


def left_circle(t, h):
    """Left multiplication by complex units t: (z, u) -> (t z, t* u)"""
    z, u = split(h)
    t = np.asarray(t, dtype=complex)
    return unsplit(t * z, np.conj(t) * u)


# Value types ############################################################

class Quaternion:
    """Quaternion a + b i + c j + d k"""
    __slots__ = ('_q',)

    def __init__(self, a=0.0, b=0.0, c=0.0, d=0.0):
        q = np.array((a, b, c, d))
        q.flags.writeable = False
        object.__setattr__(self, '_q', q)

    def __setattr__(self, name, value):
        raise AttributeError(f"{self.__class__.__name__} is immutable")

    @classmethod
    def from_array(cls, q) -> 'Quaternion':
        return cls(*np.asarray(q).reshape(4))

    @classmethod
    def from_complex(cls, z:complex, u:complex = 0) -> 'Quaternion':
        """Quaternion h = z + j u"""
        return cls.from_array(unsplit(z, u))

    @property
    def array(self) -> np.ndarray:
        return self._q

    a = property(lambda self: self._q[0])
    b = property(lambda self: self._q[1])
    c = property(lambda self: self._q[2])
    d = property(lambda self: self._q[3])

    def norm2(self) -> float:
        return float(self._q @ self._q)

    def norm(self) -> float:
        return float(np.linalg.norm(self._q))

    def conj(self) -> 'Quaternion':
        return self.from_array(qconj(self._q))

    def inverse(self) -> 'Quaternion':
        n2 = self.norm2()
        if n2 == 0:
            raise u.AlgebraError("Zero quaternion has no inverse")
        return self.from_array(qconj(self._q) / n2)

    def is_unit(self, tol:float = u.EPS_IDENTITY) -> bool:
        return abs(self.norm2() - 1) <= tol

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return quat_mul(self, other)
        return self.from_array(self._q * other)

    __rmul__ = lambda self, other: self.from_array(self._q * other)

    def __add__(self, other:'Quaternion') -> 'Quaternion':
        return self.from_array(self._q + other._q)

    def __sub__(self, other:'Quaternion') -> 'Quaternion':
        return self.from_array(self._q - other._q)

    def __neg__(self):
        return self.from_array(-self._q)

    def __eq__(self, other):
        return isinstance(other, Quaternion) and np.array_equal(self._q, other._q)

    def __hash__(self):
        return hash(tuple(self._q))

    def isclose(self, other:'Quaternion', tol:float = u.EPS_IDENTITY) -> bool:
        return bool(np.linalg.norm(self._q - other._q) <= tol)

    # Complex split h = z + j u. Keep below every default that reads the util
    # module, as the u property shadows it in the class body
    @property
    def z(self) -> complex:
        return complex(self.a, self.b)

    @property
    def u(self) -> complex:
        return complex(self.c, -self.d)

    def __repr__(self):
        return u.fullrepr(self, ('a', 'b', 'c', 'd'))


class Octonion:
    """Octonion with coefficients in basis order 1, l, i, il, j, jl, k, kl"""
    __slots__ = ('_x',)

    def __init__(self, coeffs:t.Sequence[float]):
        x = np.array(coeffs)
        if x.shape != (8,):
            raise u.AlgebraError("Octonion needs 8 coefficients, got shape %s", x.shape)
        x.flags.writeable = False
        object.__setattr__(self, '_x', x)

    def __setattr__(self, name, value):
        raise AttributeError(f"{self.__class__.__name__} is immutable")

    @classmethod
    def basis(cls, k:t.Union[int, str]) -> 'Octonion':
        """Basis element by index or by name ('1', 'l', 'i', 'il', ...), integer coefficients"""
        if isinstance(k, str):
            try:
                k = OCTONION_BASIS.index(k)
            except ValueError:
                raise u.AlgebraError("Not an octonion basis name: %r, try one of %s",
                                     k, ', '.join(OCTONION_BASIS))
        x = np.zeros(8, dtype=int)
        x[k] = 1
        return cls(x)

    @classmethod
    def from_quaternion(cls, q:Quaternion) -> 'Octonion':
        x = np.zeros(8, dtype=q.array.dtype)
        x[_P] = q.array
        return cls(x)

    @property
    def coeffs(self) -> np.ndarray:
        return self._x

    def norm(self) -> float:
        return float(np.linalg.norm(self._x))

    def conj(self) -> 'Octonion':
        return Octonion(oconj(self._x))

    def is_imaginary(self, tol:float = u.EPS_IDENTITY) -> bool:
        return abs(self._x[0]) <= tol

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return oct_mul(self, other)
        return Octonion(self._x * other)

    __rmul__ = lambda self, other: Octonion(self._x * other)

    def __add__(self, other:'Octonion') -> 'Octonion':
        return Octonion(self._x + other._x)

    def __sub__(self, other:'Octonion') -> 'Octonion':
        return Octonion(self._x - other._x)

    def __neg__(self):
        return Octonion(-self._x)

    def __eq__(self, other):
        return isinstance(other, Octonion) and np.array_equal(self._x, other._x)

    def __hash__(self):
        return hash(tuple(self._x))

    def __repr__(self):
        return u.clsrepr(self, ', '.join(f"{_:g}" for _ in self._x))


class TorusElement:
    """Element (t_1, ..., t_k) of the torus T^k, stored as angles in [0, 2pi)"""
    __slots__ = ('_angles',)

    def __init__(self, angles:t.Iterable[float]):
        a = u.wrap_angle(np.atleast_1d(np.array(angles, dtype=float)))
        if a.ndim != 1 or not 1 <= len(a) <= 4:
            raise u.AlgebraError("Torus elements have 1 to 4 angles, got %s", a.shape)
        a.flags.writeable = False
        object.__setattr__(self, '_angles', a)

    def __setattr__(self, name, value):
        raise AttributeError(f"{self.__class__.__name__} is immutable")

    @classmethod
    def identity(cls, k:int) -> 'TorusElement':
        return cls(np.zeros(k))

    @property
    def angles(self) -> np.ndarray:
        return self._angles

    @property
    def rank(self) -> int:
        return len(self._angles)

    def units(self) -> np.ndarray:
        """Component unit complex numbers e^{i angle}"""
        return np.exp(1j * self._angles)

    def __mul__(self, other:'TorusElement') -> 'TorusElement':
        return TorusElement(self._angles + other._angles)

    def inverse(self) -> 'TorusElement':
        return TorusElement(-self._angles)

    def isclose(self, other:'TorusElement', tol:float = u.EPS_IDENTITY) -> bool:
        return (self.rank == other.rank
                and bool(np.all(u.angle_distance(self._angles, other._angles) <= tol)))

    def __eq__(self, other):
        return isinstance(other, TorusElement) and self.isclose(other)

    def __hash__(self):
        return hash(self.rank)

    def __repr__(self):
        return u.clsrepr(self, ', '.join(f"{_:.6g}" for _ in self._angles))


class OctonionAutomorphism:
    """The automorphism sigma of the octonions for angles alpha + beta + gamma = 0 mod 2pi

    Fixes 1 and l, rotates the planes (i, il), (j, jl), (k, kl) by the angles
    alpha, beta, gamma respectively: sigma(i) = e^{alpha l} i.
    """
    __slots__ = ('alpha', 'beta', 'gamma')

    def __init__(self, alpha:float, beta:float, gamma:t.Optional[float] = None):
        if gamma is None:
            gamma = -alpha - beta
        if u.angle_distance(alpha + beta + gamma, 0) > u.EPS_IDENTITY:
            raise u.AlgebraError(
                "Not an automorphism of the family, angles must sum to 0 mod 2pi:"
                " %r + %r + %r", alpha, beta, gamma)
        for name, value in zip(self.__slots__, (alpha, beta, gamma)):
            object.__setattr__(self, name, float(u.wrap_angle(value)))

    def __setattr__(self, name, value):
        raise AttributeError(f"{self.__class__.__name__} is immutable")

    @property
    def angles(self) -> np.ndarray:
        return np.array((self.alpha, self.beta, self.gamma))

    def compose(self, other:'OctonionAutomorphism') -> 'OctonionAutomorphism':
        """self o other, which is again in the family with angles added"""
        return OctonionAutomorphism(*(self.angles + other.angles))

    __matmul__ = compose

    def matrix(self) -> np.ndarray:
        return sigma_matrix(self)

    def __call__(self, x:Octonion) -> Octonion:
        return sigma_apply(self, x)

    def __repr__(self):
        return u.fullrepr(self, self.__slots__)


# Operations #############################################################

def quat_mul(p:Quaternion, q:Quaternion) -> Quaternion:
    """Hamilton product"""
    return Quaternion.from_array(qmul(p.array, q.array))


def oct_mul(x:Octonion, y:Octonion) -> Octonion:
    """Octonion product, restricting to quat_mul on span(1, i, j, k)"""
    return Octonion(omul(x.coeffs, y.coeffs))


def sigma_matrix(s:OctonionAutomorphism) -> np.ndarray:
    """8x8 matrix of sigma in the octonion basis, block diagonal with 2x2 rotations"""
    m = np.zeros((8, 8))
    m[0, 0] = m[1, 1] = 1
    for k, angle in enumerate(s.angles):
        c, r = np.cos(angle), np.sin(angle)
        i = 2 + 2 * k
        m[i:i+2, i:i+2] = ((c, r), (-r, c))
    return m


def sigma_apply(s:OctonionAutomorphism, x:Octonion) -> Octonion:
    return Octonion(sigma_matrix(s) @ x.coeffs)


def left_circle_on_quat(t:t.Union[TorusElement, complex], h:Quaternion) -> Quaternion:
    """Left action of the complex circle t(z, u) = (t z, t^-1 u)"""
    if isinstance(t, TorusElement):
        if t.rank != 1:
            raise u.AlgebraError("Circle action needs a rank 1 torus element, got %s", t)
        t = t.units()[0]
    return Quaternion.from_array(left_circle(t, h.array))


def multiplication_table() -> np.ndarray:
    """Exact structure constants: table[p, q] = (sign, index) with e_p e_q = sign * e_index"""
    basis = np.eye(8, dtype=int)
    products = omul(basis[:, None, :], basis[None, :, :])
    index = np.abs(products).argmax(axis=-1)
    signs = np.take_along_axis(products, index[..., None], axis=-1)[..., 0]
    return np.stack((signs, index), axis=-1)


def imaginary_to_s6(x) -> np.ndarray:
    """Imaginary octonion (batch) to S^6 coordinates (r, z1, z2, z3) as a complex array

    r = x_l is returned as the real first entry, z_m pairs the (e, e l) coefficients.
    Sigma then acts as z_m -> e^{-i angle_m} z_m.
    """
    x = np.asarray(x, dtype=float)
    return np.stack((x[..., 1] + 0j,
                     x[..., 2] + 1j*x[..., 3],
                     x[..., 4] + 1j*x[..., 5],
                     x[..., 6] + 1j*x[..., 7]), axis=-1)


def s6_to_imaginary(p) -> np.ndarray:
    """Inverse of imaginary_to_s6()"""
    p = np.asarray(p, dtype=complex)
    out = np.zeros(p.shape[:-1] + (8,))
    out[..., 1] = p[..., 0].real
    out[..., 2::2] = p[..., 1:].real
    out[..., 3::2] = p[..., 1:].imag
    return out
