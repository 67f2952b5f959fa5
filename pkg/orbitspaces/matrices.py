# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

"""
    Normalized matrix spaces, Gram and polar quotients, and the PSD cone

Y_{l,k} is the sphere of l x k real matrices of unit Frobenius norm.
Orthogonal matrices act on it from the left, and the quotients are modelled
inside the cone of positive semi-definite n x n matrices:

- Y_{n-1,n} / O(n-1) via the Gram matrix A^T A, landing on the boundary
  of the spectrahedron (trace 1 slice of the cone);
- Y_{n,n} / SO(n) via the polar part P = sqrt(A^T A), doubled along the
  boundary of the spectrahedron by the signed height t = sign(det A) lambda_min.
"""

import logging
import typing as t

import numpy as np
import scipy.linalg
import scipy.stats

from . import util as u


log = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-13
PSD_TOL      = 1e-10
NORM_TOL     = 1e-12

MatrixLike = t.Union['NormalizedMatrix', 'PSDMatrix', np.ndarray, t.Sequence]


def entries(m:MatrixLike) -> np.ndarray:
    """Plain float array of a matrix-like value"""
    if isinstance(m, (NormalizedMatrix, PSDMatrix)):
        return m.entries
    return np.asarray(m, dtype=float)


class NormalizedMatrix:
    """Point of Y_{l,k}: an l x k real matrix of unit Frobenius norm"""
    __slots__ = ('entries',)

    def __init__(self, entries:t.Any, normalize:bool = False):
        a = np.array(entries, dtype=float, ndmin=2)
        if normalize:
            a = u.normalize(a)
        if abs(np.linalg.norm(a) - 1) > NORM_TOL:
            raise u.AlgebraError("Matrix is not normalized, Frobenius norm %r",
                                 np.linalg.norm(a))
        a.flags.writeable = False
        object.__setattr__(self, 'entries', a)

    def __setattr__(self, name, value):
        raise AttributeError(f"{self.__class__.__name__} is immutable")

    @property
    def shape(self) -> t.Tuple[int, int]:
        return self.entries.shape

    def __repr__(self):
        return u.clsrepr(self, np.array2string(self.entries, precision=4))


class PSDMatrix:
    """Positive semi-definite symmetric matrix, with a sorted eigenvalue cache"""
    __slots__ = ('entries', 'eigenvalues', 'trace_normalized')

    def __init__(self, entries:t.Any, trace_normalized:bool = False, check:bool = True):
        p = np.array(entries, dtype=float, ndmin=2)
        if check:
            asym = np.abs(p - p.T).max() if p.size else 0
            if asym > SYMMETRY_TOL:
                raise u.AlgebraError("Matrix is not symmetric, residual %r", asym)
        p = (p + p.T) / 2
        eig = np.linalg.eigvalsh(p)
        if check:
            if eig[0] < -PSD_TOL:
                raise u.AlgebraError("Matrix is not positive semi-definite,"
                                     " smallest eigenvalue %r", eig[0])
            if trace_normalized and abs(np.trace(p) - 1) > NORM_TOL:
                raise u.AlgebraError("Matrix trace is not 1: %r", np.trace(p))
        p.flags.writeable = eig.flags.writeable = False
        for name, value in zip(self.__slots__, (p, eig, trace_normalized)):
            object.__setattr__(self, name, value)

    def __setattr__(self, name, value):
        raise AttributeError(f"{self.__class__.__name__} is immutable")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def rank(self) -> int:
        return int(np.sum(self.eigenvalues > PSD_TOL))

    def trace(self) -> float:
        return float(np.trace(self.entries))

    def coords(self) -> np.ndarray:
        """Upper triangle, row by row: the n(n+1)/2 ambient coordinates"""
        return self.entries[np.triu_indices(self.n)]

    def __repr__(self):
        return u.clsrepr(self, np.array2string(self.entries, precision=4))


class SpectrahedronPoint:
    """Trace 1 PSD matrix, a point of the spectrahedron Spec_n"""
    __slots__ = ('matrix',)

    def __init__(self, matrix:PSDMatrix):
        if not spectrahedron_contains(matrix.entries):
            raise u.AlgebraError("Matrix is not in the spectrahedron: %r", matrix)
        object.__setattr__(self, 'matrix', matrix)

    def __setattr__(self, name, value):
        raise AttributeError(f"{self.__class__.__name__} is immutable")

    @property
    def ambient_dimension(self) -> int:
        return dim_formulas(self.matrix.n)[2]

    def on_boundary(self, tol:float = PSD_TOL) -> bool:
        return self.matrix.lambda_min <= tol


class DoubledSpherePoint:
    """Point (P, t) of the double of the spectrahedron, |t| = lambda_min(P)

    The two copies t >= 0 and t <= 0 of Spec_n are glued along its boundary,
    where lambda_min vanishes, making a sphere of dimension n(n+1)/2 - 1.
    """
    __slots__ = ('matrix', 'height')

    def __init__(self, matrix:PSDMatrix, height:float):
        object.__setattr__(self, 'matrix', matrix)
        object.__setattr__(self, 'height', float(height))

    def __setattr__(self, name, value):
        raise AttributeError(f"{self.__class__.__name__} is immutable")

    @property
    def residual(self) -> float:
        """|t| - lambda_min(P), zero on the model sphere"""
        return abs(self.height) - self.matrix.lambda_min

    def coords(self) -> np.ndarray:
        return np.append(self.matrix.coords(), self.height)

    def __repr__(self):
        return u.fullrepr(self, self.__slots__)


# Helpers ################################################################

def random_normalized(shape:t.Tuple[int, int], rng:np.random.Generator) -> NormalizedMatrix:
    return NormalizedMatrix(rng.standard_normal(shape), normalize=True)


def random_orthogonal(n:int, rng:np.random.Generator, special:bool = False) -> np.ndarray:
    """Haar-random element of O(n), or of SO(n) if special"""
    if n == 1:
        return np.ones((1, 1)) if special else rng.choice((-1.0, 1.0), size=(1, 1))
    group = scipy.stats.special_ortho_group if special else scipy.stats.ortho_group
    return group.rvs(n, random_state=rng)


def kabsch(a:MatrixLike, b:MatrixLike) -> np.ndarray:
    """Rotation R in SO(n) minimizing |R a - b|, from the SVD of b a^T"""
    a, b = entries(a), entries(b)
    v, _, wt = np.linalg.svd(b @ a.T)
    d = np.ones(len(v))
    d[-1] = np.sign(np.linalg.det(v @ wt)) or 1
    return (v * d) @ wt


def procrustes(a:MatrixLike, b:MatrixLike) -> np.ndarray:
    """Orthogonal Q in O(n) minimizing |Q a - b|"""
    a, b = entries(a), entries(b)
    r, _ = scipy.linalg.orthogonal_procrustes(a.T, b.T)
    return r.T


# Operations #############################################################

def gram(a:MatrixLike) -> PSDMatrix:
    """Gram matrix A^T A, complete invariant of the columns up to left O(l)"""
    a = entries(a)
    return PSDMatrix(a.T @ a, trace_normalized=True)


def polar(a:MatrixLike) -> t.Tuple[np.ndarray, PSDMatrix]:
    """Polar decomposition A = Q P, with Q orthogonal and P = sqrt(A^T A)

    For singular A, Q is the one built from the SVD factors.
    """
    q, p = scipy.linalg.polar(entries(a), side='right')
    return q, PSDMatrix(p)


def psd_sqrt_part(a:MatrixLike) -> PSDMatrix:
    """Symmetric PSD square root of A^T A"""
    a = entries(a)
    w, v = np.linalg.eigh(a.T @ a)
    return PSDMatrix((v * np.sqrt(np.clip(w, 0, None))) @ v.T)


def lambda_min(p:MatrixLike) -> float:
    """Smallest eigenvalue of a symmetric matrix"""
    if isinstance(p, PSDMatrix):
        return p.lambda_min
    p = entries(p)
    return float(np.linalg.eigvalsh((p + p.T) / 2)[0])


def quotient_Yn1n_On(a:MatrixLike) -> PSDMatrix:
    """Y_{n-1,n} / O(n-1): the trace 1 Gram matrix, degenerate by construction"""
    a = entries(a)
    l, n = a.shape
    if l != n - 1:
        raise u.AlgebraError("Expected a (n-1) x n matrix, got shape %s", a.shape)
    return gram(a)


def quotient_Ynn_SOn(a:MatrixLike) -> DoubledSpherePoint:
    """Y_{n,n} / SO(n): trace-normalized polar part plus signed height

    Singular matrices, in both half-spaces of det, land at height 0.
    """
    a = entries(a)
    if a.shape[0] != a.shape[1]:
        raise u.AlgebraError("Expected a square matrix, got shape %s", a.shape)
    p = psd_sqrt_part(a).entries
    p = PSDMatrix(p / np.trace(p), trace_normalized=True)
    return DoubledSpherePoint(p, u.sign(np.linalg.det(a)) * p.lambda_min)


def spectrahedron_contains(p:MatrixLike, tol:float = PSD_TOL) -> bool:
    p = entries(p)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        return False
    if np.abs(p - p.T).max() > max(tol, SYMMETRY_TOL):
        return False
    return bool(abs(np.trace(p) - 1) <= max(tol, NORM_TOL) and lambda_min(p) >= -tol)


def dim_formulas(n:int) -> t.Tuple[int, int, int]:
    """(dim of the boundary sphere Y_{n-1,n}/O(n-1), dim of Y_{n,n}/SO(n), dim Spec_n)"""
    if n < 2:
        raise u.AlgebraError("Dimension formulas need n >= 2, got %s", n)
    return (n*n + n - 4) // 2, (n*n + n - 2) // 2, n * (n + 1) // 2 - 1


def hopf_coordinates(point:DoubledSpherePoint) -> np.ndarray:
    """Unit vector (G11 - G22, 2 G12, 2 det A) recovered from a point of Y_{2,2}/SO(2)

    The Gram matrix G = P^2 is rescaled to trace 1, and det A = sign(t) det P.
    """
    p = point.matrix.entries
    if p.shape != (2, 2):
        raise u.AlgebraError("Hopf coordinates are defined for n = 2, got %s", p.shape)
    p = p / np.linalg.norm(p)
    g = p @ p
    det = u.sign(point.height) * np.linalg.det(p)
    return np.array((g[0, 0] - g[1, 1], 2 * g[0, 1], 2 * det))
