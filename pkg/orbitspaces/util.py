# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

"""
    Globals, exceptions and assorted numeric utilities
"""

import logging
import typing as t

import numpy as np


log = logging.getLogger(__name__)

# Tolerance hierarchy
EPS_RAW      = 1e-15  # raw arithmetic
EPS_IDENTITY = 1e-12  # algebraic identities

TAU = 2 * np.pi


class OrbitSpacesError(Exception):
    """Base class for custom exceptions, with errno and %-formatting for args.

    All modules in this package raise this (or a subclass) for all
    explicitly raised, business-logic, expected or handled exceptions
    """
    def __init__(self, msg: t.Any = "", *args, errno: int = 1):
        super().__init__(str(msg) % args)
        self.errno = errno


class AlgebraError(OrbitSpacesError):
    """Invalid algebraic input, such as angles not summing to zero"""


class ComplexError(OrbitSpacesError):
    """Invalid chain complex: non-zero boundary composite, malformed file, bad sub-complex"""


class ModelError(OrbitSpacesError):
    """Invalid characteristic data, coloring or unsupported vertex chart"""


class RegistryError(OrbitSpacesError):
    """Unknown space, map or group id"""


class UsageError(OrbitSpacesError):
    def __init__(self, msg: t.Any = "", *args):
        super().__init__(msg, *args, errno=2)


class SuiteFailure(OrbitSpacesError):
    """One or more gating suites did not pass"""
    def __init__(self, msg: t.Any = "", *args):
        super().__init__(msg, *args, errno=1)


def clsrepr(obj:object, sig:str) -> str:
    return f"<{obj.__class__.__name__}({sig})>"


def fullrepr(obj:object, attrs:t.Iterable[str]) -> str:
    return clsrepr(obj, ', '.join(f"{__}={getattr(obj, __)!r}" for __ in attrs))


def wrap_angle(angle):
    """Reduce angle(s) in radians to [0, 2pi)"""
    return np.mod(angle, TAU)


def angle_distance(a, b):
    """Distance between angles on the circle, in [0, pi]"""
    d = np.mod(np.asarray(a) - np.asarray(b), TAU)
    return np.minimum(d, TAU - d)


def normalize(v, axis=None):
    """Return v scaled to unit (Frobenius) norm. Zero input is returned as is"""
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v, axis=axis, keepdims=axis is not None)
    return np.divide(v, norm, out=np.zeros_like(v), where=norm != 0)


def sign(x) -> int:
    """Sign with sign(0) == +1"""
    return -1 if x < 0 else 1


def distance(x, y) -> float:
    """Euclidean distance between two flattened arrays"""
    return float(np.linalg.norm(np.ravel(x) - np.ravel(y)))
