# This file is part of Orbit Spaces, see <https://github.com/MestreLion/orbitspaces>
# Copyright (C) 2021 Rodrigo Silva (MestreLion) <linux@rodrigosilva.com>
# License: GPLv3 or later, at your choice. See <http://www.gnu.org/licenses/gpl>

"""
    Sampling, orbit distances and the invariance, separation and constraint suites

Every sample draws from its own counter-based stream, keyed by the seed and
addressed by (stream, index), so results do not depend on batching or on the
number of workers. Suites reduce by max/min only.

Points are flat float vectors of the domain space:
    'S<n>'       unit sphere in R^(n+1)
    'T<k>'       torus angles in [0, 2pi)^k
    'Y<l>,<k>'   l x k matrices of unit Frobenius norm, row-major
    'A x B'      products of the above, concatenated
"""

import concurrent.futures
import dataclasses
import json
import logging
import re
import time
import typing as t

import numpy as np
import scipy.spatial

from . import algebra as alg
from . import config
from . import matrices as mat
from . import model
from . import orbits
from . import util as u


log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

# Streams of the per-sample generators
POINTS, GROUP, PAIRS, PROBES = range(4)


# Sampling ###############################################################

@dataclasses.dataclass(frozen=True)
class SampleSpec:
    space: str
    count: int
    seed:  int = 42


def rng_for(seed:int, index:int, stream:int = POINTS) -> np.random.Generator:
    """Independent generator for one sample, a pure function of its arguments"""
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, stream, index]))


def parse_space(space:str) -> t.List[t.Tuple[str, t.Tuple[int, ...]]]:
    factors = []
    for factor in space.replace(' ', '').split('x'):
        match = re.fullmatch(r'([STY])(\d+)(?:,(\d+))?', factor)
        if not match or (match[1] == 'Y') != bool(match[3]):
            raise u.RegistryError("Unknown space id: %r", space)
        kind, a, b = match[1], int(match[2]), match[3]
        if kind == 'T' and not 1 <= a <= 4:
            raise u.RegistryError("Torus rank must be 1 to 4: %r", space)
        factors.append((kind, (a, int(b)) if b else (a,)))
    return factors


def _factor_size(kind:str, args:t.Tuple[int, ...]) -> int:
    return {'S': lambda a: a + 1, 'T': lambda a: a, 'Y': lambda l, k: l * k}[kind](*args)


def space_dimension(space:str) -> int:
    """Length of the flat vectors of a space"""
    return sum(_factor_size(kind, args) for kind, args in parse_space(space))


def sample_point(space:str, rng:np.random.Generator) -> np.ndarray:
    parts = []
    for kind, args in parse_space(space):
        if kind == 'T':
            parts.append(rng.uniform(0, u.TAU, args[0]))
        else:
            # spheres and Y_{l,k} alike: Gaussian, normalized
            parts.append(u.normalize(rng.standard_normal(_factor_size(kind, args))))
    return np.concatenate(parts)


def domain_distance(space:str, x:np.ndarray, y:np.ndarray, axis:int = -1) -> np.ndarray:
    """Chordal distance for sphere and matrix factors, flat metric on the angles"""
    if not any(kind == 'T' for kind, _ in parse_space(space)):
        return np.linalg.norm(x - y, axis=axis)
    mask = np.concatenate([np.full(_factor_size(kind, args), kind == 'T')
                           for kind, args in parse_space(space)])
    diff = np.where(mask, u.angle_distance(x, y), np.abs(x - y))
    return np.linalg.norm(diff, axis=axis)


def sample(spec:SampleSpec, stream:int = POINTS) -> np.ndarray:
    """Uniform samples of a space, one row per point"""
    parse_space(spec.space)
    if not spec.count:
        return np.zeros((0, space_dimension(spec.space)))
    return np.array([sample_point(spec.space, rng_for(spec.seed, i, stream))
                     for i in range(spec.count)])


# Groups and maps ########################################################

@dataclasses.dataclass(frozen=True)
class Group:
    """Group acting on a domain space

    Torus groups are T^angles x (discrete elements, index 0 the identity) and
    act vectorized over leading dimensions of the angles. Other groups bring
    their own sampler and a closed-form orbit distance method.
    """
    id:       str
    act:      t.Callable[[t.Any, np.ndarray], np.ndarray]
    angles:   int = 0
    discrete: int = 1
    sampler:  t.Optional[t.Callable[[np.random.Generator], t.Any]] = None
    method:   str = 'grid'

    def sample(self, rng:np.random.Generator) -> t.Any:
        if self.sampler:
            return self.sampler(rng)
        return rng.uniform(0, u.TAU, self.angles), int(rng.integers(self.discrete))

    def identity(self) -> t.Any:
        return np.zeros(self.angles), 0


@dataclasses.dataclass(frozen=True)
class MapEntry:
    id:          str
    domain:      str
    func:        t.Callable[[np.ndarray], orbits.QuotientPoint]
    groups:      t.Dict[str, Group]
    constraints: t.Dict[str, float]
    description: str = ""

    def __call__(self, x:np.ndarray) -> orbits.QuotientPoint:
        return self.func(x)

    def group(self, group_id:str) -> Group:
        if group_id == 'trivial':
            return TRIVIAL
        try:
            return self.groups[group_id]
        except KeyError:
            raise u.RegistryError("Group %r is not registered for map %r, try: %s",
                                  group_id, self.id, ', '.join(self.groups))


# Vectorized actions on quaternion factors: s -> t^L s t^R multiplies
# z by t^(L+R) and u by t^(R-L)
def bimultiply(theta:np.ndarray, x:np.ndarray,
               chart:t.Sequence[t.Tuple[t.Sequence[int], t.Sequence[int]]]) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    h = np.asarray(x, dtype=float).reshape(len(chart), 4)
    out = []
    for k, (left, right) in enumerate(chart):
        left, right = np.asarray(left), np.asarray(right)
        z, w = alg.split(h[k])
        out.append(alg.unsplit(np.exp(1j * theta @ (left + right)) * z,
                               np.exp(1j * theta @ (right - left)) * w))
    return np.concatenate(out, axis=-1)


def _trivial_act(g, x):
    theta, _ = g
    return np.broadcast_to(x, np.shape(theta)[:-1] + np.shape(x))


TRIVIAL = Group('trivial', _trivial_act)


def _quaternion_sampler(rng):
    return u.normalize(rng.standard_normal(4))


def _hp2_torus(g, x):
    theta, _ = g
    t_ = np.exp(1j * np.asarray(theta))
    h = alg.left_circle(t_, x.reshape(3, 4))
    return h.reshape(h.shape[:-2] + (12,))


def _hp2_right(q, x):
    return alg.qmul(x.reshape(3, 4), q).reshape(12)


def _hp2_both(g, x):
    theta, q = g
    return _hp2_right(q, _hp2_torus((theta, 0), x))


def _s6_torus(g, x):
    theta, _ = g
    theta = np.asarray(theta)
    angles = np.concatenate((theta, -theta.sum(axis=-1, keepdims=True)), axis=-1)
    z = (x[1::2] + 1j * x[2::2]) * np.exp(1j * angles)
    out = np.empty(z.shape[:-1] + (7,))
    out[..., 0] = x[0]
    out[..., 1::2], out[..., 2::2] = z.real, z.imag
    return out


def _s6_sigma(g, x):
    """Octonion automorphism sigma acting on unit imaginary octonions"""
    theta, _ = g
    s = alg.OctonionAutomorphism(*theta)
    p = alg.s6_to_imaginary(np.concatenate(([x[0]], x[1::2] + 1j * x[2::2])))
    image = alg.imaginary_to_s6(alg.sigma_matrix(s) @ p)
    out = np.empty(7)
    out[0] = image[0].real
    out[1::2], out[2::2] = image[1:].real, image[1:].imag
    return out


def _cp2_phase_conj(g, x):
    theta, d = g
    z = x[0::2] + 1j * x[1::2]
    if d:
        z = np.conj(z)
    z = np.exp(1j * np.asarray(theta)[..., :1]) * z
    out = np.empty(z.shape[:-1] + (6,))
    out[..., 0::2], out[..., 1::2] = z.real, z.imag
    return out


def _torus_negate(g, x):
    theta, d = g
    y = u.wrap_angle(-x) if d else x
    return np.broadcast_to(y, np.shape(theta)[:-1] + np.shape(x))


def _s4_conj(g, x):
    theta, d = g
    y = x * np.array((1, 1, -1, 1, -1)) if d else x
    return np.broadcast_to(y, np.shape(theta)[:-1] + np.shape(x))


def _chart_act(chart):
    return lambda g, x: bimultiply(g[0], x, chart)


def _left_matrix(n, special):
    def act(q, x):
        return (q @ x.reshape(n, -1)).reshape(-1)
    return Group(f"{'SO' if special else 'O'}{n}", act,
                 sampler=lambda rng: mat.random_orthogonal(n, rng, special),
                 method='procrustes-special' if special else 'procrustes')


def _rotation_group(shape):
    """SO(2) by its angle, acting on the left of 2 x k matrices"""
    def act(g, x):
        theta = np.asarray(g[0])[..., 0]
        c, s = np.cos(theta), np.sin(theta)
        rot = np.stack((np.stack((c, -s), -1), np.stack((s, c), -1)), -2)
        return (rot @ x.reshape(shape)).reshape(np.shape(theta) + (x.size,))
    return Group('SO2-angle', act, angles=1)


def _y_point(x, shape):
    return x.reshape(shape)


def _psd_point(p:mat.PSDMatrix, **extra) -> orbits.QuotientPoint:
    return orbits.QuotientPoint(p.coords(), {'trace': p.trace() - 1, **extra})


def _psd_sqrt_point(a:np.ndarray) -> orbits.QuotientPoint:
    p = mat.psd_sqrt_part(a)
    return orbits.QuotientPoint(p.coords(),
                                {'square': float(np.abs(p.entries @ p.entries - a.T @ a).max())})


def _doubled_point(a:np.ndarray) -> orbits.QuotientPoint:
    point = mat.quotient_Ynn_SOn(a)
    return orbits.QuotientPoint(point.coords(), {'height': point.residual})


def _hopf_ynn_point(a:np.ndarray) -> orbits.QuotientPoint:
    v = mat.hopf_coordinates(mat.quotient_Ynn_SOn(a))
    return orbits.QuotientPoint(v, {'sphere': np.linalg.norm(v) - 1})


def _hopf_point(x:np.ndarray) -> orbits.QuotientPoint:
    v = orbits.hopf(x)
    return orbits.QuotientPoint(v, {'sphere': np.linalg.norm(v) - 1})


def _build_registry() -> t.Dict[str, MapEntry]:
    def entry(map_id, domain, func, groups, constraints, description=""):
        return MapEntry(map_id, domain, func, {g.id: g for g in groups}, constraints,
                        description)

    left_circle = Group('U1-left', _chart_act((((1,), (0,)),)), angles=1)
    conj_circle = Group('U1-conj', _chart_act((((1,), (-1,)),)), angles=1)
    hp2_torus = Group('T3', _hp2_torus, angles=3)
    entries = [
        entry('hopf', 'S3', _hopf_point, [left_circle], {'sphere': 1e-12},
              "Hopf map S^3 -> S^2"),
        entry('hp2_to_s5', 'S11', lambda x: orbits.hp2_to_s5(orbits.HP2Point(x, False)),
              [hp2_torus,
               Group('Sp1-right', _hp2_right, sampler=_quaternion_sampler,
                     method='right-quaternion'),
               Group('T3xSp1', _hp2_both, method='right-quaternion',
                     sampler=lambda rng: (rng.uniform(0, u.TAU, 3), _quaternion_sampler(rng)))],
              {'height': 1e-9}, "HP^2 / T^3 -> S^5"),
        entry('s6_to_s4', 'S6', lambda x: orbits.s6_to_s4(orbits.S6Point.from_real(x)),
              [Group('T2', _s6_torus, angles=2),
               Group('sigma-T2', _s6_sigma, method='',
                     sampler=lambda rng: (rng.uniform(0, u.TAU, 2), 0))],
              {'radius': 1e-12}, "S^6 / T^2 -> S^4"),
        entry('cp2_conj_to_s4', 'S5', lambda x: orbits.cp2_conj_quotient(x[0::2] + 1j*x[1::2]),
              [Group('U1xconj', _cp2_phase_conj, angles=1, discrete=2)],
              {'rank': 1e-10}, "CP^2 / conj -> S^4"),
        entry('torus_invol', 'T2', lambda x: orbits.torus_invol_quotient(*(x / u.TAU)),
              [Group('Z2-negate', _torus_negate, discrete=2)],
              {'surface': 1e-12}, "T^2 / (a -> -a) -> S^2"),
        entry('s4_invol', 'S4',
              lambda x: orbits.s4_invol_quotient(x[0], complex(x[1], x[2]), complex(x[3], x[4])),
              [Group('Z2-conj', _s4_conj, discrete=2)],
              {'cone': 1e-12}, "S^4 / conj -> S^4"),
        entry('s3_conj_circle', 'S3', orbits.arnold_fiber, [conj_circle],
              {'sphere': 1e-12}, "S^3 / conjugation by T^1 -> D^2"),
        entry('s3_biaxial', 'S3', orbits.s3_biaxial_quotient,
              [Group(f"T2{'+' if a > 0 else '-'}{'+' if b > 0 else '-'}",
                     _chart_act((((a, 0), (0, b)),)), angles=2)
               for a in (1, -1) for b in (1, -1)],
              {'simplex': 1e-12}, "S^3 / T^2 -> interval"),
        *(entry(f's3s3_t3-{c}', 'S3xS3',
                lambda x, c=c: orbits.s3s3_t3_quotient(x[:4], x[4:], c),
                [Group(f'T3-{c}', _chart_act(model.CHARTS[c]), angles=3)],
                {'radius': 1e-12}, f"(S^3 x S^3) / T^3 -> S^3, chart {c}")
          for c in 'AB'),
        entry('s3s3_diag', 'S3xS3', lambda x: orbits.arnold_fiber(x[:4], x[4:]),
              [Group('U1-conj-diag', _chart_act((((1,), (-1,)), ((1,), (-1,)))), angles=1)],
              {'radius': 1e-12}, "(S^3 x S^3) / T^1 -> S^5"),
        entry('hopf_ynn-2', 'Y2,2', lambda x: _hopf_ynn_point(x.reshape(2, 2)),
              [_left_matrix(2, True), _rotation_group((2, 2))],
              {'sphere': 1e-12}, "Y(2,2) / SO(2) -> S^2 through the doubled disk"),
    ]
    for n in (2, 3, 4):
        shape = (n, n)
        entries += [
            entry(f'gram-{n}', f'Y{n},{n}', lambda x, s=shape: _psd_point(mat.gram(x.reshape(s))),
                  [_left_matrix(n, False)], {'trace': 1e-12}),
            entry(f'psd_sqrt-{n}', f'Y{n},{n}', lambda x, s=shape: _psd_sqrt_point(x.reshape(s)),
                  [_left_matrix(n, False)], {'square': 1e-10}),
            entry(f'ynn_son-{n}', f'Y{n},{n}', lambda x, s=shape: _doubled_point(x.reshape(s)),
                  [_left_matrix(n, True)] + ([_rotation_group(shape)] if n == 2 else []),
                  {'height': 1e-9}, f"Y({n},{n}) / SO({n}) -> S^{mat.dim_formulas(n)[1]}"),
        ]
    for n in (3, 4):
        shape = (n - 1, n)
        entries.append(
            entry(f'yn1n_on-{n}', f'Y{n-1},{n}',
                  lambda x, s=shape: _psd_point(mat.quotient_Yn1n_On(x.reshape(s)),
                                                rank=abs(mat.lambda_min(mat.gram(x.reshape(s))))),
                  [_left_matrix(n - 1, False)], {'rank': 1e-10},
                  f"Y({n-1},{n}) / O({n-1}) -> S^{mat.dim_formulas(n)[0]}"))
    return {e.id: e for e in entries}


_REGISTRY: t.Dict[str, MapEntry] = {}


def registry() -> t.Dict[str, MapEntry]:
    if not _REGISTRY:
        _REGISTRY.update(_build_registry())
    return _REGISTRY


def get_map(map_id:str) -> MapEntry:
    try:
        return registry()[map_id]
    except KeyError:
        raise u.RegistryError("Unknown map %r, try one of: %s",
                              map_id, ', '.join(sorted(registry())))


# Orbit distance #########################################################

def _grid_minimize(func:t.Callable[[np.ndarray], np.ndarray], angles:int,
                   steps:int, iterations:int) -> float:
    """Minimum of a function vectorized over rows of angles, by grid then local refinement"""
    axes = [np.arange(steps) * u.TAU / steps] * angles
    grid = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, angles)
    dist = func(grid)
    k = int(np.argmin(dist))
    center, value = grid[k], dist[k]
    step = u.TAU / steps
    offsets = np.stack(np.meshgrid(*[(-1, 0, 1)] * angles, indexing='ij'),
                       axis=-1).reshape(-1, angles)
    for _ in range(iterations):
        step /= 2
        candidates = center + step * offsets
        dist = func(candidates)
        k = int(np.argmin(dist))
        if dist[k] < value:
            center, value = candidates[k], dist[k]
    return float(value)


def _grid_distance(domain:str, group:Group, x:np.ndarray, y:np.ndarray,
                   steps:int, iterations:int) -> float:
    best = np.inf
    for d in range(group.discrete):
        if group.angles == 0:
            image = group.act((np.zeros(0), d), x)
            best = min(best, float(domain_distance(domain, image, y)))
            continue
        best = min(best, _grid_minimize(
            lambda grid: domain_distance(domain, group.act((grid, d), x), y),
            group.angles, steps, iterations))
    return best


def right_aligned_distance(x:np.ndarray, y:np.ndarray) -> np.ndarray:
    """min over unit q of |x q - y| in H^k, for x of shape (..., k, 4)

    The minimizer is q = w / |w| for w = sum_i conj(x_i) y_i.
    """
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    w = alg.qmul(alg.qconj(x), y).sum(axis=-2)
    norm = np.linalg.norm(w, axis=-1, keepdims=True)
    q = np.where(norm > 0, w / np.where(norm > 0, norm, 1), np.array((1.0, 0, 0, 0)))
    diff = alg.qmul(x, q[..., None, :]) - y
    return np.linalg.norm(diff.reshape(diff.shape[:-2] + (-1,)), axis=-1)


def _hp2_distance(group:Group, x:np.ndarray, y:np.ndarray,
                  steps:int, iterations:int) -> float:
    x, y = x.reshape(3, 4), y.reshape(3, 4)
    if group.id == 'Sp1-right':
        return float(right_aligned_distance(x, y))

    def func(grid):
        image = alg.left_circle(np.exp(1j * grid), x)
        return right_aligned_distance(image, y)

    return _grid_minimize(func, 3, steps, iterations)


def orbit_distance(map_id:str, group_id:str, x:np.ndarray, y:np.ndarray,
                   method:t.Optional[str] = None) -> float:
    """Estimated distance between the orbits of x and y in the domain of a map

    Torus groups use a grid over the angles refined by shrinking local grids;
    orthogonal groups acting on the left use the Procrustes minimizer; the
    HP^2 symmetry groups use the same torus grid with the best right unit
    quaternion at every point, measured in S^11.
    """
    entry = get_map(map_id)
    group = entry.group(group_id)
    method = method or group.method
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    steps, iterations = config.OPTIONS['grid_steps'], config.OPTIONS['refine_iters']
    if method == 'grid':
        return _grid_distance(entry.domain, group, x, y, steps, iterations)
    if method in ('procrustes', 'procrustes-special'):
        (_, shape), = parse_space(entry.domain)
        a, b = x.reshape(shape), y.reshape(shape)
        q = mat.kabsch(a, b) if method == 'procrustes-special' else mat.procrustes(a, b)
        return float(np.linalg.norm(q @ a - b))
    if method == 'right-quaternion':
        return _hp2_distance(group, x, y, steps, iterations)
    raise u.RegistryError("Group %r of map %r has no orbit distance method", group_id, map_id)


# Reports ################################################################

@dataclasses.dataclass
class TestReport:
    """Outcome of one suite. Separation suites pass on min_separation > tolerance"""
    __test__ = False  # not a pytest class

    suite:          str
    map:            str
    group:          t.Optional[str]
    samples:        int
    seed:           int
    tolerance:      float
    max_residual:   t.Optional[float]
    min_separation: t.Optional[float] = None
    passed:         bool = True
    millis:         int = 0
    gating:         bool = dataclasses.field(default=True, compare=False)
    worst:          t.Any = dataclasses.field(default=None, compare=False, repr=False)

    def to_dict(self, timings:bool = False) -> dict:
        return {
            'suite':          self.suite,
            'map':            self.map,
            'group':          self.group,
            'samples':        self.samples,
            'seed':           self.seed,
            'tolerance':      self.tolerance,
            'max_residual':   self.max_residual,
            'min_separation': self.min_separation,
            'pass':           self.passed,
            'millis':         self.millis if timings else None,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.max_residual is not None:
            value = f"max_residual={self.max_residual:.3e}"
        elif self.min_separation is not None:
            value = f"min_separation={self.min_separation:.3e}"
        else:
            value = "min_separation=none"
        return f"{status}\t{self.suite}\t{value}\ttol={self.tolerance:g}\tn={self.samples}"


def reports_json(reports:t.Iterable[TestReport], timings:bool = False) -> str:
    doc = {'schema': SCHEMA_VERSION, 'reports': [_.to_dict(timings) for _ in reports]}
    return json.dumps(doc, indent=2, sort_keys=True) + '\n'


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.millis = int(round(1000 * (time.perf_counter() - self.start)))


def _batched(n:int, func:t.Callable[[range], t.Any], workers:int) -> t.List[t.Any]:
    """Evaluate func over index batches, in order, optionally in threads"""
    size = config.OPTIONS['batch']
    batches = [range(i, min(i + size, n)) for i in range(0, n, size)]
    if workers <= 1 or len(batches) <= 1:
        return [func(b) for b in batches]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, batches))


def _reduce_max(results:t.List[t.Tuple[float, int]]) -> t.Tuple[float, t.Optional[int]]:
    # ties keep the lowest index, so the reduction is order independent
    return max(results, key=lambda r: (r[0], -r[1]), default=(0.0, None))


def property_suite(suite:str, check:t.Callable[[np.random.Generator, int], float],
                   n:int, tol:float, seed:int, label:str = "", group:str = None,
                   workers:t.Optional[int] = None) -> TestReport:
    """Max over n samples of a residual computed from a per-sample generator"""
    workers = workers or config.OPTIONS['workers']

    def run(batch):
        return _reduce_max([(float(check(rng_for(seed, i, POINTS), i)), i) for i in batch])

    with _Timer() as timer:
        worst, index = _reduce_max(_batched(n, run, workers))
    report = TestReport(suite, label or suite, group, n, seed, tol, worst,
                        passed=worst <= tol, millis=timer.millis, worst=index)
    _log_report(report)
    return report


def invariance_suite(map_id:str, group_id:str, n:int, tol:float, seed:int = 42,
                     workers:t.Optional[int] = None, suite:str = "") -> TestReport:
    """Max over n samples of |f(g x) - f(x)|"""
    entry = get_map(map_id)
    group = entry.group(group_id)

    def check(rng, i):
        x = sample_point(entry.domain, rng)
        g = group.sample(rng_for(seed, i, GROUP))
        return u.distance(entry(group.act(g, x)).coords, entry(x).coords)

    return property_suite(suite or f"{map_id}/invariance/{group_id}", check, n, tol, seed,
                          map_id, group_id, workers)


def constraint_suite(map_id:str, n:int, tol:t.Optional[float] = None, seed:int = 42,
                     workers:t.Optional[int] = None, suite:str = "") -> TestReport:
    """Max over n samples of the named residuals of the map's model equations"""
    entry = get_map(map_id)
    tol = max(entry.constraints.values()) if tol is None else tol

    def check(rng, _):
        point = entry(sample_point(entry.domain, rng))
        missing = set(entry.constraints) - set(point.residuals)
        if missing:
            raise u.RegistryError("Map %r did not report residuals %s", map_id, missing)
        return point.max_residual

    return property_suite(suite or f"{map_id}/constraint", check, n, tol, seed,
                          map_id, None, workers)


def separation_suite(map_id:str, group_id:str, n:int, gap:t.Optional[float] = None,
                     tol:t.Optional[float] = None, seed:int = 42,
                     workers:t.Optional[int] = None, suite:str = "") -> TestReport:
    """Over n pairs farther apart than gap in orbit distance, images stay apart

    Reports the minimum image distance, and the index of the pair achieving it.
    """
    entry = get_map(map_id)
    entry.group(group_id)
    gap = config.OPTIONS['gap'] if gap is None else gap
    tol = config.OPTIONS['floor'] if tol is None else tol
    workers = workers or config.OPTIONS['workers']

    def run(batch):
        found = []
        for i in batch:
            x = sample_point(entry.domain, rng_for(seed, 2*i, PAIRS))
            y = sample_point(entry.domain, rng_for(seed, 2*i + 1, PAIRS))
            if orbit_distance(map_id, group_id, x, y) <= gap:
                continue
            found.append((-u.distance(entry(x).coords, entry(y).coords), i))
        return _reduce_max(found)

    with _Timer() as timer:
        worst, index = _reduce_max([_ for _ in _batched(n, run, workers) if _[1] is not None])
    separation = -worst if index is not None else None
    report = TestReport(suite or f"{map_id}/separation/{group_id}", map_id, group_id, n, seed,
                        tol, None, separation,
                        passed=separation is None or separation > tol,
                        millis=timer.millis, worst=index)
    if separation is None:
        log.info("No pair of %s beyond the gap %g, passing vacuously", map_id, gap)
    _log_report(report)
    return report


def coverage_report(map_id:str, n:int, seed:int = 42) -> dict:
    """Nearest-neighbor spacing of image samples, advisory only"""
    entry = get_map(map_id)
    report = {'map': map_id, 'samples': n, 'seed': seed}
    if n < 2:
        return report

    def images(count, stream):
        return np.array([entry(sample_point(entry.domain, rng_for(seed, i, stream))).coords
                         for i in range(count)])

    cloud = images(n, POINTS)
    tree = scipy.spatial.cKDTree(cloud)
    spacing = tree.query(cloud, k=2)[0][:, 1]
    holes = tree.query(images(max(n // 10, 1), PROBES))[0]
    half = cloud[:n // 2]
    half_spacing = (scipy.spatial.cKDTree(half).query(half, k=2)[0][:, 1]
                    if len(half) >= 2 else spacing)
    report.update(
        median_spacing=float(np.median(spacing)),
        max_spacing=float(spacing.max()),
        hole_radius=float(holes.max()),
        half_median_spacing=float(np.median(half_spacing)),
    )
    report['monotone'] = report['median_spacing'] <= report['half_median_spacing']
    log.info("Coverage of %s: median spacing %.3g (%.3g at half the samples), hole radius %.3g",
             map_id, report['median_spacing'], report['half_median_spacing'],
             report['hole_radius'])
    if not report['monotone']:
        log.warning("Median spacing of %s did not shrink when doubling samples", map_id)
    return report


def exact_report(suite:str, passed:bool, samples:int = 1, label:str = "") -> TestReport:
    """Report for an exact check: residual 0 on success, 1 on failure"""
    report = TestReport(suite, label or suite, None, samples, 0, 0.0,
                        0.0 if passed else 1.0, passed=passed)
    _log_report(report)
    return report


def _log_report(report:TestReport):
    log.info(report.line())
    if not report.passed:
        log.warning("Suite %s failed, worst sample %s", report.suite, report.worst)
