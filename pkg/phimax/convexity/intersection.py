# -*- coding: utf-8 -*-
# @package phimax.convexity
# @cond LICENSE
# #############################################################################
# # LGPL License                                                              #
# #                                                                           #
# # This file is part of the phimax abstract convexity toolkit.               #
# # Copyright (c) 2026, the phimax developers                                 #
# # This program is free software: you can redistribute it and/or modify      #
# # it under the terms of the GNU Lesser General Public License as            #
# # published by the Free Software Foundation, either version 3 of the        #
# # License, or (at your option) any later version.                           #
# #                                                                           #
# # This program is distributed in the hope that it will be useful,           #
# # but WITHOUT ANY WARRANTY; without even the implied warranty of            #
# # MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the             #
# # GNU Lesser General Public License for more details.                       #
# #                                                                           #
# # You should have received a copy of the GNU Lesser General Public License  #
# # along with this program. If not, see http://www.gnu.org/licenses/         #
# #############################################################################
# @endcond
'''
Intersection property deciders: are the strict sublevel sets ``[phi1 < alpha]`` and
``[phi2 < alpha]`` of two quadratic minorants disjoint?

The strict sublevel set of ``-a|x|^2 + <l, x> + c`` is one of: empty, the whole space, the
space minus a point, an open halfspace or the exterior of a closed ball. On the full space
the decision follows from a case table over these shapes. On a ball the decision is made by
a certified branch and bound over the span of the two slopes.
'''

from __future__ import annotations
import abc
import dataclasses
import itertools
import logging
import math
import typing

import numpy

from phimax.common.errors import ConsistencyError, InputError, UnsupportedError
from phimax.common.helper import Verdict
from phimax.convexity.core import GridSpec, QuadMinorant, SampledFunction, Vector, eval_minorant

_LOG = logging.getLogger(__name__)

DEFAULT_MARGIN = 1e-6
DEFAULT_MAX_DEPTH = 40
DEFAULT_MAX_CELLS = 200000

# normals u1, u2 with |u1 + u2| below this are treated as exactly opposite
_ANTIPARALLEL_TOLERANCE = 1e-12
# slabs thinner than this (relative) are rounding artefacts
_ROUNDING = 1e-12


@dataclasses.dataclass(frozen=True, eq=False)
class IPDecision:
    '''
    Verdict on the intersection property with its evidence.

    ``witness`` is the common strict point for ``Fails`` and None otherwise. ``margin`` is
    the witness slack for ``Fails``, the certified distance from overlap for ``Holds`` and the
    best slack found for ``Undecided``.
    '''

    verdict: Verdict
    witness: typing.Optional[Vector]
    certificate: str
    margin: float

    def __post_init__(self):
        if (self.verdict is Verdict.FAILS) != (self.witness is not None):
            raise ConsistencyError(f'{self.verdict} decision with witness {self.witness}')


class SublevelGeom(abc.ABC):
    '''Shape of a strict sublevel set.'''

    @abc.abstractmethod
    def contains(self, points: numpy.ndarray) -> numpy.ndarray:
        '''
        :param points: (count, n) array
        :return: boolean mask of points inside the set
        '''

    @property
    def is_empty(self) -> bool:
        '''
        :return: True for the empty set
        '''
        return False

    @property
    def exclusion(self) -> typing.Optional[typing.Tuple[Vector, float]]:
        '''
        :return: (center, radius) of a closed ball containing the complement, if the set is
            co-bounded
        '''
        return None


@dataclasses.dataclass(frozen=True)
class Empty(SublevelGeom):
    '''The empty set.'''

    def contains(self, points):
        return numpy.zeros(numpy.atleast_2d(points).shape[0], dtype=bool)

    @property
    def is_empty(self):
        return True


@dataclasses.dataclass(frozen=True)
class All(SublevelGeom):
    '''The whole space.'''
    dimension: int

    def contains(self, points):
        return numpy.ones(numpy.atleast_2d(points).shape[0], dtype=bool)

    @property
    def exclusion(self):
        return numpy.zeros(self.dimension), 0.0


@dataclasses.dataclass(frozen=True, eq=False)
class PuncturedSpace(SublevelGeom):
    '''The whole space without one point.'''
    center: Vector

    def contains(self, points):
        return numpy.any(numpy.atleast_2d(points) != self.center, axis=1)

    @property
    def exclusion(self):
        return self.center, 0.0


@dataclasses.dataclass(frozen=True, eq=False)
class OpenHalfspace(SublevelGeom):
    '''``{x : <normal, x> < bound}``'''
    normal: Vector
    bound: float

    def contains(self, points):
        return numpy.atleast_2d(points) @ self.normal < self.bound

    @property
    def unit(self) -> typing.Tuple[Vector, float]:
        '''
        :return: the same halfspace with unit normal
        '''
        l_norm = float(numpy.linalg.norm(self.normal))
        return self.normal / l_norm, self.bound / l_norm


@dataclasses.dataclass(frozen=True, eq=False)
class BallExterior(SublevelGeom):
    '''``{x : |x - center| > radius}``'''
    center: Vector
    radius: float

    def contains(self, points):
        return numpy.linalg.norm(numpy.atleast_2d(points) - self.center, axis=1) > self.radius

    @property
    def exclusion(self):
        return self.center, self.radius


def classify_strict_sublevel(phi: QuadMinorant, alpha: float) -> SublevelGeom:
    '''
    Classify ``[phi < alpha]``.
    '''
    if phi.is_affine:
        if phi.is_constant:
            return All(phi.dimension) if phi.c < alpha else Empty()
        return OpenHalfspace(phi.slope, alpha - phi.c)
    # phi(x) = -a|x - m|^2 + peak with m = l / 2a
    l_center = phi.slope / (2.0 * phi.a)
    l_peak = phi.c + float(phi.slope @ phi.slope) / (4.0 * phi.a)
    if l_peak < alpha:
        return All(phi.dimension)
    if l_peak == alpha:
        return PuncturedSpace(l_center)
    return BallExterior(l_center, math.sqrt((l_peak - alpha) / phi.a))


def _check_pair(phi1: QuadMinorant, phi2: QuadMinorant, alpha: float):
    if phi1.dimension != phi2.dimension:
        raise InputError(f'minorant dimensions differ: {phi1.dimension} vs {phi2.dimension}')
    if not math.isfinite(alpha):
        raise InputError(f'level must be finite, got {alpha}')


def _slack(phi1: QuadMinorant, phi2: QuadMinorant, alpha: float, x) -> float:
    return min(alpha - eval_minorant(phi1, x), alpha - eval_minorant(phi2, x))


def _verified_fails(phi1: QuadMinorant, phi2: QuadMinorant, alpha: float, certificate: str,
                    candidates: typing.Sequence[Vector],
                    directions: typing.Sequence[Vector] = ()) -> IPDecision:
    '''
    Return a Fails decision for the first candidate that lies strictly inside both sets.
    If none does, rays along the given and then along seeded random directions are scanned.
    '''
    for i_candidate in candidates:
        l_candidate = numpy.asarray(i_candidate, dtype=numpy.float64)
        if numpy.all(numpy.isfinite(l_candidate)):
            l_slack = _slack(phi1, phi2, alpha, l_candidate)
            if l_slack > 0:
                return IPDecision(Verdict.FAILS, l_candidate, certificate, l_slack)

    l_random = numpy.random.default_rng(0).standard_normal((256, phi1.dimension))
    l_random /= numpy.linalg.norm(l_random, axis=1, keepdims=True)
    l_scales = 2.0 ** numpy.arange(-4, 41)
    for i_direction in itertools.chain(directions, l_random):
        l_points = l_scales[:, numpy.newaxis] * numpy.asarray(i_direction)[numpy.newaxis, :]
        l_slack = numpy.minimum(alpha - eval_minorant(phi1, l_points), alpha - eval_minorant(phi2, l_points))
        l_hits = numpy.flatnonzero(l_slack > 0)
        if l_hits.size:
            _LOG.debug('witness for %s found by ray search', certificate)
            return IPDecision(Verdict.FAILS, l_points[l_hits[0]].copy(), certificate, float(l_slack[l_hits[0]]))
    raise ConsistencyError(f'no witness verified for a {certificate} overlap of {phi1} and {phi2} at {alpha!r}')


def ip_decide_fullspace(phi1: QuadMinorant, phi2: QuadMinorant, alpha: float) -> IPDecision:
    '''
    Decide the intersection property of two minorants on the whole space.

    :param phi1: first minorant
    :param phi2: second minorant
    :param alpha: level
    :return: Holds (empty set or opposite halfspaces) or Fails with a verified witness
    '''
    _check_pair(phi1, phi2, alpha)
    l_geom1 = classify_strict_sublevel(phi1, alpha)
    l_geom2 = classify_strict_sublevel(phi2, alpha)

    if l_geom1.is_empty or l_geom2.is_empty:
        l_margin = max(i_phi.c - alpha for i_phi, i_geom in ((phi1, l_geom1), (phi2, l_geom2)) if i_geom.is_empty)
        return IPDecision(Verdict.HOLDS, None, 'empty-sublevel', l_margin)

    if isinstance(l_geom1, OpenHalfspace) and isinstance(l_geom2, OpenHalfspace):
        l_u1, l_b1 = l_geom1.unit
        l_u2, l_b2 = l_geom2.unit
        l_direction = l_u1 + l_u2
        if float(numpy.linalg.norm(l_direction)) <= _ANTIPARALLEL_TOLERANCE:
            # {u.x < b1} and {u.x > -b2} meet iff -b2 < b1
            l_overlap = l_b1 + l_b2
            if l_overlap <= _ROUNDING * (1.0 + abs(l_b1) + abs(l_b2)):
                return IPDecision(Verdict.HOLDS, None, 'antiparallel-halfspaces', -l_overlap)
            l_candidates = [l_u1 * (-l_b2 + l_overlap * i_k / 8.0) for i_k in (4, 2, 6, 1, 7)]
            return _verified_fails(phi1, phi2, alpha, 'antiparallel-overlap', l_candidates)
        l_cos = float(l_u1 @ l_u2)
        if l_cos >= 1.0 - 1e-12:
            l_candidates = [l_u1 * (min(l_b1, l_b2) - 1.0)]
        else:
            l_coeff = numpy.linalg.solve(numpy.array([[1.0, l_cos], [l_cos, 1.0]]),
                                         numpy.array([l_b1 - 1.0, l_b2 - 1.0]))
            l_candidates = [l_coeff[0] * l_u1 + l_coeff[1] * l_u2]
        return _verified_fails(phi1, phi2, alpha, 'halfspace-pair', l_candidates,
                               [-l_direction / numpy.linalg.norm(l_direction)])

    # at least one set is co-bounded: go far enough along a direction the other set contains
    l_reach = 1.0
    l_direction = numpy.zeros(phi1.dimension)
    l_direction[0] = 1.0
    for i_geom in (l_geom1, l_geom2):
        if isinstance(i_geom, OpenHalfspace):
            l_unit, l_bound = i_geom.unit
            l_direction = -l_unit
            l_reach += abs(l_bound)
        else:
            l_center, l_radius = i_geom.exclusion
            l_reach += float(numpy.linalg.norm(l_center)) + l_radius
    return _verified_fails(phi1, phi2, alpha, 'co-bounded-ray', [l_reach * l_direction, 2.0 * l_reach * l_direction],
                           [l_direction])


class _BallSearch(object):
    '''
    Branch and bound for ``max_x min(alpha - phi1(x), alpha - phi2(x), gamma^2 - |x|^2)`` over
    the ball. Points are written ``x = Q z + sqrt(s) w`` with Q an orthonormal basis of the
    slope span and w a unit vector orthogonal to it, so every term depends on ``(z, s)`` only.
    '''

    def __init__(self, phi1: QuadMinorant, phi2: QuadMinorant, alpha: float, gamma: float, margin: float):
        self._phi = (phi1, phi2)
        self._alpha = alpha
        self._gamma = gamma
        self._margin = margin
        l_slopes = numpy.vstack([phi1.slope, phi2.slope])
        _, l_singular, l_vt = numpy.linalg.svd(l_slopes, full_matrices=True)
        l_rank = int(numpy.sum(l_singular > 1e-12 * max(1.0, float(l_singular.max(initial=0.0)))))
        self._rank = l_rank
        self._basis = l_vt[:l_rank].T
        self._orthogonal = l_vt[l_rank] if l_rank < phi1.dimension else None
        self._a = numpy.array([phi1.a, phi2.a])
        self._c = numpy.array([phi1.c, phi2.c])
        self._p = l_slopes @ self._basis
        self._dimension = l_rank + (0 if self._orthogonal is None else 1)

    def objective(self, cells: numpy.ndarray) -> numpy.ndarray:
        '''
        :param cells: (count, d) reduced coordinates
        :return: objective at every cell center
        '''
        l_z = cells[:, :self._rank]
        l_radius2 = numpy.einsum('ij,ij->i', l_z, l_z)
        if self._orthogonal is not None:
            l_radius2 = l_radius2 + cells[:, self._rank]
        l_terms = self._alpha - self._c[numpy.newaxis, :] + self._a[numpy.newaxis, :] * l_radius2[:, numpy.newaxis] \
            - l_z @ self._p.T
        return numpy.minimum(l_terms.min(axis=1), self._gamma ** 2 - l_radius2)

    def lift(self, cell: numpy.ndarray) -> Vector:
        '''
        :return: point in the original coordinates
        '''
        l_x = self._basis @ cell[:self._rank]
        if self._orthogonal is not None:
            l_x = l_x + math.sqrt(max(float(cell[self._rank]), 0.0)) * self._orthogonal
        return l_x

    def slack(self, x: Vector) -> float:
        '''
        :return: objective evaluated in the original coordinates
        '''
        return min(_slack(self._phi[0], self._phi[1], self._alpha, x), self._gamma ** 2 - float(x @ x))

    def _upper(self, cells: numpy.ndarray, half: numpy.ndarray) -> numpy.ndarray:
        '''
        Upper bound of the objective on every cell: each of the three terms is separable in
        the reduced coordinates, so its maximum over a box is a sum of one-dimensional maxima.
        '''
        l_low = cells - half[numpy.newaxis, :]
        l_high = cells + half[numpy.newaxis, :]
        l_zlow = l_low[:, :self._rank]
        l_zhigh = l_high[:, :self._rank]
        l_bounds = []
        for i_term in range(2):
            l_a = self._a[i_term]
            l_p = self._p[i_term][numpy.newaxis, :]
            # convex in every coordinate: maximum at an end point
            l_max = numpy.maximum(l_a * l_zlow ** 2 - l_p * l_zlow, l_a * l_zhigh ** 2 - l_p * l_zhigh).sum(axis=1)
            if self._orthogonal is not None:
                l_max = l_max + l_a * l_high[:, self._rank]
            l_bounds.append(self._alpha - self._c[i_term] + l_max)
        l_nearest = numpy.where((l_zlow <= 0) & (l_zhigh >= 0), 0.0, numpy.minimum(l_zlow ** 2, l_zhigh ** 2)).sum(axis=1)
        l_domain = self._gamma ** 2 - l_nearest
        if self._orthogonal is not None:
            l_domain = l_domain - numpy.maximum(l_low[:, self._rank], 0.0)
        l_bounds.append(l_domain)
        return numpy.minimum.reduce(l_bounds)

    def run(self, max_depth: int, max_cells: int) -> IPDecision:
        '''
        Refine cells until a verified witness is found, all cells are certified negative or
        the budget is exhausted.
        '''
        l_center = numpy.zeros(self._dimension)
        l_half = numpy.full(self._dimension, self._gamma)
        if self._orthogonal is not None:
            l_center[self._rank] = self._gamma ** 2 / 2.0
            l_half[self._rank] = self._gamma ** 2 / 2.0
        l_cells = l_center[numpy.newaxis, :]
        l_offsets = numpy.array(list(itertools.product((-0.5, 0.5), repeat=self._dimension)))
        l_best = -math.inf

        for i_depth in range(max_depth + 1):
            l_values = self.objective(l_cells)
            l_top = int(numpy.argmax(l_values))
            l_best = max(l_best, float(l_values[l_top]))
            if l_values[l_top] > self._margin:
                l_x = self.lift(l_cells[l_top])
                l_slack = self.slack(l_x)
                if l_slack > self._margin:
                    return IPDecision(Verdict.FAILS, l_x, 'branch-and-bound', l_slack)

            l_upper = self._upper(l_cells, l_half)
            l_keep = l_upper >= 0.0
            if not numpy.any(l_keep):
                return IPDecision(Verdict.HOLDS, None, 'branch-and-bound', float(l_upper.max()))
            if self._dimension == 0 or int(l_keep.sum()) * len(l_offsets) > max_cells:
                _LOG.debug('ball search stopped at depth %d with %d open cells', i_depth, int(l_keep.sum()))
                break
            l_cells = (l_cells[l_keep][:, numpy.newaxis, :]
                       + l_offsets[numpy.newaxis, :, :] * l_half[numpy.newaxis, numpy.newaxis, :]
                       ).reshape(-1, self._dimension)
            l_half = l_half / 2.0

        return IPDecision(Verdict.UNDECIDED, None, 'budget-exhausted', l_best)


def ip_decide_ball(phi1: QuadMinorant, phi2: QuadMinorant, alpha: float, gamma: float,
                   margin: float = DEFAULT_MARGIN,
                   max_depth: int = DEFAULT_MAX_DEPTH,
                   max_cells: int = DEFAULT_MAX_CELLS) -> IPDecision:
    '''
    Decide the intersection property on the closed ball of radius gamma.

    A full-space Holds carries over to the ball. Otherwise Fails needs a witness with slack
    above margin and Holds needs a certified negative upper bound; everything in between is
    Undecided.

    :param phi1: first minorant
    :param phi2: second minorant
    :param alpha: level
    :param gamma: ball radius, positive
    :param margin: positive witness margin
    :param max_depth: refinement depth limit
    :param max_cells: open cell limit
    :return: IPDecision
    '''
    _check_pair(phi1, phi2, alpha)
    if not math.isfinite(gamma) or gamma <= 0:
        raise InputError(f'ball radius must be positive, got {gamma}')
    if not math.isfinite(margin) or margin <= 0:
        raise InputError(f'margin must be positive, got {margin}')

    l_full = ip_decide_fullspace(phi1, phi2, alpha)
    if l_full.verdict is Verdict.HOLDS:
        return IPDecision(Verdict.HOLDS, None, f'fullspace-restriction:{l_full.certificate}', l_full.margin)

    l_search = _BallSearch(phi1, phi2, alpha, gamma, margin)
    if l_search.slack(l_full.witness) > margin:
        return IPDecision(Verdict.FAILS, l_full.witness, l_full.certificate, l_search.slack(l_full.witness))
    return l_search.run(max_depth, max_cells)


def ip_brute_force(phi1: QuadMinorant, phi2: QuadMinorant, alpha: float, grid: GridSpec,
                   gamma: typing.Optional[float] = None) -> IPDecision:
    '''
    Reference decision by scanning a grid (restricted to the closed ball if gamma is given).
    Holds only means that no grid point is a witness.
    '''
    _check_pair(phi1, phi2, alpha)
    if grid.dimension != phi1.dimension:
        raise InputError(f'grid dimension {grid.dimension} does not match minorant dimension {phi1.dimension}')
    l_points = grid.points
    l_slack = numpy.minimum(alpha - eval_minorant(phi1, l_points), alpha - eval_minorant(phi2, l_points))
    l_inside = numpy.ones(grid.size, dtype=bool) if gamma is None else grid.squared_norms <= gamma ** 2
    l_hits = numpy.flatnonzero((l_slack > 0) & l_inside)
    if l_hits.size:
        return IPDecision(Verdict.FAILS, grid.point(int(l_hits[0])), 'grid-search', float(l_slack[l_hits[0]]))
    return IPDecision(Verdict.HOLDS, None, 'grid-search', float(l_slack[l_inside].max(initial=-math.inf)))


def holds_at_levels(phi1: QuadMinorant, phi2: QuadMinorant, levels: typing.Iterable[float]) -> typing.List[IPDecision]:
    '''
    :return: full-space decisions at every level
    '''
    return [ip_decide_fullspace(phi1, phi2, i_level) for i_level in levels]


def dominates(phi_bar: QuadMinorant, phi: QuadMinorant, grid: GridSpec, tol: float = 1e-9) -> bool:
    '''
    :return: True if phi_bar >= phi - tol on the grid, so the sublevel sets of phi_bar are
        contained in those of phi
    '''
    return bool(numpy.all(eval_minorant(phi_bar, grid.points) >= eval_minorant(phi, grid.points) - tol))


class RayProfile(typing.NamedTuple):
    '''
    Interior touching minorants of a 1-D sampled function relevant to the intersection
    property at a level.
    '''
    has_interior_domain: bool
    constant_above_level: bool
    left_ray_inf: float
    right_ray_sup: float


def _chord_windows(xs: numpy.ndarray, values: numpy.ndarray, index: numpy.ndarray) \
        -> typing.Tuple[numpy.ndarray, numpy.ndarray]:
    '''
    Admissible slopes of affine minorants touching at the given points: the largest left
    chord slope and the smallest right chord slope.
    '''
    l_lower = numpy.empty(index.size)
    l_upper = numpy.empty(index.size)
    l_rows = max(1, (1 << 22) // max(1, xs.size))
    l_columns = numpy.arange(xs.size)
    with numpy.errstate(divide='ignore', invalid='ignore'):
        for i_start in range(0, index.size, l_rows):
            l_index = index[i_start:i_start + l_rows]
            l_quotients = (values[numpy.newaxis, :] - values[l_index, numpy.newaxis]) \
                / (xs[numpy.newaxis, :] - xs[l_index, numpy.newaxis])
            l_left = l_columns[numpy.newaxis, :] < l_index[:, numpy.newaxis]
            l_right = l_columns[numpy.newaxis, :] > l_index[:, numpy.newaxis]
            l_lower[i_start:i_start + l_rows] = numpy.where(l_left, l_quotients, -numpy.inf).max(axis=1)
            l_upper[i_start:i_start + l_rows] = numpy.where(l_right, l_quotients, numpy.inf).min(axis=1)
    return l_lower, l_upper


def _left_ray_inf(xs: numpy.ndarray, values: numpy.ndarray, alpha: float, tol: float) -> float:
    '''
    Infimum of tau over affine minorants with positive slope touching at interior points,
    where ``[phi < alpha] = (-inf, tau)``.
    '''
    l_index = numpy.flatnonzero(numpy.isfinite(values))
    l_index = l_index[(l_index > 0) & (l_index < xs.size - 1)]
    if not l_index.size:
        return math.inf
    l_lower, l_upper = _chord_windows(xs, values, l_index)
    l_positive = (l_upper > 0) & (l_lower <= l_upper + tol)
    if not numpy.any(l_positive):
        return math.inf
    l_x = xs[l_index][l_positive]
    l_gap = alpha - values[l_index][l_positive]
    l_lower = l_lower[l_positive]
    l_upper = l_upper[l_positive]
    with numpy.errstate(divide='ignore', invalid='ignore'):
        # tau(l) = x + gap / l, decreasing in l for gap > 0, increasing for gap < 0
        l_tau = numpy.where(
            l_gap > 0, l_x + l_gap / l_upper,
            numpy.where(l_gap < 0, numpy.where(l_lower > 0, l_x + l_gap / l_lower, -numpy.inf), l_x)
        )
    return float(l_tau.min())


def ray_profile(f: SampledFunction, alpha: float, tol: float = 1e-9) -> RayProfile:
    '''
    Summarise the interior touching affine minorants of a 1-D function at level alpha.
    '''
    if f.dimension != 1:
        raise UnsupportedError(f'ray profiles need a 1-D function, got dimension {f.dimension}')
    l_xs = f.grid.axes[0]
    l_values = f.flat
    l_interior = numpy.isfinite(l_values[1:-1])
    l_constant = False
    if numpy.any(l_interior):
        l_index = numpy.flatnonzero(l_interior) + 1
        l_lower, l_upper = _chord_windows(l_xs, l_values, l_index)
        l_constant = bool(numpy.any((l_lower <= tol) & (l_upper >= -tol) & (l_values[l_index] >= alpha)))
    return RayProfile(
        has_interior_domain=bool(numpy.any(l_interior)),
        constant_above_level=l_constant,
        left_ray_inf=_left_ray_inf(l_xs, l_values, alpha, tol),
        right_ray_sup=-_left_ray_inf(-l_xs[::-1], l_values[::-1], alpha, tol)
    )


def _profiles_admit_witness(first: RayProfile, second: RayProfile) -> bool:
    if (first.constant_above_level and second.has_interior_domain) \
            or (second.constant_above_level and first.has_interior_domain):
        return True
    return first.left_ray_inf <= second.right_ray_sup or second.left_ray_inf <= first.right_ray_sup


def ip_no_witness_certificate_1d(f: SampledFunction, g: SampledFunction, alpha: float, tol: float = 1e-9) -> bool:
    '''
    Certify on a 1-D grid that no pair of subgradients of f and g, touching at interior grid
    points, has the intersection property at alpha.

    A Holds pair needs either an empty sublevel set, i.e. a constant touching minorant at
    least alpha, or opposite affine halfspaces that do not overlap. Both are decided exactly
    from the chord slope windows of f and g.

    :return: True if no witness pair exists
    '''
    if f.grid != g.grid:
        raise InputError('functions live on different grids')
    return not _profiles_admit_witness(ray_profile(f, alpha, tol), ray_profile(g, alpha, tol))


def ip_no_witness_certificate_pairs(functions: typing.Sequence[SampledFunction], alpha: float,
                                    tol: float = 1e-9) -> bool:
    '''
    :return: True if the 1-D certificate holds for every pair (including equal indices)
    '''
    l_profiles = [ray_profile(i_f, alpha, tol) for i_f in functions]
    return not any(
        _profiles_admit_witness(l_profiles[i], l_profiles[j])
        for i in range(len(l_profiles)) for j in range(i, len(l_profiles))
    )
