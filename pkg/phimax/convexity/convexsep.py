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
Convex pairs: separation of sublevel sets and affine subgradient pairs with the
intersection property.

Inputs are finite convex functions sampled on a common box. Separating directions come from
the closest pair between the two strict sublevel sets and are validated against the closed
sublevel sets at grid resolution.
'''

from __future__ import annotations
import dataclasses
import itertools
import logging
import math
import typing

import numpy
import scipy.spatial

from phimax.common.errors import InputError, PreconditionError, SeparationError, TheoremViolation
from phimax.common.helper import Verdict
from phimax.convexity.core import DEFAULT_TOLERANCE, QuadMinorant, SampledFunction, Vector
from phimax.convexity.intersection import IPDecision, ip_decide_fullspace
from phimax.convexity.subdiff import SubdiffQuery, is_subgradient
from phimax.convexity.support import tight_offset

_LOG = logging.getLogger(__name__)


def _directions(dimension: int) -> typing.Iterator[typing.Tuple[int, ...]]:
    '''Lattice directions in {-1, 0, 1}^n up to sign.'''
    for i_direction in itertools.product((-1, 0, 1), repeat=dimension):
        l_nonzero = [i_v for i_v in i_direction if i_v]
        if l_nonzero and l_nonzero[0] > 0:
            yield i_direction


def _neighbour_slices(direction: typing.Tuple[int, ...], sign: int) -> typing.Tuple[slice, ...]:
    '''Slices selecting ``index + sign * direction`` for indices with both neighbours on the grid.'''
    l_slices = []
    for i_step in direction:
        if i_step == 0:
            l_slices.append(slice(None))
        elif i_step * sign > 0:
            l_slices.append(slice(2, None))
        elif i_step * sign < 0:
            l_slices.append(slice(0, -2))
        else:
            l_slices.append(slice(1, -1))
    return tuple(l_slices)


def is_discretely_convex(f: SampledFunction, tol: float = DEFAULT_TOLERANCE) -> bool:
    '''
    Midpoint convexity along every lattice direction in {-1, 0, 1}^n. Functions taking the
    value +inf are not treated as convex here.
    '''
    l_values = f.values
    if not numpy.all(numpy.isfinite(l_values)):
        return False
    for i_direction in _directions(f.dimension):
        if any(i_count < 3 for i_step, i_count in zip(i_direction, f.grid.shape) if i_step):
            continue
        l_center = l_values[tuple(slice(1, -1) if i_step else slice(None) for i_step in i_direction)]
        l_mean = 0.5 * (l_values[_neighbour_slices(i_direction, 1)] + l_values[_neighbour_slices(i_direction, -1)])
        if numpy.any(l_center > l_mean + tol * (1.0 + numpy.abs(l_mean))):
            return False
    return True


def _require_convex_pair(f: SampledFunction, g: SampledFunction, tol: float):
    if f.grid != g.grid:
        raise InputError('functions live on different grids')
    for i_name, i_f in (('f', f), ('g', g)):
        if not numpy.all(numpy.isfinite(i_f.flat)):
            raise PreconditionError(f'{i_name} must be finite on the whole box')
        if not is_discretely_convex(i_f, tol):
            raise PreconditionError(f'{i_name} is not convex on the grid')


def _require_intersection_property(f: SampledFunction, g: SampledFunction, alpha: float):
    l_both = (f.flat < alpha) & (g.flat < alpha)
    if numpy.any(l_both):
        raise PreconditionError(
            f'strict sublevel sets meet at {f.grid.point(int(numpy.flatnonzero(l_both)[0])).tolist()}'
        )


def _touching_index(f: SampledFunction, g: SampledFunction, alpha: float, level_tol: float) -> int:
    '''Grid point of the common closed sublevel set minimising max(f, g), first in grid order.'''
    l_common = (f.flat <= alpha + level_tol) & (g.flat <= alpha + level_tol)
    if not numpy.any(l_common):
        raise PreconditionError(f'closed sublevel sets at {alpha!r} do not meet')
    return int(numpy.argmin(numpy.where(l_common, numpy.maximum(f.flat, g.flat), numpy.inf)))


def _gradient(f: SampledFunction, index: int) -> Vector:
    '''Central difference gradient, one-sided on the boundary of the box.'''
    l_index = numpy.unravel_index(index, f.grid.shape)
    l_gradient = numpy.zeros(f.dimension)
    for i_axis in range(f.dimension):
        l_low = list(l_index)
        l_high = list(l_index)
        l_low[i_axis] = max(l_index[i_axis] - 1, 0)
        l_high[i_axis] = min(l_index[i_axis] + 1, f.grid.shape[i_axis] - 1)
        l_gradient[i_axis] = (f.values[tuple(l_high)] - f.values[tuple(l_low)]) \
            / ((l_high[i_axis] - l_low[i_axis]) * f.grid.step)
    return l_gradient


def _slope_interval(f: SampledFunction, index: int, value: float, direction: Vector, tol: float) \
        -> typing.Tuple[float, float]:
    '''
    Slopes s with ``value + s <direction, x - x_bar> <= f(x)`` on the grid.

    :return: (lowest, highest); empty if lowest > highest
    '''
    l_projection = (f.grid.points - f.grid.points[index]) @ direction
    l_rise = f.flat - value
    l_eps = 1e-12 * f.grid.step
    if numpy.any(l_rise[numpy.abs(l_projection) <= l_eps] < -tol):
        return math.inf, -math.inf
    l_left = l_projection < -l_eps
    l_right = l_projection > l_eps
    l_low = float((l_rise[l_left] / l_projection[l_left]).max(initial=-math.inf))
    l_high = float((l_rise[l_right] / l_projection[l_right]).min(initial=math.inf))
    return l_low, l_high


def _admissible_slope(f: SampledFunction, index: int, value: float, direction: Vector, tol: float,
                      name: str) -> float:
    '''Projected gradient slope clamped into the admissible interval, positive.'''
    l_low, l_high = _slope_interval(f, index, value, direction, tol)
    if l_low > l_high + tol or l_high <= 0:
        raise SeparationError(f'{name} has no affine minorant with positive slope along {direction.tolist()}')
    l_slope = min(max(float(_gradient(f, index) @ direction), l_low), l_high)
    if l_slope <= 0:
        l_slope = l_high if math.isfinite(l_high) else max(l_low, 0.0) + 1.0
    return l_slope


@dataclasses.dataclass(frozen=True, eq=False)
class SeparationResult:
    '''
    Touching point x_bar and unit direction ell with ``<ell, y> <= <ell, x_bar>`` on
    ``[f <= alpha]`` and ``>=`` on ``[g <= alpha]``. The affine minorants of f and g through
    x_bar have slopes ``ell / k`` and ``-ell / lam``.
    '''

    x_bar: Vector
    ell: Vector
    k: float
    lam: float
    method: str


def _separates(f: SampledFunction, g: SampledFunction, alpha: float, index: int, direction: Vector,
               level_tol: float) -> bool:
    l_projection = f.grid.points @ direction
    l_center = float(l_projection[index])
    l_slack = f.grid.step * math.sqrt(f.dimension) + level_tol
    l_f = l_projection[f.flat <= alpha + level_tol]
    l_g = l_projection[g.flat <= alpha + level_tol]
    return bool(l_f.max(initial=-math.inf) <= l_center + l_slack and l_g.min(initial=math.inf) >= l_center - l_slack)


def in_normal_cone(f: SampledFunction, alpha: float, x_bar, ell, tol: typing.Optional[float] = None) -> bool:
    '''
    :return: True if ``<ell, y - x_bar> <= tol`` for every grid point y of ``[f <= alpha]``;
        tol defaults to grid resolution
    '''
    l_x = f.grid.point(f.grid.index_of(x_bar))
    l_ell = numpy.asarray(ell, dtype=numpy.float64)
    if tol is None:
        tol = f.grid.step * math.sqrt(f.dimension) * float(numpy.linalg.norm(l_ell))
    l_inside = f.flat <= alpha
    return bool(numpy.all((f.grid.points[l_inside] - l_x) @ l_ell <= tol))


def separate_sublevel_sets(f: SampledFunction, g: SampledFunction, alpha: float,
                           tol: float = DEFAULT_TOLERANCE, convexity_tol: float = DEFAULT_TOLERANCE) \
        -> SeparationResult:
    '''
    Separate the sublevel sets of two convex functions with the intersection property at
    alpha by a hyperplane through a common boundary point.

    :param f: convex function, finite on the box
    :param g: convex function on the same grid
    :param alpha: level
    :param tol: level tolerance for the closed sublevel sets
    :param convexity_tol: tolerance of the midpoint convexity check
    :return: SeparationResult
    '''
    _require_convex_pair(f, g, convexity_tol)
    _require_intersection_property(f, g, alpha)
    l_index = _touching_index(f, g, alpha, tol)

    l_candidates = []
    l_strict_f = f.grid.points[f.flat < alpha]
    l_strict_g = g.grid.points[g.flat < alpha]
    if l_strict_f.shape[0] and l_strict_g.shape[0]:
        l_distance, l_nearest = scipy.spatial.cKDTree(l_strict_f).query(l_strict_g)
        l_pair = int(numpy.argmin(l_distance))
        l_candidates.append(('closest-pair', l_strict_g[l_pair] - l_strict_f[l_nearest[l_pair]]))
    l_candidates.append(('finite-difference', _gradient(f, l_index)))
    l_candidates.append(('finite-difference', -_gradient(g, l_index)))
    l_candidates.append(('axis', numpy.eye(f.dimension)[0]))

    for i_method, i_direction in l_candidates:
        l_norm = float(numpy.linalg.norm(i_direction))
        if l_norm < 1e-12:
            continue
        l_unit = i_direction / l_norm
        if not _separates(f, g, alpha, l_index, l_unit, tol):
            _LOG.debug('%s direction %s does not separate', i_method, l_unit.tolist())
            continue
        if i_method != 'closest-pair':
            _LOG.warning('separating %r-sublevel sets with the %s fallback', alpha, i_method)
        l_f_slope = _admissible_slope(f, l_index, max(float(f.flat[l_index]), alpha), l_unit, tol, 'f')
        l_g_slope = _admissible_slope(g, l_index, max(float(g.flat[l_index]), alpha), -l_unit, tol, 'g')
        return SeparationResult(f.grid.point(l_index), l_unit, 1.0 / l_f_slope, 1.0 / l_g_slope, i_method)

    raise SeparationError(f'no direction separates the {alpha!r}-sublevel sets at {f.grid.point(l_index).tolist()}')


@dataclasses.dataclass(frozen=True, eq=False)
class ConvPair:
    '''Affine subgradients phi1 of f at x1 and phi2 of g at x2 with the intersection property.'''
    x1: Vector
    phi1: QuadMinorant
    x2: Vector
    phi2: QuadMinorant
    decision: IPDecision
    separation: typing.Optional[SeparationResult]


def _tangent_or_constant(f: SampledFunction, index: int, tol: float) -> typing.Tuple[Vector, QuadMinorant]:
    '''
    Tight affine minorant with the finite difference gradient at index as slope, if it
    touches f there; the minimum value at the first minimiser otherwise.
    '''
    l_slope = _gradient(f, index)
    l_offset = float(tight_offset(f, 0.0, l_slope).c_star)
    l_x = f.grid.point(index)
    if float(f.flat[index]) - float(l_slope @ l_x) <= l_offset + tol:
        return l_x, QuadMinorant(0.0, tuple(float(i_v) for i_v in l_slope), l_offset)
    l_min, l_argmin = f.minimum()
    return f.grid.point(l_argmin), QuadMinorant.constant(l_min, f.dimension)


def conv_subgradient_ip_pair(f: SampledFunction, g: SampledFunction, alpha: float,
                             tol: float = DEFAULT_TOLERANCE, level_tol: typing.Optional[float] = None,
                             convexity_tol: float = DEFAULT_TOLERANCE) -> ConvPair:
    '''
    Affine exact subgradients of f and g whose strict alpha-sublevel sets are disjoint.

    If one strict sublevel set is empty on the grid, that function gets the constant alpha at
    the touching point and the other its tangent there. Otherwise the separating direction gives
    tangent halfspaces through the touching point.

    :param f: convex function, finite on the box
    :param g: convex function on the same grid
    :param alpha: level
    :param tol: membership tolerance
    :param level_tol: tolerance for the closed sublevel sets, defaults to tol
    :param convexity_tol: tolerance of the midpoint convexity check
    :return: ConvPair
    '''
    if level_tol is None:
        level_tol = tol
    _require_convex_pair(f, g, convexity_tol)
    _require_intersection_property(f, g, alpha)
    l_index = _touching_index(f, g, alpha, level_tol)
    l_separation = None

    l_x_bar = f.grid.point(l_index)
    if not numpy.any(f.flat < alpha):
        l_x1, l_phi1 = l_x_bar, QuadMinorant.constant(alpha, f.dimension)
        l_x2, l_phi2 = _tangent_or_constant(g, l_index, max(tol, level_tol))
    elif not numpy.any(g.flat < alpha):
        l_x1, l_phi1 = _tangent_or_constant(f, l_index, max(tol, level_tol))
        l_x2, l_phi2 = l_x_bar, QuadMinorant.constant(alpha, g.dimension)
    else:
        l_separation = separate_sublevel_sets(f, g, alpha, level_tol, convexity_tol)
        l_values = (float(f.flat[l_index]), float(g.flat[l_index]))
        if min(l_values) < alpha - level_tol:
            raise SeparationError(f'touching point {l_separation.x_bar.tolist()} is inside a strict sublevel set')
        l_f_value, l_g_value = (max(i_v, alpha) for i_v in l_values)
        l_anchor = float(l_separation.ell @ l_separation.x_bar)
        l_f_slope = 1.0 / l_separation.k
        l_g_slope = 1.0 / l_separation.lam
        l_x1 = l_x2 = l_separation.x_bar
        l_phi1 = QuadMinorant(0.0, tuple(l_f_slope * l_separation.ell), l_f_value - l_f_slope * l_anchor)
        l_phi2 = QuadMinorant(0.0, tuple(-l_g_slope * l_separation.ell), l_g_value + l_g_slope * l_anchor)

    for i_name, i_f, i_x, i_phi in (('f', f, l_x1, l_phi1), ('g', g, l_x2, l_phi2)):
        if not is_subgradient(SubdiffQuery(i_f, i_x, 0.0, max(tol, level_tol)), i_phi):
            raise TheoremViolation(f'{i_phi} is not a subgradient of {i_name} at {i_x.tolist()}')
    l_decision = ip_decide_fullspace(l_phi1, l_phi2, alpha)
    if l_decision.verdict is not Verdict.HOLDS:
        raise TheoremViolation(f'affine pair {l_phi1}, {l_phi2} lacks the intersection property at {alpha!r}')
    return ConvPair(l_x1, l_phi1, l_x2, l_phi2, l_decision, l_separation)
