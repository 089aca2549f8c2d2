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
Constructive variational principles on grids.

:func:`borwein_preiss` finds a point z close to a near-minimiser y such that f is minimal at
z after adding the penalty ``(eps / lam^2) |x - z|^2``. :func:`bronsted_rockafellar` trades an
epsilon-subgradient at y for an exact subgradient at a nearby point with bounded coefficient
drift, and :func:`ip_transfer_to_ball` uses both to move a full-space intersection property
witness to a ball. Every result is checked exhaustively on the grid before it is returned.
'''

from __future__ import annotations
import dataclasses
import logging
import math
import typing

import numpy

from phimax.common.errors import InputError, PreconditionError, TheoremViolation, VerificationError
from phimax.common.helper import Verdict
from phimax.convexity.core import (
    DEFAULT_TOLERANCE, QuadMinorant, SampledFunction, Vector, as_vector, eval_minorant, support_membership
)
from phimax.convexity.intersection import DEFAULT_MARGIN, IPDecision, ip_decide_ball, ip_decide_fullspace
from phimax.convexity.subdiff import EpsSubgradient, SubdiffQuery, eps_subgradient_from_support, is_subgradient

_LOG = logging.getLogger(__name__)

DEFAULT_MAX_RESTARTS = 10
_BLOCK_ENTRIES = 1 << 22


def _stationarity_tolerance(value: float) -> float:
    return 1e-12 * (1.0 + abs(value))


def _penalised_argmin(values: numpy.ndarray, points: numpy.ndarray, center: Vector, k: float) -> int:
    l_delta = points - center
    return int(numpy.argmin(values + k * numpy.einsum('ij,ij->i', l_delta, l_delta)))


def is_penalty_fixed_point(f: SampledFunction, index: int, k: float) -> bool:
    '''
    :return: True if ``f(z) <= f(x) + k |x - z|^2`` for every grid point x, z the grid point
        with the given flat index
    '''
    l_values = f.flat
    l_delta = f.grid.points - f.grid.points[index]
    l_value = float(l_values[index])
    return bool(numpy.all(l_value <= l_values + k * numpy.einsum('ij,ij->i', l_delta, l_delta)
                          + _stationarity_tolerance(l_value)))


def _fixed_points_near(f: SampledFunction, y: Vector, k: float, lam: float) -> numpy.ndarray:
    '''Flat indices of all penalty fixed points within lam of y, nearest first.'''
    l_points = f.grid.points
    l_distance = numpy.linalg.norm(l_points - y, axis=1)
    l_candidates = numpy.flatnonzero((l_distance <= lam * (1.0 + 1e-12)) & f.domain_mask)
    l_candidates = l_candidates[numpy.argsort(l_distance[l_candidates], kind='stable')]
    l_fixed = []
    l_rows = max(1, _BLOCK_ENTRIES // f.grid.size)
    for i_start in range(0, l_candidates.size, l_rows):
        l_block = l_candidates[i_start:i_start + l_rows]
        l_delta2 = (numpy.einsum('ij,ij->i', l_points, l_points)[numpy.newaxis, :]
                    + numpy.einsum('ij,ij->i', l_points[l_block], l_points[l_block])[:, numpy.newaxis]
                    - 2.0 * l_points[l_block] @ l_points.T)
        l_value = f.flat[l_block]
        l_ok = numpy.all(
            l_value[:, numpy.newaxis] <= f.flat[numpy.newaxis, :] + k * numpy.maximum(l_delta2, 0.0)
            + _stationarity_tolerance(1.0) * (1.0 + numpy.abs(l_value[:, numpy.newaxis])),
            axis=1
        )
        l_fixed.extend(int(i) for i in l_block[l_ok])
    return numpy.asarray(l_fixed, dtype=numpy.intp)


def borwein_preiss(f: SampledFunction, y, epsilon: float, lam: float,
                   tol: float = DEFAULT_TOLERANCE, max_restarts: int = DEFAULT_MAX_RESTARTS) -> Vector:
    '''
    Find z with ``|z - y| <= lam`` and ``f(z) <= f(x) + (eps / lam^2) |x - z|^2`` for all x.

    The penalised minimisation is iterated from y. Runs that drift further than lam are
    repeated with the penalty doubled; if no run lands within lam the grid is scanned for
    the fixed point nearest to y.

    :param f: sampled function
    :param y: grid point with f(y) <= min f + eps
    :param epsilon: positive epsilon
    :param lam: positive radius
    :param tol: tolerance of the near-minimality precondition
    :param max_restarts: number of penalty doublings
    :return: z
    '''
    if not math.isfinite(epsilon) or epsilon <= 0 or not math.isfinite(lam) or lam <= 0:
        raise InputError(f'epsilon and lambda must be positive, got {epsilon} and {lam}')
    l_start = f.grid.index_of(as_vector(y, f.dimension))
    l_min, _ = f.minimum()
    if not f.flat[l_start] <= l_min + epsilon + tol:
        raise PreconditionError(f'f(y) = {f.flat[l_start]!r} exceeds min f + eps = {l_min + epsilon!r}')

    l_points = f.grid.points
    l_values = f.flat
    l_y = f.grid.point(l_start)
    l_k = epsilon / lam ** 2

    for i_restart in range(max_restarts + 1):
        l_penalty = l_k * 2.0 ** i_restart
        l_index = l_start
        for _ in range(f.grid.size):
            l_next = _penalised_argmin(l_values, l_points, l_points[l_index], l_penalty)
            l_delta = l_points[l_next] - l_points[l_index]
            # stay unless the move gains more than rounding
            if l_values[l_next] + l_penalty * float(l_delta @ l_delta) \
                    >= l_values[l_index] - _stationarity_tolerance(l_values[l_index]):
                break
            l_index = l_next
        if float(numpy.linalg.norm(l_points[l_index] - l_y)) <= lam * (1.0 + 1e-12) \
                and is_penalty_fixed_point(f, l_index, l_k):
            _LOG.debug('penalised iteration settled after %d restarts', i_restart)
            return f.grid.point(l_index)

    _LOG.warning('penalised iteration drifted beyond %r, scanning fixed points', lam)
    l_fixed = _fixed_points_near(f, l_y, l_k, lam)
    if not l_fixed.size:
        raise VerificationError(
            f'no point within {lam!r} of {l_y.tolist()} minimises f + {l_k!r}|x - z|^2'
        )
    return f.grid.point(int(l_fixed[0]))


@dataclasses.dataclass(frozen=True)
class BRBounds:
    '''
    Certified drift between the input minorant ``(a, l, c)`` at y and the output ``(a_bar,
    l_bar, c_bar)`` at y_bar.
    '''

    dist: float
    slope_change: float
    slope_bound: float
    curv_change: float
    curv_target: float
    offset_change: float
    offset_bound: float
    __slots__ = ('dist', 'slope_change', 'slope_bound', 'curv_change', 'curv_target', 'offset_change',
                 'offset_bound')

    def violations(self, lam: float, tol: float = DEFAULT_TOLERANCE) -> typing.List[str]:
        '''
        :return: names of the bounds that do not hold
        '''
        l_violations = []
        if self.dist > lam * (1.0 + 1e-12):
            l_violations.append('dist')
        if self.slope_change > self.slope_bound + tol:
            l_violations.append('slope_change')
        if abs(self.curv_change - self.curv_target) > 1e-12:
            l_violations.append('curv_change')
        if self.offset_change > self.offset_bound + tol:
            l_violations.append('offset_change')
        return l_violations


@dataclasses.dataclass(frozen=True, eq=False)
class BRResult:
    '''Exact subgradient phi_bar at y_bar with its certified bounds.'''
    y_bar: Vector
    phi_bar: QuadMinorant
    bounds: BRBounds


def bronsted_rockafellar(f: SampledFunction, y, phi: QuadMinorant, epsilon: float, lam: float,
                         tol: float = DEFAULT_TOLERANCE,
                         max_restarts: int = DEFAULT_MAX_RESTARTS) -> BRResult:
    '''
    Turn an epsilon-subgradient phi at y into an exact subgradient at a point within lam.

    With ``W = f - phi`` and ``y_bar`` from :func:`borwein_preiss` on W, the result is
    ``phi_bar = (a + k, l + 2 k y_bar, c - k |y_bar|^2 - phi(y_bar) + f(y_bar))``,
    ``k = eps / lam^2``.

    :param f: sampled function
    :param y: grid point of dom(f)
    :param phi: support member of f with ``f(y) - phi(y) <= eps``
    :param epsilon: positive epsilon
    :param lam: positive radius
    :param tol: membership tolerance
    :return: BRResult
    '''
    if not math.isfinite(epsilon) or epsilon <= 0 or not math.isfinite(lam) or lam <= 0:
        raise InputError(f'epsilon and lambda must be positive, got {epsilon} and {lam}')
    l_y = f.grid.point(f.grid.index_of(as_vector(y, f.dimension)))
    l_fy = f.value_at(l_y)
    if not math.isfinite(l_fy):
        raise InputError(f'{l_y.tolist()} is not in the domain of f')
    l_report = support_membership(f, phi, tol)
    if not l_report.member:
        raise PreconditionError(f'{phi} is not a support member of f (slack {l_report.min_slack!r})')
    if l_fy - eval_minorant(phi, l_y) > epsilon + tol:
        raise PreconditionError(f'{phi} is not an {epsilon!r}-subgradient at {l_y.tolist()}')

    l_residual = f.with_values(f.flat - eval_minorant(phi, f.grid.points))
    l_y_bar = borwein_preiss(l_residual, l_y, epsilon, lam, 2.0 * tol, max_restarts)
    l_k = epsilon / lam ** 2
    l_phi_bar = QuadMinorant(
        phi.a + l_k,
        tuple(phi.slope + 2.0 * l_k * l_y_bar),
        phi.c - l_k * float(l_y_bar @ l_y_bar) - eval_minorant(phi, l_y_bar) + f.value_at(l_y_bar)
    )
    if not is_subgradient(SubdiffQuery(f, l_y_bar, 0.0, tol), l_phi_bar):
        raise VerificationError(f'{l_phi_bar} is not a subgradient at {l_y_bar.tolist()}')

    l_bounds = BRBounds(
        dist=float(numpy.linalg.norm(l_y_bar - l_y)),
        slope_change=float(numpy.linalg.norm(l_phi_bar.slope - phi.slope)),
        slope_bound=2.0 * l_k * (lam + float(numpy.linalg.norm(l_y))),
        curv_change=l_phi_bar.a - phi.a,
        curv_target=l_k,
        offset_change=phi.c - l_phi_bar.c,
        offset_bound=l_k * float(l_y_bar @ l_y_bar)
    )
    l_violations = l_bounds.violations(lam, tol)
    if l_violations:
        raise TheoremViolation(f'bounds {", ".join(l_violations)} violated: {l_bounds}')
    return BRResult(l_y_bar, l_phi_bar, l_bounds)


def nearby_subdifferentiable_point(f: SampledFunction, x, lam: float, tol: float = DEFAULT_TOLERANCE) -> BRResult:
    '''
    Exact subgradient at a point within lam of x: the constant min f is an
    ``(f(x) - min f)``-subgradient at x.
    '''
    l_x = as_vector(x, f.dimension)
    l_min, _ = f.minimum()
    l_epsilon = f.value_at(l_x) - l_min
    if not math.isfinite(l_epsilon):
        raise InputError(f'{l_x.tolist()} is not in the domain of f')
    # at a global minimiser any positive epsilon does
    return bronsted_rockafellar(f, l_x, QuadMinorant.constant(l_min, f.dimension),
                                l_epsilon if l_epsilon > 0 else 1.0, lam, tol)


@dataclasses.dataclass(frozen=True, eq=False)
class TransferResult:
    '''Minorants moved to nearby touching points, and their decision on the ball.'''
    x1: Vector
    phi1_bar: QuadMinorant
    x2: Vector
    phi2_bar: QuadMinorant
    decision: IPDecision
    epsilon: float
    lambdas: typing.Tuple[float, float]
    lifted: typing.Tuple[EpsSubgradient, EpsSubgradient]
    drift: typing.Tuple[BRBounds, BRBounds]


def ip_transfer_to_ball(f: SampledFunction, g: SampledFunction, phi1: QuadMinorant, phi2: QuadMinorant,
                        alpha: float, gamma: float, eta: float,
                        margin: float = DEFAULT_MARGIN, tol: float = DEFAULT_TOLERANCE) -> TransferResult:
    '''
    Move a full-space intersection property pair of support members to exact subgradients
    whose intersection property holds on the ball of radius gamma at level alpha - eta.

    :param f: first function
    :param g: second function
    :param phi1: support member of f
    :param phi2: support member of g
    :param alpha: level at which phi1, phi2 have the intersection property on the full space
    :param gamma: ball radius
    :param eta: level loss, positive
    :param margin: ball decision margin
    :param tol: membership tolerance
    :return: TransferResult, never with a Fails decision
    '''
    if not math.isfinite(gamma) or gamma <= 0 or not math.isfinite(eta) or eta <= 0:
        raise InputError(f'gamma and eta must be positive, got {gamma} and {eta}')
    for i_name, i_f, i_phi in (('f', f, phi1), ('g', g, phi2)):
        if not support_membership(i_f, i_phi, tol).member:
            raise PreconditionError(f'{i_phi} is not a support member of {i_name}')
    if ip_decide_fullspace(phi1, phi2, alpha).verdict is not Verdict.HOLDS:
        raise PreconditionError(f'{phi1} and {phi2} lack the intersection property at {alpha!r}')

    l_epsilon = eta / gamma
    l_lifted = (eps_subgradient_from_support(f, phi1, l_epsilon, tol),
                eps_subgradient_from_support(g, phi2, l_epsilon, tol))
    # the lifted minorants dominate the originals, so the intersection property carries over
    if ip_decide_fullspace(l_lifted[0].phi_bar, l_lifted[1].phi_bar, alpha).verdict is not Verdict.HOLDS:
        raise TheoremViolation('lifted minorants lost the intersection property')

    l_lambdas = tuple(
        1.0 + math.sqrt(1.0 + 2.0 * float(numpy.linalg.norm(i_lift.x1)) + gamma
                        + float(i_lift.x1 @ i_lift.x1) / gamma)
        for i_lift in l_lifted
    )
    l_results = (
        bronsted_rockafellar(f, l_lifted[0].x1, l_lifted[0].phi_bar, l_epsilon, l_lambdas[0], tol),
        bronsted_rockafellar(g, l_lifted[1].x1, l_lifted[1].phi_bar, l_epsilon, l_lambdas[1], tol)
    )
    l_decision = ip_decide_ball(l_results[0].phi_bar, l_results[1].phi_bar, alpha - eta, gamma, margin)
    if l_decision.verdict is Verdict.FAILS:
        raise TheoremViolation(
            f'transferred pair {l_results[0].phi_bar}, {l_results[1].phi_bar} overlaps on the ball '
            f'of radius {gamma!r} at {alpha - eta!r}, witness {l_decision.witness.tolist()}'
        )
    return TransferResult(
        x1=l_results[0].y_bar, phi1_bar=l_results[0].phi_bar,
        x2=l_results[1].y_bar, phi2_bar=l_results[1].phi_bar,
        decision=l_decision,
        epsilon=l_epsilon,
        lambdas=l_lambdas,
        lifted=l_lifted,
        drift=(l_results[0].bounds, l_results[1].bounds)
    )
