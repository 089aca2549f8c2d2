# -*- coding: utf-8 -*-
# @package phimax.minimax
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
Witness searches for the minimax equality: pairs of simplex points and minorants of the
corresponding mixtures whose strict sublevel sets at a level are disjoint.

Two nonempty strict sublevel sets of quadratic minorants are disjoint only if both are
opposite open halfspaces; a curvature or a constant below the level always leaves an
unbounded set that meets the other one. The searches therefore look at constant minorants
first and then at the affine dictionary entries, grouped by slope direction.
'''

from __future__ import annotations
import dataclasses
import logging
import math
import typing

import numpy

from phimax.common.errors import InputError, PreconditionError, TheoremViolation
from phimax.common.helper import FULL_SPACE, Region, Verdict, WitnessMode
from phimax.convexity.convexsep import conv_subgradient_ip_pair, is_discretely_convex
from phimax.convexity.core import DEFAULT_TOLERANCE, QuadMinorant, SampledFunction, Vector, support_membership
from phimax.convexity.intersection import (
    DEFAULT_MARGIN, IPDecision, ip_decide_ball, ip_decide_fullspace, ip_no_witness_certificate_pairs
)
from phimax.convexity.subdiff import SubdiffQuery, eps_subgradient_from_support, is_subgradient
from phimax.convexity.support import MinorantDictionary, profile_blocks
from phimax.convexity.variational import ip_transfer_to_ball
from phimax.minimax.saddle import SaddleProblem, SaddleValues, saddle_values

_LOG = logging.getLogger(__name__)

DEFAULT_GRID_TOLERANCE = 0.02
DEFAULT_LEVEL_OFFSET = 0.05

# gaps below this count as zero for the constructive ball route
_ZERO_GAP = 1e-12


@dataclasses.dataclass(frozen=True, eq=False)
class IPWitness:
    '''
    Minorants phi1 of ``a(., y1)`` and phi2 of ``a(., y2)`` with the intersection property at
    ``level`` on ``region``. Subgradient modes carry the touching points x1, x2.
    '''

    y1: Vector
    y2: Vector
    phi1: QuadMinorant
    phi2: QuadMinorant
    mode: WitnessMode
    region: Region
    level: float
    decision: IPDecision
    x1: typing.Optional[Vector] = None
    x2: typing.Optional[Vector] = None
    epsilon: float = 0.0
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def holds(self) -> bool:
        '''
        :return: True if the recorded decision is Holds
        '''
        return self.decision.verdict is Verdict.HOLDS


def steepest_table(problem: SaddleProblem) -> SampledFunction:
    '''
    :return: the table with the largest grid Lipschitz estimate, the first one on ties
    '''
    return max(problem.tables, key=lambda i_table: i_table.lipschitz_estimate())


def problem_dictionary(problem: SaddleProblem, **kwargs) -> MinorantDictionary:
    '''
    Default dictionary for a saddle problem, sized for its steepest table.

    :param kwargs: passed to MinorantDictionary.default_for
    '''
    return MinorantDictionary.default_for(steepest_table(problem), **kwargs)


class _AffineSlopes(object):
    '''Nonzero affine dictionary slopes grouped by direction, in dictionary order.'''

    def __init__(self, dictionary: MinorantDictionary):
        l_slopes = dictionary.slope_array
        l_norms = numpy.linalg.norm(l_slopes, axis=1)
        l_keep = l_norms > 0
        self.slopes = l_slopes[l_keep]
        self.norms = l_norms[l_keep]
        l_keys = {}
        l_groups = []
        for i_slope, i_norm in zip(self.slopes, self.norms):
            l_groups.append(l_keys.setdefault(tuple(numpy.round(i_slope / i_norm, 9) + 0.0), len(l_keys)))
        self.groups = numpy.asarray(l_groups, dtype=numpy.intp)
        l_directions = list(l_keys)
        self.opposite = numpy.asarray(
            [l_keys.get(tuple(-numpy.asarray(i_key) + 0.0), -1) for i_key in l_directions], dtype=numpy.intp
        )
        self.group_count = len(l_directions)


class _HalfspaceBounds(typing.NamedTuple):
    '''Tight affine minorants of one mixture at a level.'''
    offsets: numpy.ndarray
    tau: numpy.ndarray
    touching: numpy.ndarray


def _halfspace_bounds(f: SampledFunction, slopes: _AffineSlopes, alpha: float, interior_only: bool,
                      tol: float) -> _HalfspaceBounds:
    '''
    For every slope l: the tight offset c, the bound ``tau = (alpha - c) / |l|`` of the
    halfspace ``[phi < alpha] = {<l/|l|, x> < tau}``, and the first admissible touching point
    (-1 and ``tau = +inf`` where no touching point qualifies).
    '''
    l_offsets = numpy.empty(slopes.slopes.shape[0])
    l_touching = numpy.full(slopes.slopes.shape[0], -1, dtype=numpy.intp)
    l_admissible = f.grid.interior_mask if interior_only else numpy.ones(f.grid.size, dtype=bool)
    l_admissible = l_admissible & f.domain_mask
    for i_slice, i_block in profile_blocks(f, 0.0, slopes.slopes):
        l_min = i_block.min(axis=1)
        l_offsets[i_slice] = l_min
        l_hits = (i_block <= l_min[:, numpy.newaxis] + tol) & l_admissible[numpy.newaxis, :]
        l_any = l_hits.any(axis=1)
        l_touching[i_slice] = numpy.where(l_any, numpy.argmax(l_hits, axis=1), -1)
    l_tau = numpy.where(l_touching >= 0, (alpha - l_offsets) / slopes.norms, numpy.inf)
    return _HalfspaceBounds(l_offsets, l_tau, l_touching)


def _constant_witness(problem: SaddleProblem, weights: numpy.ndarray, infima: numpy.ndarray, alpha: float,
                      interior_only: bool, tol: float) -> typing.Optional[typing.Tuple[int, int]]:
    '''
    First simplex point whose mixture infimum is at least alpha, together with a touching
    point of that constant.

    :return: (simplex index, flat grid index) or None
    '''
    for i_index in numpy.flatnonzero(numpy.isfinite(infima) & (infima >= alpha)):
        l_values = problem.mixture_values(weights[i_index])[0]
        l_hits = l_values <= infima[i_index] + tol
        if interior_only:
            l_hits &= problem.grid.interior_mask
        if numpy.any(l_hits):
            return int(i_index), int(numpy.argmax(l_hits))
    return None


def _search(problem: SaddleProblem, alpha: float, dictionary: MinorantDictionary, mode: WitnessMode,
            interior_only: bool, tol: float) -> typing.Optional[IPWitness]:
    '''Shared search over constants and opposite affine pairs, full space.'''
    if dictionary.dimension != problem.grid.dimension:
        raise InputError(f'dictionary dimension {dictionary.dimension} does not match grid dimension '
                         f'{problem.grid.dimension}')
    l_weights = problem.simplex_grid()
    l_infima, _ = problem.inner_infima(l_weights)

    l_constant = _constant_witness(problem, l_weights, l_infima, alpha, interior_only, tol)
    if l_constant is not None:
        l_index, l_point = l_constant
        l_phi = QuadMinorant.constant(float(l_infima[l_index]), problem.grid.dimension)
        l_x = problem.grid.point(l_point) if mode is WitnessMode.SUBGRADIENT else None
        return IPWitness(l_weights[l_index], l_weights[l_index], l_phi, l_phi, mode, FULL_SPACE, alpha,
                         ip_decide_fullspace(l_phi, l_phi, alpha), l_x, l_x)

    l_slopes = _AffineSlopes(dictionary)
    if not l_slopes.group_count:
        return None

    # B[y, d]: leftmost halfspace bound in direction d over the slopes of y
    l_bounds = numpy.full((l_weights.shape[0], l_slopes.group_count), numpy.inf)
    for i_row, i_weights in enumerate(l_weights):
        if not numpy.isfinite(l_infima[i_row]):
            continue
        l_table = _halfspace_bounds(problem.mixture(i_weights), l_slopes, alpha, interior_only, tol)
        numpy.minimum.at(l_bounds[i_row], l_slopes.groups, l_table.tau)

    l_valid = l_slopes.opposite >= 0
    l_opposite = numpy.full_like(l_bounds, numpy.inf)
    l_opposite[:, l_valid] = l_bounds[:, l_slopes.opposite[l_valid]]
    l_suffix = numpy.minimum.accumulate(l_opposite[::-1], axis=0)[::-1]
    l_rows = numpy.flatnonzero(numpy.any(l_bounds + l_suffix <= 0, axis=1))
    _LOG.debug('%d simplex points admit opposite halfspace pairs at %r', l_rows.size, alpha)

    for i_first in l_rows:
        l_partners = i_first + numpy.flatnonzero(numpy.any(l_bounds[i_first] + l_opposite[i_first:] <= 0, axis=1))
        l_first = _halfspace_bounds(problem.mixture(l_weights[i_first]), l_slopes, alpha, interior_only, tol)
        for i_second in l_partners:
            l_second = _halfspace_bounds(problem.mixture(l_weights[i_second]), l_slopes, alpha, interior_only, tol)
            l_witness = _pair_witness(problem, l_weights[i_first], l_weights[i_second], l_first, l_second,
                                      l_slopes, alpha, mode)
            if l_witness is not None:
                return l_witness
    return None


def _pair_witness(problem: SaddleProblem, y1: Vector, y2: Vector, first: _HalfspaceBounds,
                  second: _HalfspaceBounds, slopes: _AffineSlopes, alpha: float,
                  mode: WitnessMode) -> typing.Optional[IPWitness]:
    for i_row in numpy.flatnonzero(numpy.isfinite(first.tau)):
        l_opposite = slopes.opposite[slopes.groups[i_row]]
        if l_opposite < 0:
            continue
        l_candidates = numpy.flatnonzero(
            (slopes.groups == l_opposite) & (first.tau[i_row] + second.tau <= 0)
        )
        for i_col in l_candidates:
            l_phi1 = QuadMinorant(0.0, tuple(slopes.slopes[i_row]), float(first.offsets[i_row]))
            l_phi2 = QuadMinorant(0.0, tuple(slopes.slopes[i_col]), float(second.offsets[i_col]))
            l_decision = ip_decide_fullspace(l_phi1, l_phi2, alpha)
            if l_decision.verdict is Verdict.HOLDS:
                l_touching = (None, None)
                if mode is WitnessMode.SUBGRADIENT:
                    l_touching = (problem.grid.point(int(first.touching[i_row])),
                                  problem.grid.point(int(second.touching[i_col])))
                return IPWitness(y1, y2, l_phi1, l_phi2, mode, FULL_SPACE, alpha, l_decision, *l_touching)
    return None


def _require_below_upper(alpha: float, values: SaddleValues):
    if not math.isfinite(alpha):
        raise InputError(f'level must be finite, got {alpha}')
    if not alpha < values.upper:
        raise PreconditionError(f'level {alpha!r} is not below the inf-sup {values.upper!r}')


def support_ip_witness_search(problem: SaddleProblem, alpha: float,
                              dictionary: typing.Optional[MinorantDictionary] = None,
                              values: typing.Optional[SaddleValues] = None,
                              tol: float = DEFAULT_TOLERANCE) -> typing.Optional[IPWitness]:
    '''
    Search a pair of tight support minorants with the intersection property on the full space.

    Constants come first: a simplex point whose mixture infimum reaches alpha gives an empty
    strict sublevel set. Then simplex pairs ``i <= j`` in grid order, vertices first, are
    scanned for opposite affine halfspaces; within a pair the dictionary order decides.

    :param problem: saddle problem
    :param alpha: level below the inf-sup
    :param dictionary: minorant dictionary, defaults to :func:`problem_dictionary`
    :param values: precomputed saddle values
    :param tol: touching tolerance
    :return: IPWitness or None
    '''
    l_values = values if values is not None else saddle_values(problem, refine=False)
    _require_below_upper(alpha, l_values)
    l_dictionary = dictionary if dictionary is not None else problem_dictionary(problem)
    return _search(problem, alpha, l_dictionary, WitnessMode.SUPPORT, False, tol)


def _transfer_witness(problem: SaddleProblem, witness: IPWitness, alpha: float, gamma: float,
                      margin: float, tol: float) -> IPWitness:
    '''Move a full-space support witness at a higher level to exact subgradients on a ball at alpha.'''
    l_result = ip_transfer_to_ball(
        problem.mixture(witness.y1), problem.mixture(witness.y2), witness.phi1, witness.phi2,
        witness.level, gamma, witness.level - alpha, margin, tol
    )
    if l_result.decision.verdict is not Verdict.HOLDS:
        _LOG.warning('ball decision for the transferred pair at %r is %s', alpha, l_result.decision.verdict)
    return IPWitness(witness.y1, witness.y2, l_result.phi1_bar, l_result.phi2_bar, WitnessMode.SUBGRADIENT,
                     Region(gamma), alpha, l_result.decision, l_result.x1, l_result.x2, tolerance=tol)


def subgradient_ip_witness_search(problem: SaddleProblem, alpha: float, region: Region = FULL_SPACE,
                                  dictionary: typing.Optional[MinorantDictionary] = None,
                                  values: typing.Optional[SaddleValues] = None,
                                  margin: float = DEFAULT_MARGIN,
                                  tol: float = DEFAULT_TOLERANCE) -> typing.Optional[IPWitness]:
    '''
    Search exact subgradients with the intersection property.

    On the full space the dictionary search only admits minorants touching at interior grid
    points. On a ball the level is raised to some beta below the inf-sup, a support witness
    is found there and moved to nearby exact subgradients by :func:`ip_transfer_to_ball`,
    losing ``beta - alpha``. A ball witness whose decision is Undecided is returned as is.

    :param problem: saddle problem
    :param alpha: level below the inf-sup
    :param region: full space or ball
    :param dictionary: minorant dictionary for the full space search
    :param values: precomputed saddle values
    :param margin: ball decision margin
    :param tol: touching tolerance
    :return: IPWitness or None
    '''
    l_values = values if values is not None else saddle_values(problem, refine=False)
    _require_below_upper(alpha, l_values)
    l_dictionary = dictionary if dictionary is not None else problem_dictionary(problem)
    if not region.is_ball:
        return _search(problem, alpha, l_dictionary, WitnessMode.SUBGRADIENT, True, tol)

    if alpha < l_values.lower:
        l_beta = 0.5 * (alpha + l_values.lower)
        l_phi = QuadMinorant.constant(l_values.lower, problem.grid.dimension)
        l_support = IPWitness(l_values.lower_weights, l_values.lower_weights, l_phi, l_phi, WitnessMode.SUPPORT,
                              FULL_SPACE, l_beta, ip_decide_fullspace(l_phi, l_phi, l_beta))
    else:
        l_beta = 0.5 * (alpha + l_values.upper)
        l_support = _search(problem, l_beta, l_dictionary, WitnessMode.SUPPORT, False, tol)
        if l_support is None:
            if l_values.gap <= _ZERO_GAP:
                raise TheoremViolation(f'no support witness at {l_beta!r} although the saddle gap vanishes')
            return None
    _LOG.debug('transferring support witness from %r to %r on %s', l_beta, alpha, region)
    return _transfer_witness(problem, l_support, alpha, region.gamma, margin, tol)


def eps_subgradient_ip_witness_search(problem: SaddleProblem, alpha: float, epsilon: float,
                                      dictionary: typing.Optional[MinorantDictionary] = None,
                                      values: typing.Optional[SaddleValues] = None,
                                      tol: float = DEFAULT_TOLERANCE) -> typing.Optional[IPWitness]:
    '''
    Search epsilon-subgradients with the intersection property: a support witness lifted to
    its touching positions. The lifted minorants dominate the originals, so the intersection
    property carries over.

    :return: IPWitness or None
    '''
    if not math.isfinite(epsilon) or epsilon <= 0:
        raise InputError(f'epsilon must be positive, got {epsilon}')
    l_support = support_ip_witness_search(problem, alpha, dictionary, values, tol)
    if l_support is None:
        return None
    l_first = eps_subgradient_from_support(problem.mixture(l_support.y1), l_support.phi1, epsilon, tol)
    l_second = eps_subgradient_from_support(problem.mixture(l_support.y2), l_support.phi2, epsilon, tol)
    l_decision = ip_decide_fullspace(l_first.phi_bar, l_second.phi_bar, alpha)
    if l_decision.verdict is not Verdict.HOLDS:
        raise TheoremViolation(f'lifted pair {l_first.phi_bar}, {l_second.phi_bar} lost the intersection property')
    return IPWitness(l_support.y1, l_support.y2, l_first.phi_bar, l_second.phi_bar, WitnessMode.EPS_SUBGRADIENT,
                     FULL_SPACE, alpha, l_decision, l_first.x1, l_second.x1, epsilon, tol)


def _bounded_sublevel(values: numpy.ndarray, interior: numpy.ndarray, level: float) -> bool:
    l_inside = values <= level
    return bool(numpy.any(l_inside) and not numpy.any(l_inside & ~interior))


def conv_minimax_witness(problem: SaddleProblem, alpha: float, values: typing.Optional[SaddleValues] = None,
                         grid_tolerance: float = DEFAULT_GRID_TOLERANCE,
                         level_offset: float = DEFAULT_LEVEL_OFFSET,
                         tol: float = DEFAULT_TOLERANCE,
                         convexity_tol: float = DEFAULT_TOLERANCE) -> IPWitness:
    '''
    Affine subgradient witness for convex tables with vanishing gap.

    beta is the sup-inf and y_bar its maximising mixture. y_tilde is the first simplex point
    whose ``beta + level_offset`` sublevel set is nonempty and stays off the boundary of the
    box. A common point of both beta-sublevel sets is found with the smallest tolerance in
    ``tol * 2^k`` that makes them meet; the subgradient pair at that point keeps the
    intersection property at every level up to beta.

    :param problem: saddle problem with convex finite tables
    :param alpha: level, at most the sup-inf
    :param values: precomputed saddle values
    :param grid_tolerance: largest admissible gap
    :param level_offset: offset above beta for the boundedness test
    :param tol: membership tolerance
    :param convexity_tol: tolerance of the midpoint convexity check of the tables
    :return: IPWitness in mode conv
    '''
    for i_label, i_table in zip(problem.labels, problem.tables):
        if not numpy.all(numpy.isfinite(i_table.flat)) or not is_discretely_convex(i_table, convexity_tol):
            raise PreconditionError(f'table of label {i_label} is not a finite convex function')
    l_values = values if values is not None else saddle_values(problem, refine=False)
    if l_values.gap > grid_tolerance:
        raise PreconditionError(f'saddle gap {l_values.gap!r} exceeds the grid tolerance {grid_tolerance!r}')
    l_beta = l_values.lower
    if alpha > l_beta:
        raise PreconditionError(f'level {alpha!r} lies above the sup-inf {l_beta!r}')

    l_weights = problem.simplex_grid()
    l_interior = problem.grid.interior_mask
    l_tilde = next(
        (i_w for i_w in l_weights
         if _bounded_sublevel(problem.mixture_values(i_w)[0], l_interior, l_beta + level_offset)),
        None
    )
    if l_tilde is None:
        raise PreconditionError(f'no mixture has a bounded sublevel set at {l_beta + level_offset!r} inside the box')

    l_bar = problem.mixture(l_values.lower_weights)
    l_other = problem.mixture(l_tilde)
    l_level_tol = tol
    while not numpy.any((l_bar.flat <= l_beta + l_level_tol) & (l_other.flat <= l_beta + l_level_tol)):
        l_level_tol *= 2.0
        if l_level_tol > grid_tolerance + level_offset:
            raise PreconditionError(f'sublevel sets at {l_beta!r} do not meet within {grid_tolerance + level_offset!r}')
    _LOG.debug('conv witness: y_tilde %s, level tolerance %r', l_tilde.tolist(), l_level_tol)

    l_pair = conv_subgradient_ip_pair(l_bar, l_other, l_beta, tol, l_level_tol, convexity_tol)
    l_decision = ip_decide_fullspace(l_pair.phi1, l_pair.phi2, alpha)
    if l_decision.verdict is not Verdict.HOLDS:
        raise TheoremViolation(f'pair {l_pair.phi1}, {l_pair.phi2} lost the intersection property at {alpha!r}')
    return IPWitness(l_values.lower_weights, l_tilde, l_pair.phi1, l_pair.phi2, WitnessMode.CONV_SUBGRADIENT,
                     FULL_SPACE, alpha, l_decision, l_pair.x1, l_pair.x2, tolerance=max(tol, l_level_tol))


def verify_witness(problem: SaddleProblem, witness: IPWitness, tol: float = DEFAULT_TOLERANCE,
                   margin: float = DEFAULT_MARGIN) -> bool:
    '''
    Re-verify a witness independently of the search that produced it: support membership
    of both minorants, the mode's subgradient membership at the touching points, and a fresh
    Holds decision at the recorded level and region.
    '''
    l_tol = max(tol, witness.tolerance)
    for i_y, i_phi, i_x in ((witness.y1, witness.phi1, witness.x1), (witness.y2, witness.phi2, witness.x2)):
        l_f = problem.mixture(i_y)
        if not support_membership(l_f, i_phi, l_tol).member:
            return False
        if witness.mode is not WitnessMode.SUPPORT:
            if i_x is None:
                return False
            l_epsilon = witness.epsilon if witness.mode is WitnessMode.EPS_SUBGRADIENT else 0.0
            if not is_subgradient(SubdiffQuery(l_f, i_x, l_epsilon, l_tol), i_phi):
                return False
    if witness.region.is_ball:
        l_decision = ip_decide_ball(witness.phi1, witness.phi2, witness.level, witness.region.gamma, margin)
    else:
        l_decision = ip_decide_fullspace(witness.phi1, witness.phi2, witness.level)
    return l_decision.verdict is Verdict.HOLDS


def nonexistence_label(problem: SaddleProblem, alpha: float, mode: WitnessMode, region: Region,
                       values: SaddleValues, tol: float = DEFAULT_TOLERANCE) -> str:
    '''
    Qualify an unsuccessful search.

    On the full space every witness has a mixture of its two minorants that stays at or above
    alpha, so no witness exists beyond the certified ceiling of the sup-inf. In one
    dimension the interior touching subgradients of all grid mixtures are checked exactly.

    :return: 'certified' or 'dictionary-exhaustive'
    '''
    if not region.is_ball:
        if alpha > values.lower_ceiling + tol:
            return 'certified'
        if mode is WitnessMode.SUBGRADIENT and problem.grid.dimension == 1:
            l_mixtures = [problem.mixture(i_w) for i_w in problem.simplex_grid()]
            if ip_no_witness_certificate_pairs(l_mixtures, alpha, tol):
                return 'certified'
    return 'dictionary-exhaustive'
