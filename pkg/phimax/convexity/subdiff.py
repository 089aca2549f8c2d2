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
Phi-subdifferentials and epsilon-subdifferentials of sampled functions.

A minorant ``phi`` is an epsilon-subgradient of ``f`` at ``x_bar`` when
``phi(x) - phi(x_bar) - eps <= f(x) - f(x_bar)`` on the whole grid. The condition only sees
``phi`` up to an additive constant; its canonical representative is ``phi`` shifted so that
``f(x_bar) = phi(x_bar) + eps``, and membership is equivalent to that representative lying
in the support set of ``f``.
'''

from __future__ import annotations
import dataclasses
import functools
import logging
import math
import typing

import numpy
import scipy.spatial

from phimax.common.errors import ConsistencyError, InputError, PreconditionError
from phimax.convexity.core import (
    DEFAULT_TOLERANCE, QuadMinorant, SampledFunction, Vector, as_vector, eval_minorant, shift,
    support_membership
)
from phimax.convexity.support import MinorantDictionary, profile_blocks

_LOG = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, eq=False)
class SubdiffQuery:
    '''
    Point query ``(f, x_bar, eps)``; x_bar must be a grid point of dom(f).
    '''

    f: SampledFunction
    x_bar: Vector
    epsilon: float = 0.0
    tol: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        l_index = self.f.grid.index_of(as_vector(self.x_bar, self.f.dimension))
        if not math.isfinite(self.epsilon) or self.epsilon < 0:
            raise InputError(f'epsilon must be finite and nonnegative, got {self.epsilon}')
        if not self.tol >= 0:
            raise InputError(f'tolerance must be nonnegative, got {self.tol}')
        if not math.isfinite(self.f.flat[l_index]):
            raise InputError(f'{self.f.grid.point(l_index).tolist()} is not in the domain of f')
        object.__setattr__(self, 'x_bar', self.f.grid.point(l_index))
        object.__setattr__(self, 'epsilon', float(self.epsilon))

    @functools.cached_property
    def index(self) -> int:
        '''
        :return: flat grid index of x_bar
        '''
        return self.f.grid.index_of(self.x_bar)

    @property
    def value(self) -> float:
        '''
        :return: f(x_bar)
        '''
        return float(self.f.flat[self.index])


def canonical_representative(query: SubdiffQuery, phi: QuadMinorant) -> QuadMinorant:
    '''
    :return: phi shifted so that f(x_bar) = phi(x_bar) + eps
    '''
    return shift(phi, query.value - eval_minorant(phi, query.x_bar) - query.epsilon)


def definitional_residual(query: SubdiffQuery, phi: QuadMinorant) -> float:
    '''
    :return: max over the grid of phi(x) - phi(x_bar) - eps - f(x) + f(x_bar); -inf off dom(f)
    '''
    if phi.dimension != query.f.dimension:
        raise InputError(f'minorant dimension {phi.dimension} does not match function dimension {query.f.dimension}')
    l_lhs = eval_minorant(phi, query.f.grid.points) - eval_minorant(phi, query.x_bar) - query.epsilon
    return float(numpy.max(l_lhs - (query.f.flat - query.value)))


def subdiff_membership(query: SubdiffQuery, phi: QuadMinorant) -> bool:
    '''
    Decide ``phi`` in the epsilon-subdifferential of f at x_bar.

    The subgradient inequality is evaluated on phi, the support-set characterisation on its
    canonical representative; if they disagree by more than tol a ConsistencyError is raised.
    Both only see phi up to an additive constant, see :func:`is_touching` for its position.

    :param query: point query
    :param phi: minorant
    :return: membership according to the characterisation
    '''
    l_residual = definitional_residual(query, phi)
    l_report = support_membership(query.f, canonical_representative(query, phi), query.tol)

    # the residual equals -min_slack of the canonical representative
    if (l_residual <= query.tol) != l_report.member and abs(l_residual + l_report.min_slack) > query.tol:
        raise ConsistencyError(
            f'subgradient inequality (residual {l_residual!r}) and support characterisation '
            f'(slack {l_report.min_slack!r}) disagree for {phi} at {query.x_bar.tolist()}'
        )
    return l_report.member


def is_touching(query: SubdiffQuery, phi: QuadMinorant) -> bool:
    '''
    :return: True if ``0 <= f(x_bar) - phi(x_bar) <= eps`` up to tol, i.e. phi itself and not
        only a shift of it passes within eps of f at x_bar
    '''
    l_gap = query.value - eval_minorant(phi, query.x_bar)
    return -query.tol <= l_gap <= query.epsilon + query.tol


def is_subgradient(query: SubdiffQuery, phi: QuadMinorant) -> bool:
    '''
    :return: membership of phi in the epsilon-subdifferential at x_bar with phi in position
    '''
    return subdiff_membership(query, phi) and is_touching(query, phi)


class EpsSubgradient(typing.NamedTuple):
    '''Construction of an epsilon-subgradient out of a support member.'''
    x1: Vector
    phi_bar: QuadMinorant
    c1: float


def eps_subgradient_from_support(f: SampledFunction, phi: QuadMinorant, epsilon: float,
                                 tol: float = DEFAULT_TOLERANCE) -> EpsSubgradient:
    '''
    Lift a support member to the touching position: with c1 the minimal slack and x1 its
    first minimiser, ``phi + c1`` is an epsilon-subgradient of f at x1 for every eps > 0.

    :param f: sampled function
    :param phi: support member of f
    :param epsilon: positive epsilon
    :param tol: membership tolerance
    :return: EpsSubgradient(x1, phi_bar, c1)
    '''
    if not math.isfinite(epsilon) or epsilon <= 0:
        raise PreconditionError(f'epsilon must be positive, got {epsilon}')
    l_report = support_membership(f, phi, tol)
    if not l_report.member:
        raise PreconditionError(f'{phi} is not a support member (slack {l_report.min_slack!r})')
    l_phi_bar = shift(phi, l_report.min_slack)
    if not is_subgradient(SubdiffQuery(f, l_report.argmin, epsilon, tol), l_phi_bar):
        raise ConsistencyError(f'lifted minorant {l_phi_bar} fails epsilon-membership at {l_report.argmin.tolist()}')
    return EpsSubgradient(l_report.argmin, l_phi_bar, l_report.min_slack)


def subgradient_search(f: SampledFunction, x_bar, dictionary: MinorantDictionary,
                       tol: float = DEFAULT_TOLERANCE) -> typing.List[QuadMinorant]:
    '''
    All dictionary shapes whose minorant touching f at x_bar is a support member, i.e. the
    dictionary part of the subdifferential at x_bar, in dictionary order.

    :param f: sampled function
    :param x_bar: grid point of dom(f)
    :param dictionary: minorant dictionary
    :param tol: membership tolerance
    :return: list of exact subgradients
    '''
    l_query = SubdiffQuery(f, x_bar, 0.0, tol)
    if dictionary.dimension != f.dimension:
        raise InputError(f'dictionary dimension {dictionary.dimension} does not match function dimension {f.dimension}')
    l_slopes = dictionary.slope_array
    l_found = []
    for i_a in dictionary.curvatures:
        for i_slice, i_block in profile_blocks(f, i_a, l_slopes):
            # the touching offset is c = W(x_bar) = f(x_bar) + a|x_bar|^2 - <l, x_bar>
            l_at = i_block[:, l_query.index]
            l_rows = numpy.flatnonzero(l_at <= i_block.min(axis=1) + tol)
            for i_row in l_rows:
                l_found.append(QuadMinorant(i_a, dictionary.slopes[i_slice.start + i_row], float(l_at[i_row])))
    _LOG.debug('%d dictionary subgradients at %s', len(l_found), l_query.x_bar.tolist())
    return l_found


def subdiff_domain(f: SampledFunction, dictionary: MinorantDictionary,
                   tol: float = DEFAULT_TOLERANCE) -> numpy.ndarray:
    '''
    Grid points of dom(f) where some dictionary minorant is an exact subgradient.

    :return: (count, n) array of points in grid order
    '''
    if dictionary.dimension != f.dimension:
        raise InputError(f'dictionary dimension {dictionary.dimension} does not match function dimension {f.dimension}')
    l_mask = numpy.zeros(f.grid.size, dtype=bool)
    l_slopes = dictionary.slope_array
    for i_a in dictionary.curvatures:
        for _, i_block in profile_blocks(f, i_a, l_slopes):
            l_mask |= numpy.any(i_block <= i_block.min(axis=1, keepdims=True) + tol, axis=0)
    l_mask &= f.domain_mask
    return f.grid.points[l_mask]


def density_radius(f: SampledFunction, dictionary: MinorantDictionary,
                   tol: float = DEFAULT_TOLERANCE) -> float:
    '''
    Largest distance from a point of dom(f) to the subdifferentiability domain.

    :return: radius, +inf if no point is subdifferentiable
    '''
    l_domain = subdiff_domain(f, dictionary, tol)
    if not l_domain.shape[0]:
        return math.inf
    l_distances, _ = scipy.spatial.cKDTree(l_domain).query(f.grid.points[f.domain_mask])
    return float(numpy.max(l_distances))
