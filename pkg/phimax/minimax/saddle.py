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
Saddle problems over a box times a probability simplex of labels, and their iterated values.

A problem stores one table ``a(., y_i)`` per label; a point ``t`` of the simplex stands for
the mixture ``sum_i t_i a(., y_i)``, which is affine, hence concave, in ``t``.
'''

from __future__ import annotations
import dataclasses
import functools
import itertools
import logging
import math
import typing

import numpy

from phimax.common.errors import ConsistencyError, InputError, UnsupportedError
from phimax.convexity.core import DEFAULT_TOLERANCE, GridSpec, SampledFunction, Vector

_LOG = logging.getLogger(__name__)

MAX_LABELS = 4
MIXTURE_STEP_TWO_LABELS = 0.01
MIXTURE_STEP_MANY_LABELS = 0.05

_BLOCK_ENTRIES = 1 << 22


def _simplex_counts(labels: int, divisions: int) -> numpy.ndarray:
    '''Integer compositions of ``divisions`` into ``labels`` parts, vertices first.'''
    l_vertices = [tuple(divisions if i_j == i_i else 0 for i_j in range(labels)) for i_i in range(labels)]
    l_rest = [
        i_head + (divisions - sum(i_head),)
        for i_head in itertools.product(range(divisions + 1), repeat=labels - 1)
        if sum(i_head) <= divisions
    ]
    l_seen = set(l_vertices)
    return numpy.asarray(l_vertices + [i_c for i_c in l_rest if i_c not in l_seen], dtype=numpy.int64)


@dataclasses.dataclass(frozen=True, eq=False)
class SaddleProblem:
    '''
    Tables ``a(., y_i)`` for up to four labels on a shared grid, with the resolution of the
    simplex grid used for the sup-inf side.
    '''

    grid: GridSpec
    labels: typing.Tuple[str, ...]
    tables: typing.Tuple[SampledFunction, ...]
    mixture_step: float

    def __post_init__(self):
        object.__setattr__(self, 'labels', tuple(str(i_label) for i_label in self.labels))
        object.__setattr__(self, 'tables', tuple(self.tables))
        if not self.labels:
            raise InputError('saddle problem without labels')
        if len(self.labels) > MAX_LABELS:
            raise UnsupportedError(f'{len(self.labels)} labels, at most {MAX_LABELS} are supported')
        if len(set(self.labels)) != len(self.labels):
            raise InputError(f'duplicate labels in {list(self.labels)}')
        if len(self.tables) != len(self.labels):
            raise InputError(f'{len(self.labels)} labels but {len(self.tables)} tables')
        for i_label, i_table in zip(self.labels, self.tables):
            if i_table.grid != self.grid:
                raise InputError(f'table of label {i_label} lives on another grid')
        self._check_step(self.mixture_step)
        object.__setattr__(self, 'mixture_step', float(self.mixture_step))

    @staticmethod
    def _check_step(step: float) -> int:
        '''
        :return: number of simplex divisions, 1 / step
        '''
        if not math.isfinite(step) or step <= 0 or step > 1:
            raise InputError(f'mixture step must lie in (0, 1], got {step}')
        l_divisions = 1.0 / step
        if abs(l_divisions - round(l_divisions)) > 1e-9 * l_divisions:
            raise InputError(f'mixture step {step} does not divide 1')
        return int(round(l_divisions))

    @staticmethod
    def from_tables(labels: typing.Sequence[str], tables: typing.Sequence[SampledFunction],
                    mixture_step: typing.Optional[float] = None) -> SaddleProblem:
        '''
        Build a problem; the mixture step defaults to 0.01 for up to two labels and 0.05 above.
        '''
        if not tables:
            raise InputError('saddle problem without tables')
        if mixture_step is None:
            mixture_step = MIXTURE_STEP_TWO_LABELS if len(tables) <= 2 else MIXTURE_STEP_MANY_LABELS
        return SaddleProblem(tables[0].grid, tuple(labels), tuple(tables), mixture_step)

    @property
    def size(self) -> int:
        '''
        :return: number of labels
        '''
        return len(self.labels)

    @functools.cached_property
    def stacked(self) -> numpy.ndarray:
        '''
        :return: (labels, grid size) array of the tables in flat grid order
        '''
        l_stacked = numpy.stack([i_table.flat for i_table in self.tables])
        l_stacked.setflags(write=False)
        return l_stacked

    def simplex_grid(self, step: typing.Optional[float] = None) -> numpy.ndarray:
        '''
        Points of the simplex grid, vertices first in label order, then the remaining
        points in lexicographic order of their weights.

        :param step: resolution, defaults to the problem's mixture step
        :return: (count, labels) array of weights
        '''
        l_divisions = self._check_step(self.mixture_step if step is None else step)
        return _simplex_counts(self.size, l_divisions) / float(l_divisions)

    def mixture_values(self, weights: numpy.ndarray) -> numpy.ndarray:
        '''
        Mixture tables for many weight vectors. Labels with weight zero do not contribute,
        so their +inf values are ignored.

        :param weights: (count, labels) weights
        :return: (count, grid size) values
        '''
        l_weights = numpy.atleast_2d(numpy.asarray(weights, dtype=numpy.float64))
        if l_weights.shape[1] != self.size:
            raise InputError(f'weights of length {l_weights.shape[1]} for {self.size} labels')
        l_infinite = ~numpy.isfinite(self.stacked)
        l_finite = numpy.where(l_infinite, 0.0, self.stacked)
        l_values = l_weights @ l_finite
        l_values[((l_weights > 0).astype(numpy.float64) @ l_infinite) > 0] = numpy.inf
        return l_values

    def mixture(self, weights) -> SampledFunction:
        '''
        :param weights: point of the simplex
        :return: the mixture table
        '''
        l_weights = numpy.asarray(weights, dtype=numpy.float64).reshape(-1)
        if l_weights.shape != (self.size,):
            raise InputError(f'weights of length {l_weights.size} for {self.size} labels')
        if numpy.any(l_weights < 0) or abs(float(l_weights.sum()) - 1.0) > 1e-9:
            raise InputError(f'{l_weights.tolist()} is not a point of the simplex')
        return SampledFunction(self.grid, self.mixture_values(l_weights[numpy.newaxis, :])[0])

    def label_of(self, weights) -> str:
        '''
        :return: label name for a vertex, ``w1*y1+w2*y2`` for other mixtures
        '''
        l_weights = numpy.asarray(weights, dtype=numpy.float64).reshape(-1)
        l_support = numpy.flatnonzero(l_weights > 0)
        if l_support.size == 1:
            return self.labels[int(l_support[0])]
        return '+'.join(f'{float(l_weights[i_i])!r}*{self.labels[i_i]}' for i_i in l_support)

    def inner_infima(self, weights: numpy.ndarray) -> typing.Tuple[numpy.ndarray, numpy.ndarray]:
        '''
        ``inf_x`` of the mixture for many weight vectors.

        :return: (infima, flat argmin indices)
        '''
        l_weights = numpy.atleast_2d(numpy.asarray(weights, dtype=numpy.float64))
        l_infima = numpy.empty(l_weights.shape[0])
        l_argmin = numpy.empty(l_weights.shape[0], dtype=numpy.intp)
        l_rows = max(1, _BLOCK_ENTRIES // self.grid.size)
        for i_start in range(0, l_weights.shape[0], l_rows):
            l_values = self.mixture_values(l_weights[i_start:i_start + l_rows])
            l_argmin[i_start:i_start + l_rows] = numpy.argmin(l_values, axis=1)
            l_infima[i_start:i_start + l_rows] = l_values.min(axis=1)
        return l_infima, l_argmin


@dataclasses.dataclass(frozen=True, eq=False)
class SaddleValues:
    '''
    Both iterated values of a saddle problem.

    ``lower`` is the sup over the simplex grid of the exact inf over the x-grid,
    ``upper`` the exact inf over the x-grid of the max over labels. ``lower_slack`` bounds how
    far the sup over the whole simplex can exceed ``lower``; ``refinement_delta`` is the
    change of ``lower`` at half the mixture step.
    '''

    lower: float
    upper: float
    gap: float
    lower_weights: Vector
    upper_point: Vector
    mixture_step: float
    lower_slack: float
    refinement_delta: typing.Optional[float] = None

    @property
    def lower_ceiling(self) -> float:
        '''
        :return: upper bound on the sup-inf over the whole simplex
        '''
        return self.lower + self.lower_slack


def _lower_slack(problem: SaddleProblem, step: float) -> float:
    '''
    Lipschitz bound on the sup-inf between simplex grid points: the mixture infimum is
    Lipschitz in the weights with the pointwise spread of the tables.
    '''
    if problem.size == 1:
        return 0.0
    if not numpy.all(numpy.isfinite(problem.stacked)):
        return math.inf
    l_spread = float(numpy.max(problem.stacked.max(axis=0) - problem.stacked.min(axis=0)))
    if problem.size == 2:
        return 0.5 * step * l_spread
    return 0.5 * problem.size * step * l_spread


def _lower_value(problem: SaddleProblem, step: float) -> typing.Tuple[float, Vector]:
    l_weights = problem.simplex_grid(step)
    l_infima, _ = problem.inner_infima(l_weights)
    l_best = int(numpy.argmax(l_infima))
    return float(l_infima[l_best]), l_weights[l_best]


def saddle_values(problem: SaddleProblem, refine: bool = True, tol: float = DEFAULT_TOLERANCE) -> SaddleValues:
    '''
    Compute sup-inf and inf-sup.

    :param problem: saddle problem
    :param refine: also evaluate the sup-inf at half the mixture step
    :param tol: weak duality tolerance
    :return: SaddleValues
    '''
    l_lower, l_weights = _lower_value(problem, problem.mixture_step)

    l_maxima = problem.stacked.max(axis=0)
    l_upper_index = int(numpy.argmin(l_maxima))
    l_upper = float(l_maxima[l_upper_index])

    if l_lower > l_upper + tol:
        raise ConsistencyError(f'sup-inf {l_lower!r} exceeds inf-sup {l_upper!r}')
    l_gap = 0.0 if l_lower == l_upper else l_upper - l_lower

    l_delta = None
    if refine and problem.size > 1:
        l_divisions = int(round(1.0 / problem.mixture_step))
        l_delta = _lower_value(problem, 1.0 / (2 * l_divisions))[0] - l_lower

    _LOG.debug('saddle values: lower %r, upper %r, refinement %r', l_lower, l_upper, l_delta)
    return SaddleValues(
        lower=l_lower,
        upper=l_upper,
        gap=l_gap,
        lower_weights=l_weights,
        upper_point=problem.grid.point(l_upper_index),
        mixture_step=problem.mixture_step,
        lower_slack=_lower_slack(problem, problem.mixture_step),
        refinement_delta=l_delta
    )


def concavity_in_y_check(problem: SaddleProblem) -> bool:
    '''
    Check that the mixture extension is affine in the weights: the vertices reproduce the
    tables exactly and midpoints of vertex pairs average them.

    :return: True for every problem built through SaddleProblem
    '''
    l_vertices = numpy.eye(problem.size)
    if not numpy.array_equal(problem.mixture_values(l_vertices), problem.stacked):
        return False
    for i_first, i_second in itertools.combinations(range(problem.size), 2):
        l_mid = problem.mixture_values(0.5 * (l_vertices[i_first] + l_vertices[i_second]))[0]
        l_average = 0.5 * (problem.stacked[i_first] + problem.stacked[i_second])
        l_finite = numpy.isfinite(l_average)
        if not numpy.array_equal(numpy.isfinite(l_mid), l_finite) \
                or not numpy.allclose(l_mid[l_finite], l_average[l_finite], rtol=1e-12, atol=1e-12):
            return False
    return True
