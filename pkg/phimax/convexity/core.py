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
Value types of the toolkit: grids over a box, sampled extended-real functions on those grids,
quadratic minorants ``-a|x|^2 + <l, x> + c`` and support-set membership.

The box is the whole space as far as sampled functions are concerned: a function is ``+inf``
everywhere outside its box. ``+inf`` is IEEE infinity inside arrays and never a large float.
'''

from __future__ import annotations
import dataclasses
import functools
import math
import typing

import numpy
import numpy.typing

from phimax.common.errors import InputError, UnsupportedError

Vector = numpy.typing.NDArray[numpy.float64]

MAX_DIMENSION = 6
DEFAULT_TOLERANCE = 1e-9


def as_vector(coords, dimension: typing.Optional[int] = None) -> Vector:
    '''
    Validate coordinates and return them as a read-only float64 vector.

    :param coords: scalar or sequence of coordinates
    :param dimension: required length, if any
    :return: vector
    '''
    try:
        l_vector = numpy.array(numpy.atleast_1d(coords), dtype=numpy.float64)
    except (TypeError, ValueError) as error:
        raise InputError(f'cannot interpret {coords!r} as a vector: {error}') from error
    if l_vector.ndim != 1:
        raise InputError(f'expected a flat vector, got shape {l_vector.shape}')
    if l_vector.size > MAX_DIMENSION:
        raise UnsupportedError(f'dimension {l_vector.size} exceeds {MAX_DIMENSION}')
    if l_vector.size < 1:
        raise InputError('empty vector')
    if dimension is not None and l_vector.size != dimension:
        raise InputError(f'expected dimension {dimension}, got {l_vector.size}')
    if not numpy.all(numpy.isfinite(l_vector)):
        raise InputError(f'vector {l_vector.tolist()} has non-finite entries')
    l_vector.setflags(write=False)
    return l_vector


@dataclasses.dataclass(frozen=True)
class ExtReal:
    '''
    Extended real in ``(-inf, +inf]``: a finite float or the tag ``+inf``.
    '''

    value: float
    __slots__ = ('value',)

    def __post_init__(self):
        l_value = float(self.value)
        if math.isnan(l_value) or l_value == -math.inf:
            raise InputError(f'{self.value!r} is not an admissible extended real')
        object.__setattr__(self, 'value', l_value)

    @property
    def is_finite(self) -> bool:
        '''
        :return: False for +inf
        '''
        return math.isfinite(self.value)

    def __float__(self):
        return self.value

    def __str__(self):
        return '+inf' if not self.is_finite else repr(self.value)


PLUS_INFINITY = ExtReal(math.inf)


@dataclasses.dataclass(frozen=True)
class GridSpec:
    '''
    Regular grid over the box ``[low, high]`` with spacing ``step`` on every axis, endpoints
    included. Flat point order is C order over the axes, i.e. lexicographic in the
    coordinates, which makes first-occurrence argmins the lexicographic tie-break.
    '''

    low: typing.Tuple[float, ...]
    high: typing.Tuple[float, ...]
    step: float

    def __post_init__(self):
        l_low = tuple(float(i_v) for i_v in numpy.atleast_1d(self.low))
        l_high = tuple(float(i_v) for i_v in numpy.atleast_1d(self.high))
        l_step = float(self.step)
        if len(l_low) != len(l_high):
            raise InputError(f'box bounds differ in dimension: {len(l_low)} vs {len(l_high)}')
        if len(l_low) > MAX_DIMENSION:
            raise UnsupportedError(f'dimension {len(l_low)} exceeds {MAX_DIMENSION}')
        if not l_low:
            raise InputError('box of dimension zero')
        if not all(math.isfinite(i_v) for i_v in l_low + l_high + (l_step,)):
            raise InputError('box bounds and step must be finite')
        if l_step <= 0:
            raise InputError(f'grid step must be positive, got {l_step}')
        for i_low, i_high in zip(l_low, l_high):
            if i_low >= i_high:
                raise InputError(f'empty box side [{i_low}, {i_high}]')
            l_cells = (i_high - i_low) / l_step
            if abs(l_cells - round(l_cells)) > 1e-9 * max(1.0, l_cells):
                raise InputError(f'side [{i_low}, {i_high}] is not a multiple of step {l_step}')
        object.__setattr__(self, 'low', l_low)
        object.__setattr__(self, 'high', l_high)
        object.__setattr__(self, 'step', l_step)

    @staticmethod
    def cube(low: float, high: float, step: float, dimension: int = 1) -> GridSpec:
        '''
        Grid over ``[low, high]^dimension``.
        '''
        return GridSpec((low,) * dimension, (high,) * dimension, step)

    @property
    def dimension(self) -> int:
        '''
        :return: number of coordinates
        '''
        return len(self.low)

    @functools.cached_property
    def shape(self) -> typing.Tuple[int, ...]:
        '''
        :return: number of grid points per axis
        '''
        return tuple(int(round((i_high - i_low) / self.step)) + 1 for i_low, i_high in zip(self.low, self.high))

    @property
    def size(self) -> int:
        '''
        :return: total number of grid points
        '''
        return int(numpy.prod(self.shape))

    @functools.cached_property
    def axes(self) -> typing.Tuple[Vector, ...]:
        '''
        :return: coordinates per axis
        '''
        return tuple(
            numpy.linspace(i_low, i_high, i_count)
            for i_low, i_high, i_count in zip(self.low, self.high, self.shape)
        )

    @functools.cached_property
    def points(self) -> numpy.ndarray:
        '''
        :return: (size, dimension) array of grid points in flat order
        '''
        l_mesh = numpy.meshgrid(*self.axes, indexing='ij')
        l_points = numpy.stack([i_axis.reshape(-1) for i_axis in l_mesh], axis=1)
        l_points.setflags(write=False)
        return l_points

    @functools.cached_property
    def squared_norms(self) -> numpy.ndarray:
        '''
        :return: |x|^2 for every grid point
        '''
        l_norms = numpy.einsum('ij,ij->i', self.points, self.points)
        l_norms.setflags(write=False)
        return l_norms

    @functools.cached_property
    def interior_mask(self) -> numpy.ndarray:
        '''
        :return: boolean mask of grid points not lying on the boundary of the box
        '''
        l_index = numpy.indices(self.shape).reshape(self.dimension, -1)
        l_counts = numpy.asarray(self.shape).reshape(-1, 1)
        l_mask = numpy.all((l_index > 0) & (l_index < l_counts - 1), axis=0)
        l_mask.setflags(write=False)
        return l_mask

    def contains(self, x) -> bool:
        '''
        :return: True if x lies in the closed box
        '''
        l_x = as_vector(x, self.dimension)
        l_slack = 1e-12 * max(1.0, float(numpy.max(numpy.abs(l_x))))
        return bool(numpy.all(l_x >= numpy.asarray(self.low) - l_slack)
                    and numpy.all(l_x <= numpy.asarray(self.high) + l_slack))

    def index_of(self, x) -> int:
        '''
        Flat index of the grid point x.

        :param x: coordinates, must coincide with a grid point up to 1e-9 relative to step
        :return: flat index
        '''
        l_x = as_vector(x, self.dimension)
        l_index = []
        for i_axis, i_coord in enumerate(l_x):
            l_raw = (i_coord - self.low[i_axis]) / self.step
            l_rounded = int(round(l_raw))
            if abs(l_raw - l_rounded) > 1e-9 * max(1.0, abs(l_raw)) \
                    or not 0 <= l_rounded < self.shape[i_axis]:
                raise InputError(f'{l_x.tolist()} is not a grid point')
            l_index.append(l_rounded)
        return int(numpy.ravel_multi_index(tuple(l_index), self.shape))

    def point(self, index: int) -> Vector:
        '''
        :return: grid point with the given flat index
        '''
        l_point = numpy.array(self.points[int(index)], dtype=numpy.float64)
        l_point.setflags(write=False)
        return l_point


@dataclasses.dataclass(frozen=True, eq=False)
class SampledFunction:
    '''
    Extended-real function tabulated on a grid. Values are finite or ``+inf``; NaN and
    ``-inf`` are rejected, and at least one value must be finite (properness).
    '''

    grid: GridSpec
    values: numpy.ndarray

    def __post_init__(self):
        l_values = numpy.array(self.values, dtype=numpy.float64)
        if l_values.shape == (self.grid.size,):
            l_values = l_values.reshape(self.grid.shape)
        if l_values.shape != self.grid.shape:
            raise InputError(f'values of shape {l_values.shape} do not match grid shape {self.grid.shape}')
        if numpy.any(numpy.isnan(l_values)):
            raise InputError('sampled function has NaN values')
        if numpy.any(l_values == -numpy.inf):
            raise InputError('sampled function takes the value -inf')
        if not numpy.any(numpy.isfinite(l_values)):
            raise InputError('sampled function is +inf everywhere (improper)')
        l_values.setflags(write=False)
        object.__setattr__(self, 'values', l_values)

    @staticmethod
    def from_callable(grid: GridSpec, func: typing.Callable[[numpy.ndarray], numpy.ndarray]) -> SampledFunction:
        '''
        Sample func on every grid point.

        :param grid: grid
        :param func: maps a (size, dimension) array of points to (size,) values
        :return: SampledFunction
        '''
        return SampledFunction(grid, numpy.broadcast_to(func(grid.points), (grid.size,)))

    @property
    def dimension(self) -> int:
        '''
        :return: dimension of the underlying grid
        '''
        return self.grid.dimension

    @property
    def flat(self) -> numpy.ndarray:
        '''
        :return: values in flat grid order
        '''
        return self.values.reshape(-1)

    @property
    def domain_mask(self) -> numpy.ndarray:
        '''
        :return: mask of grid points where the function is finite
        '''
        return numpy.isfinite(self.flat)

    def with_values(self, values) -> SampledFunction:
        '''
        :return: function on the same grid with other values
        '''
        return SampledFunction(self.grid, values)

    def value_at(self, x) -> float:
        '''
        Value at a grid point, ``+inf`` outside the box.
        '''
        if not self.grid.contains(x):
            return math.inf
        return float(self.flat[self.grid.index_of(x)])

    def minimum(self) -> typing.Tuple[float, int]:
        '''
        :return: minimal value and the flat index of its first occurrence
        '''
        l_index = int(numpy.argmin(self.flat))
        return float(self.flat[l_index]), l_index

    def lipschitz_estimate(self) -> float:
        '''
        Largest absolute difference quotient between finite neighbours along the axes.
        '''
        l_estimate = 0.0
        for i_axis in range(self.dimension):
            l_diff = numpy.abs(numpy.diff(self.values, axis=i_axis))
            l_diff = l_diff[numpy.isfinite(l_diff)]
            if l_diff.size:
                l_estimate = max(l_estimate, float(l_diff.max()) / self.grid.step)
        return l_estimate


@dataclasses.dataclass(frozen=True)
class QuadMinorant:
    '''
    Member ``phi(x) = -a|x|^2 + <l, x> + c`` of the lsc minorant class, ``a >= 0``.
    ``a == 0`` gives the affine class.
    '''

    a: float
    l: typing.Tuple[float, ...]
    c: float

    def __post_init__(self):
        l_slope = tuple(float(i_v) for i_v in numpy.atleast_1d(self.l))
        l_a = float(self.a)
        l_c = float(self.c)
        if not math.isfinite(l_a) or l_a < 0:
            raise InputError(f'curvature must be finite and nonnegative, got {self.a}')
        if not math.isfinite(l_c):
            raise InputError(f'offset must be finite, got {self.c}')
        if not l_slope or not all(math.isfinite(i_v) for i_v in l_slope):
            raise InputError(f'slope {self.l} must be a nonempty finite vector')
        if len(l_slope) > MAX_DIMENSION:
            raise UnsupportedError(f'dimension {len(l_slope)} exceeds {MAX_DIMENSION}')
        object.__setattr__(self, 'a', l_a + 0.0)
        object.__setattr__(self, 'l', tuple(i_v + 0.0 for i_v in l_slope))
        object.__setattr__(self, 'c', l_c + 0.0)

    @staticmethod
    def parse(text: str) -> QuadMinorant:
        '''
        Parse flag syntax ``a,l1[,l2,...],c``.
        '''
        try:
            l_values = [float(i_part) for i_part in str(text).split(',')]
        except ValueError as error:
            raise InputError(f'cannot parse minorant "{text}": {error}') from error
        if len(l_values) < 3:
            raise InputError(f'minorant "{text}" needs at least a, one slope entry and c')
        return QuadMinorant(l_values[0], tuple(l_values[1:-1]), l_values[-1])

    @staticmethod
    def constant(value: float, dimension: int) -> QuadMinorant:
        '''
        :return: the constant minorant ``value``
        '''
        return QuadMinorant(0.0, (0.0,) * dimension, value)

    def __str__(self):
        return ','.join(repr(i_v) for i_v in (self.a,) + self.l + (self.c,))

    @property
    def dimension(self) -> int:
        '''
        :return: length of the slope
        '''
        return len(self.l)

    @property
    def slope(self) -> Vector:
        '''
        :return: slope as numpy vector
        '''
        return numpy.asarray(self.l, dtype=numpy.float64)

    @property
    def is_affine(self) -> bool:
        '''
        :return: True if the curvature vanishes
        '''
        return self.a == 0.0

    @property
    def is_constant(self) -> bool:
        '''
        :return: True if curvature and slope vanish
        '''
        return self.a == 0.0 and not any(self.l)

    def __call__(self, x):
        return eval_minorant(self, x)


def eval_minorant(phi: QuadMinorant, x) -> typing.Union[float, numpy.ndarray]:
    '''
    Evaluate phi at a point (returns float) or at a (count, n) array of points.
    '''
    l_x = numpy.asarray(x, dtype=numpy.float64)
    if l_x.ndim == 0:
        l_x = l_x.reshape(1)
    if l_x.shape[-1] != phi.dimension:
        raise InputError(f'point dimension {l_x.shape[-1]} does not match minorant dimension {phi.dimension}')
    l_value = -phi.a * numpy.einsum('...i,...i->...', l_x, l_x) + l_x @ phi.slope + phi.c
    if l_x.ndim == 1:
        return float(l_value)
    return l_value


def shift(phi: QuadMinorant, delta: float) -> QuadMinorant:
    '''
    :return: phi + delta
    '''
    if not math.isfinite(delta):
        raise InputError(f'shift {delta} is not finite')
    return dataclasses.replace(phi, c=phi.c + delta)


@dataclasses.dataclass(frozen=True, eq=False)
class SupportReport:
    '''
    Result of :func:`support_membership`.
    '''

    member: bool
    min_slack: float
    argmin: Vector


def minorant_slack(f: SampledFunction, phi: QuadMinorant) -> numpy.ndarray:
    '''
    :return: f - phi at every grid point, +inf outside dom(f)
    '''
    if phi.dimension != f.dimension:
        raise InputError(f'minorant dimension {phi.dimension} does not match function dimension {f.dimension}')
    return f.flat - eval_minorant(phi, f.grid.points)


def support_membership(f: SampledFunction, phi: QuadMinorant, tol: float = DEFAULT_TOLERANCE) -> SupportReport:
    '''
    Decide whether phi lies below f on the whole grid, up to tol.

    :param f: sampled function
    :param phi: minorant candidate
    :param tol: nonnegative tolerance
    :return: SupportReport with the minimal slack f - phi and its first minimiser
    '''
    if not tol >= 0:
        raise InputError(f'tolerance must be nonnegative, got {tol}')
    l_slack = minorant_slack(f, phi)
    l_index = int(numpy.argmin(l_slack))
    l_min = float(l_slack[l_index])
    return SupportReport(member=l_min >= -tol, min_slack=l_min, argmin=f.grid.point(l_index))
