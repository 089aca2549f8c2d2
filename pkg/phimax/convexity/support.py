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
Minorant dictionaries, tight offsets and the Phi-convex envelope of sampled functions.

For a fixed curvature ``a`` every computation here reduces to the profile
``W(x) = f(x) + a|x|^2 - <l, x>``: its minimum is the tight offset of the slope ``l`` and
its minimisers are the touching points of the tight minorant.
'''

from __future__ import annotations
import dataclasses
import itertools
import logging
import math
import typing

import numpy

from phimax.common.errors import InputError
from phimax.convexity.core import (
    DEFAULT_TOLERANCE, ExtReal, PLUS_INFINITY, QuadMinorant, SampledFunction, Vector, as_vector,
    eval_minorant
)

_LOG = logging.getLogger(__name__)

DEFAULT_CURVATURES = tuple(0.25 * i for i in range(17))
DEFAULT_SLOPE_STEP = 0.25
DEFAULT_SLOPE_RADIUS = 4.0

# entries of one profile block, bounds peak memory of the vectorised kernels
_BLOCK_ENTRIES = 1 << 22


@dataclasses.dataclass(frozen=True)
class MinorantDictionary:
    '''
    Finite family of curvatures and slopes. Every pair (a, l) stands for the tight minorant
    ``-a|x|^2 + <l, x> + c*(a, l)``. Both the zero curvature and the zero slope are required,
    so constants and affine functions are always represented.
    '''

    curvatures: typing.Tuple[float, ...]
    slopes: typing.Tuple[typing.Tuple[float, ...], ...]

    def __post_init__(self):
        l_curvatures = tuple(sorted({float(i_a) + 0.0 for i_a in self.curvatures}))
        l_slopes = tuple(tuple(float(i_v) + 0.0 for i_v in numpy.atleast_1d(i_l)) for i_l in self.slopes)
        if not l_curvatures or not l_slopes:
            raise InputError('dictionary needs at least one curvature and one slope')
        if any(not math.isfinite(i_a) or i_a < 0 for i_a in l_curvatures):
            raise InputError('dictionary curvatures must be finite and nonnegative')
        if l_curvatures[0] != 0.0:
            raise InputError('dictionary must contain curvature 0')
        l_dimension = len(l_slopes[0])
        if any(len(i_l) != l_dimension for i_l in l_slopes):
            raise InputError('dictionary slopes differ in dimension')
        if any(not math.isfinite(i_v) for i_l in l_slopes for i_v in i_l):
            raise InputError('dictionary slopes must be finite')
        if (0.0,) * l_dimension not in l_slopes:
            raise InputError('dictionary must contain the zero slope')
        object.__setattr__(self, 'curvatures', l_curvatures)
        object.__setattr__(self, 'slopes', tuple(dict.fromkeys(l_slopes)))

    @staticmethod
    def lattice(dimension: int,
                slope_step: float = DEFAULT_SLOPE_STEP,
                slope_radius: float = DEFAULT_SLOPE_RADIUS,
                curvatures: typing.Iterable[float] = DEFAULT_CURVATURES) -> MinorantDictionary:
        '''
        Slopes on the lattice ``slope_step * Z^n`` inside the cube of the given radius.

        :param dimension: n
        :param slope_step: lattice spacing
        :param slope_radius: largest absolute slope entry
        :param curvatures: curvature values, 0 is added if missing
        :return: MinorantDictionary
        '''
        if slope_step <= 0 or slope_radius < 0:
            raise InputError('slope step must be positive and slope radius nonnegative')
        l_count = int(math.floor(slope_radius / slope_step + 1e-9))
        l_axis = tuple(float(i_k * slope_step) for i_k in range(-l_count, l_count + 1))
        return MinorantDictionary(
            curvatures=tuple(curvatures) + (0.0,),
            slopes=tuple(itertools.product(l_axis, repeat=dimension))
        )

    @staticmethod
    def default_for(f: SampledFunction,
                    slope_step: float = DEFAULT_SLOPE_STEP,
                    slope_radius: float = DEFAULT_SLOPE_RADIUS,
                    curvatures: typing.Iterable[float] = DEFAULT_CURVATURES) -> MinorantDictionary:
        '''
        Lattice dictionary sized for f: the slope radius follows the grid Lipschitz estimate
        of f, capped at slope_radius. From dimension 3 on the lattice is coarsened to keep
        the slope count manageable.
        '''
        if f.dimension >= 3:
            slope_step = max(slope_step, 0.5)
            slope_radius = min(slope_radius, 2.0)
        l_radius = min(slope_radius, slope_step * max(1.0, math.ceil(f.lipschitz_estimate() / slope_step)))
        return MinorantDictionary.lattice(f.dimension, slope_step, l_radius, curvatures)

    @property
    def dimension(self) -> int:
        '''
        :return: slope dimension
        '''
        return len(self.slopes[0])

    @property
    def slope_array(self) -> numpy.ndarray:
        '''
        :return: (count, n) array of slopes in dictionary order
        '''
        return numpy.asarray(self.slopes, dtype=numpy.float64)

    def __len__(self):
        return len(self.curvatures) * len(self.slopes)


class TightOffset(typing.NamedTuple):
    '''Largest admissible offset of a minorant shape and its first touching point.'''
    c_star: ExtReal
    argmin: typing.Optional[Vector]


def profile_blocks(f: SampledFunction, a: float, slopes: numpy.ndarray) \
        -> typing.Iterator[typing.Tuple[slice, numpy.ndarray]]:
    '''
    Yield blocks of the profiles ``W_l(x) = f(x) + a|x|^2 - <l, x>``, one row per slope.

    :param f: sampled function
    :param a: curvature
    :param slopes: (count, n) slopes
    :return: iterator of (slice into slopes, (rows, size) profile block)
    '''
    l_slopes = numpy.atleast_2d(numpy.asarray(slopes, dtype=numpy.float64))
    if l_slopes.shape[1] != f.dimension:
        raise InputError(f'slope dimension {l_slopes.shape[1]} does not match function dimension {f.dimension}')
    l_base = f.flat + a * f.grid.squared_norms
    l_rows = max(1, _BLOCK_ENTRIES // f.grid.size)
    for i_start in range(0, l_slopes.shape[0], l_rows):
        l_slice = slice(i_start, min(i_start + l_rows, l_slopes.shape[0]))
        yield l_slice, l_base[numpy.newaxis, :] - l_slopes[l_slice] @ f.grid.points.T


def offset_table(f: SampledFunction, a: float, slopes: numpy.ndarray) -> typing.Tuple[numpy.ndarray, numpy.ndarray]:
    '''
    Tight offsets for many slopes at one curvature.

    :return: (offsets, flat argmin indices); offsets are finite because f is proper
    '''
    l_slopes = numpy.atleast_2d(numpy.asarray(slopes, dtype=numpy.float64))
    l_offsets = numpy.empty(l_slopes.shape[0])
    l_argmin = numpy.empty(l_slopes.shape[0], dtype=numpy.intp)
    for i_slice, i_block in profile_blocks(f, a, l_slopes):
        l_argmin[i_slice] = numpy.argmin(i_block, axis=1)
        l_offsets[i_slice] = i_block[numpy.arange(i_block.shape[0]), l_argmin[i_slice]]
    return l_offsets, l_argmin


def tight_offset(f: SampledFunction, a: float, l) -> TightOffset:
    '''
    Largest c with ``-a|x|^2 + <l, x> + c <= f`` on the grid.

    :param f: sampled function
    :param a: curvature, nonnegative
    :param l: slope
    :return: TightOffset, +inf with no touching point if no constraint binds
    '''
    if not math.isfinite(a) or a < 0:
        raise InputError(f'curvature must be finite and nonnegative, got {a}')
    l_offsets, l_argmin = offset_table(f, a, as_vector(l, f.dimension)[numpy.newaxis, :])
    if not math.isfinite(l_offsets[0]):
        return TightOffset(PLUS_INFINITY, None)
    return TightOffset(ExtReal(float(l_offsets[0])), f.grid.point(int(l_argmin[0])))


def tight_minorants(f: SampledFunction, dictionary: MinorantDictionary) -> typing.Iterator[QuadMinorant]:
    '''
    :return: the tight minorant of every dictionary entry, curvature major order
    '''
    l_slopes = dictionary.slope_array
    for i_a in dictionary.curvatures:
        l_offsets, _ = offset_table(f, i_a, l_slopes)
        for i_slope, i_offset in zip(dictionary.slopes, l_offsets):
            yield QuadMinorant(i_a, i_slope, float(i_offset))


def envelope(f: SampledFunction, dictionary: MinorantDictionary) -> SampledFunction:
    '''
    Pointwise maximum of all tight dictionary minorants, clipped at f against rounding.

    :param f: sampled function
    :param dictionary: minorant dictionary of matching dimension
    :return: envelope, finite on the whole grid
    '''
    if dictionary.dimension != f.dimension:
        raise InputError(f'dictionary dimension {dictionary.dimension} does not match function dimension {f.dimension}')
    l_points = f.grid.points
    l_slopes = dictionary.slope_array
    l_envelope = numpy.full(f.grid.size, -numpy.inf)
    for i_a in dictionary.curvatures:
        l_offsets, _ = offset_table(f, i_a, l_slopes)
        l_rows = max(1, _BLOCK_ENTRIES // f.grid.size)
        for i_start in range(0, l_slopes.shape[0], l_rows):
            l_block = l_slopes[i_start:i_start + l_rows] @ l_points.T \
                - i_a * f.grid.squared_norms[numpy.newaxis, :] \
                + l_offsets[i_start:i_start + l_rows, numpy.newaxis]
            numpy.maximum(l_envelope, l_block.max(axis=0), out=l_envelope)
    _LOG.debug('envelope over %d dictionary entries on %d grid points', len(dictionary), f.grid.size)
    return f.with_values(numpy.minimum(l_envelope, f.flat))


def envelope_tolerance(f: SampledFunction) -> float:
    '''
    Grid-resolution tolerance for Phi-convexity: grid Lipschitz estimate times step.
    '''
    return max(DEFAULT_TOLERANCE, f.lipschitz_estimate() * f.grid.step)


def phi_convexity_gap(f: SampledFunction, dictionary: MinorantDictionary) -> float:
    '''
    Largest distance between f and its envelope over dom(f); 0 means f is Phi-convex with
    respect to the dictionary.
    '''
    l_envelope = envelope(f, dictionary)
    l_mask = f.domain_mask
    return max(0.0, float(numpy.max(f.flat[l_mask] - l_envelope.flat[l_mask])))


def exists_strict_minorant(f: SampledFunction, phi_bar: QuadMinorant) -> bool:
    '''
    :return: True if phi_bar lies strictly below f at every grid point
    '''
    return bool(numpy.all(eval_minorant(phi_bar, f.grid.points) < f.flat))
