# -*- coding: utf-8 -*-
# @package phimax.common
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
'''Enums and small value types shared by the numerical packages and the front end.'''

from __future__ import annotations
from dataclasses import dataclass
import enum
import math
import typing

import numpy

from phimax.common.errors import InputError


@enum.unique
class Verdict(enum.Enum):
    '''
    Outcome of an intersection property decision.

    '''

    HOLDS = 'Holds'
    FAILS = 'Fails'
    UNDECIDED = 'Undecided'

    def __str__(self):
        return self.value


@enum.unique
class WitnessMode(enum.Enum):
    '''
    Minorant class used by a minimax witness search.

    '''

    SUPPORT = 'support'
    SUBGRADIENT = 'subgrad'
    EPS_SUBGRADIENT = 'eps'
    CONV_SUBGRADIENT = 'conv'

    def __str__(self):
        return self.value

    @staticmethod
    def from_string(mode: str) -> WitnessMode:
        '''
        Get corresponding enum from string.

        :param mode: one of support, subgrad, eps, conv (case insensitive)
        :return: WitnessMode
        '''
        l_mode = str(mode).strip().lower()
        for i_mode in WitnessMode:
            if i_mode.value == l_mode:
                return i_mode
        raise KeyError(f'unknown witness mode {mode}')


@dataclass(frozen=True)
class Region:
    '''
    Domain on which an intersection property is decided: the full space, or the closed
    ball of radius ``gamma`` around the origin.
    '''

    gamma: typing.Optional[float] = None

    def __post_init__(self):
        if self.gamma is not None:
            if not math.isfinite(self.gamma) or self.gamma <= 0:
                raise InputError(f'ball radius must be positive and finite, got {self.gamma}')
            object.__setattr__(self, 'gamma', float(self.gamma))

    @property
    def is_ball(self) -> bool:
        '''
        :return: True for a ball region
        '''
        return self.gamma is not None

    def __str__(self):
        return 'FullSpace' if self.gamma is None else f'Ball({self.gamma!r})'


FULL_SPACE = Region()


@dataclass(frozen=True)
class Sweep:
    '''
    Data class to represent an inclusive level sweep ``low:high:step``.
    '''

    low: float
    high: float
    step: float
    __slots__ = ('low', 'high', 'step')

    def __post_init__(self):
        '''
        Check whether low <= high and step > 0
        '''
        if not all(math.isfinite(i_v) for i_v in (self.low, self.high, self.step)):
            raise InputError('sweep bounds must be finite')
        if self.low > self.high:
            raise InputError(f'sweep minimum {self.low} is larger than maximum {self.high}')
        if self.step <= 0:
            raise InputError(f'sweep step must be positive, got {self.step}')

    def __iter__(self) -> typing.Iterator[float]:
        '''
        Iterate over the levels, ``high`` included when it lies on the lattice.
        '''
        l_count = int(math.floor((self.high - self.low) / self.step + 1e-9))
        return iter(float(i_level) for i_level in self.low + self.step * numpy.arange(l_count + 1))

    def contains(self, value: float) -> bool:
        '''
        Checks whether value lies between low and high (including).

        :param value: value to check
        :return: True if value is inside the sweep range
        '''
        return self.low <= value <= self.high

    @staticmethod
    def from_string(sweep: str) -> Sweep:
        '''
        Parse ``low:high:step``.

        :param sweep: sweep string, e.g. ``-4:-2:0.5``
        :return: Sweep
        '''
        l_parts = str(sweep).split(':')
        if len(l_parts) != 3:
            raise InputError(f'sweep "{sweep}" is not of the form low:high:step')
        try:
            return Sweep(*(float(i_part) for i_part in l_parts))
        except ValueError as error:
            raise InputError(f'sweep "{sweep}": {error}') from error
