# -*- coding: utf-8 -*-
# @package phimax.cli
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
Problem files.

A problem file (YAML or JSON) holds::

    dimension: 1
    box: {low: -3, high: 3, step: 0.01}
    functions:
      f: "x1^2"
      g: {expression: "(x1 - 2)^2"}
      h: {values: [...]}            # flat table in grid order
    saddle:                         # optional
      labels: [y1, y2]
      functions: [f, g]
      mixture_step: 0.01
    parameters:                     # optional defaults for the subcommands
      alpha: 0.5
      dictionary: {slope_step: 0.25, slope_radius: 4.0, curvatures: [0, 1]}

``low`` and ``high`` may be lists, one entry per axis.
'''

from __future__ import annotations
import dataclasses
from pathlib import Path
from types import MappingProxyType
import typing

import numpy

import phimax.common.io
from phimax.common.errors import InputError
from phimax.cli.expression import Expression
from phimax.convexity.core import GridSpec, SampledFunction
from phimax.convexity.support import MinorantDictionary
from phimax.minimax.saddle import SaddleProblem


def _box(dimension: int, box: typing.Mapping) -> GridSpec:
    if not isinstance(box, dict) or not {'low', 'high', 'step'} <= set(box):
        raise InputError('box needs low, high and step')
    l_bounds = []
    for i_key in ('low', 'high'):
        l_value = box[i_key]
        l_bound = numpy.atleast_1d(numpy.asarray(l_value, dtype=numpy.float64))
        if l_bound.size == 1:
            l_bound = numpy.repeat(l_bound, dimension)
        if l_bound.shape != (dimension,):
            raise InputError(f'box {i_key} {l_value} does not match dimension {dimension}')
        l_bounds.append(tuple(l_bound.tolist()))
    return GridSpec(l_bounds[0], l_bounds[1], float(box['step']))


def _function(name: str, entry, dimension: int, grid: GridSpec) -> SampledFunction:
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        entry = str(entry)
    if isinstance(entry, str):
        return Expression(entry, dimension).sample(grid)
    if isinstance(entry, dict) and 'expression' in entry:
        return Expression(str(entry['expression']), dimension).sample(grid)
    if isinstance(entry, dict) and 'values' in entry:
        try:
            l_values = numpy.asarray(
                [numpy.inf if i_v in ('+inf', 'inf') else i_v for i_v in entry['values']], dtype=numpy.float64
            )
        except (TypeError, ValueError) as error:
            raise InputError(f'values of function {name}: {error}') from error
        if l_values.size != grid.size:
            raise InputError(f'function {name} has {l_values.size} values for {grid.size} grid points')
        return SampledFunction(grid, l_values)
    raise InputError(f'function {name} is neither an expression nor a value table')


def _source(entry) -> str:
    if isinstance(entry, dict):
        return str(entry['expression']) if 'expression' in entry else 'table'
    return str(entry)


@dataclasses.dataclass(frozen=True, eq=False)
class ProblemFile:
    '''Sampled functions, an optional saddle problem and parameter defaults read from a file.'''

    name: str
    dimension: int
    grid: GridSpec
    functions: typing.Mapping[str, SampledFunction]
    saddle: typing.Optional[typing.Mapping]
    parameters: typing.Mapping
    sources: typing.Mapping[str, str]

    @staticmethod
    def from_mapping(data: typing.Mapping, name: str = 'problem') -> ProblemFile:
        '''
        Build from a parsed mapping.

        :param data: top level mapping
        :param name: problem name used in reports
        :return: ProblemFile
        '''
        if not isinstance(data, dict):
            raise InputError('problem is not a mapping')
        try:
            l_dimension = int(data['dimension'])
            l_entries = data['functions']
            l_box = data['box']
        except (KeyError, TypeError, ValueError) as error:
            raise InputError(f'problem {name} needs dimension, box and functions ({error})') from error
        if not isinstance(l_entries, dict) or not l_entries:
            raise InputError(f'problem {name} has no functions')
        l_grid = _box(l_dimension, l_box)
        l_functions = {
            str(i_name): _function(str(i_name), i_entry, l_dimension, l_grid) for i_name, i_entry in l_entries.items()
        }
        l_saddle = data.get('saddle')
        if l_saddle is not None:
            if not isinstance(l_saddle, dict) or 'functions' not in l_saddle:
                raise InputError(f'saddle section of {name} needs functions')
            for i_name in l_saddle['functions']:
                if str(i_name) not in l_functions:
                    raise InputError(f'saddle function {i_name} is not defined')
        l_parameters = data.get('parameters') or {}
        if not isinstance(l_parameters, dict):
            raise InputError(f'parameters of {name} are not a mapping')
        return ProblemFile(
            name=name,
            dimension=l_dimension,
            grid=l_grid,
            functions=MappingProxyType(l_functions),
            saddle=None if l_saddle is None else MappingProxyType(dict(l_saddle)),
            parameters=MappingProxyType(dict(l_parameters)),
            sources=MappingProxyType({str(i_name): _source(i_entry) for i_name, i_entry in l_entries.items()})
        )

    @staticmethod
    def read(filename: Path, args=None) -> ProblemFile:
        '''
        Read a YAML or JSON problem file, optionally gzipped.
        '''
        l_path = Path(filename)
        l_name = l_path.name.split('.')[0] or 'problem'
        return ProblemFile.from_mapping(phimax.common.io.Reader(args).read_mapping(l_path), l_name)

    def function(self, name: str) -> SampledFunction:
        '''
        :return: the named function
        '''
        if name not in self.functions:
            raise InputError(f'no function {name} in problem {self.name}, known: {sorted(self.functions)}')
        return self.functions[name]

    def source(self, name: str) -> str:
        '''
        :return: expression text of the named function, 'table' for value tables
        '''
        self.function(name)
        return self.sources[name]

    def parameter(self, key: str, default=None):
        '''
        :return: parameter from the file, default if absent
        '''
        return self.parameters.get(key, default)

    def saddle_problem(self, mixture_step: typing.Optional[float] = None,
                       default_step: typing.Optional[typing.Callable[[int], float]] = None) -> SaddleProblem:
        '''
        :param mixture_step: overrides the file's mixture step
        :param default_step: step for a label count, used if neither is given; the label count
            decides with the built-in steps if this is absent too
        :return: SaddleProblem of the saddle section
        '''
        if self.saddle is None:
            raise InputError(f'problem {self.name} has no saddle section')
        l_names = [str(i_name) for i_name in self.saddle['functions']]
        l_labels = [str(i_label) for i_label in self.saddle.get('labels', l_names)]
        l_step = mixture_step if mixture_step is not None else self.saddle.get('mixture_step')
        if l_step is None and default_step is not None:
            l_step = default_step(len(l_names))
        return SaddleProblem.from_tables(l_labels, [self.function(i_name) for i_name in l_names],
                                         None if l_step is None else float(l_step))

    def dictionary_for(self, f: SampledFunction, defaults: typing.Mapping) -> MinorantDictionary:
        '''
        Dictionary for f: the configured defaults, overridden by the file's dictionary parameters.

        :param f: function the dictionary is sized for
        :param defaults: mapping with curvatures, slope_step and slope_radius
        '''
        l_spec = dict(defaults)
        l_spec.update(self.parameters.get('dictionary') or {})
        try:
            return MinorantDictionary.default_for(
                f,
                slope_step=float(l_spec['slope_step']),
                slope_radius=float(l_spec['slope_radius']),
                curvatures=tuple(float(i_a) for i_a in l_spec['curvatures'])
            )
        except (KeyError, TypeError, ValueError) as error:
            if isinstance(error, InputError):
                raise
            raise InputError(f'bad dictionary parameters {l_spec}: {error}') from error
