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
Arithmetic expression language of problem files.

Expressions use ``+ - * / ^``, the functions ``abs``, ``exp``, ``exp2``, ``sqrt``, ``min``,
``max``, ``norm`` (Euclidean norm of x, or of its arguments), the coordinates ``x1..xn`` and
the constants ``pi`` and ``inf``. They are translated into numexpr syntax and evaluated on
all grid points at once.
'''

import ast
import math
import re
import typing

import numexpr
import numpy

from phimax.common.errors import InputError
from phimax.convexity.core import MAX_DIMENSION, GridSpec, SampledFunction

_BINARY = {
    ast.Add: '+',
    ast.Sub: '-',
    ast.Mult: '*',
    ast.Div: '/',
    ast.Pow: '**'
}
_CONSTANTS = {
    'pi': math.pi,
    'inf': math.inf
}
_COORDINATE = re.compile(r'^x([1-9][0-9]*)$')


class Expression(object):
    '''Parsed expression over the coordinates of an n-dimensional grid.'''

    def __init__(self, source: str, dimension: int):
        '''
        Parse source.

        :param source: expression text, ``^`` denotes powers
        :param dimension: number of coordinates
        '''
        if not isinstance(source, str) or not source.strip():
            raise InputError('empty expression')
        if not 1 <= dimension <= MAX_DIMENSION:
            raise InputError(f'dimension must lie in 1..{MAX_DIMENSION}, got {dimension}')
        self._source = source
        self._dimension = dimension
        try:
            l_tree = ast.parse(source.replace('^', '**').strip(), mode='eval')
        except SyntaxError as error:
            raise InputError(f'cannot parse expression "{source}": {error.msg}') from error
        self._numexpr = self._translate(l_tree.body)

    def __str__(self):
        return self._source

    @property
    def source(self) -> str:
        '''
        :return: expression as written
        '''
        return self._source

    @property
    def numexpr_source(self) -> str:
        '''
        :return: translated numexpr expression
        '''
        return self._numexpr

    def _coordinate(self, name: str) -> typing.Optional[int]:
        l_match = _COORDINATE.match(name)
        if l_match is None:
            return None
        l_axis = int(l_match.group(1))
        if l_axis > self._dimension:
            raise InputError(f'coordinate {name} in a {self._dimension}-dimensional problem')
        return l_axis

    def _translate(self, node: ast.AST) -> str:
        '''
        Translate an AST node, rejecting everything outside the expression language.
        '''
        if isinstance(node, ast.BinOp) and type(node.op) in _BINARY:
            return f'({self._translate(node.left)} {_BINARY[type(node.op)]} {self._translate(node.right)})'
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            return f'({"-" if isinstance(node.op, ast.USub) else "+"}{self._translate(node.operand)})'
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
                and not isinstance(node.value, bool):
            return repr(float(node.value))
        if isinstance(node, ast.Name):
            if node.id in _CONSTANTS:
                return node.id
            if self._coordinate(node.id) is not None:
                return node.id
            raise InputError(f'unknown name "{node.id}" in "{self._source}"')
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
            return self._call(node.func.id, [self._translate(i_arg) for i_arg in node.args])
        raise InputError(f'unsupported construct {type(node).__name__} in "{self._source}"')

    def _call(self, name: str, args: typing.List[str]) -> str:
        if name in ('abs', 'exp', 'sqrt', 'exp2'):
            if len(args) != 1:
                raise InputError(f'{name} takes one argument, got {len(args)}')
            if name == 'exp2':
                return f'(2.0 ** {args[0]})'
            return f'{name}({args[0]})'
        if name in ('min', 'max'):
            if len(args) < 2:
                raise InputError(f'{name} takes at least two arguments')
            l_compare = '<=' if name == 'min' else '>='
            l_result = args[0]
            for i_arg in args[1:]:
                l_result = f'where({l_result} {l_compare} {i_arg}, {l_result}, {i_arg})'
            return l_result
        if name == 'norm':
            l_terms = args or [f'x{i_axis + 1}' for i_axis in range(self._dimension)]
            return 'sqrt(' + ' + '.join(f'({i_term}) ** 2' for i_term in l_terms) + ')'
        raise InputError(f'unknown function "{name}" in "{self._source}"')

    def __call__(self, points: numpy.ndarray) -> numpy.ndarray:
        '''
        Evaluate at points.

        :param points: (count, n) array
        :return: (count,) values, finite or +inf
        '''
        l_points = numpy.atleast_2d(numpy.asarray(points, dtype=numpy.float64))
        if l_points.shape[1] != self._dimension:
            raise InputError(f'points of dimension {l_points.shape[1]} for a {self._dimension}-dimensional expression')
        l_locals = {f'x{i_axis + 1}': numpy.ascontiguousarray(l_points[:, i_axis]) for i_axis in range(self._dimension)}
        l_locals.update(_CONSTANTS)
        with numpy.errstate(all='ignore'):
            try:
                l_values = numexpr.evaluate(self._numexpr, local_dict=l_locals, global_dict={})
            except (KeyError, SyntaxError, TypeError, ValueError) as error:
                raise InputError(f'cannot evaluate "{self._source}": {error}') from error
        l_values = numpy.broadcast_to(numpy.asarray(l_values, dtype=numpy.float64), (l_points.shape[0],))
        if numpy.any(numpy.isnan(l_values)) or numpy.any(l_values == -numpy.inf):
            raise InputError(f'"{self._source}" is NaN or -inf somewhere on the grid')
        return numpy.array(l_values)

    def sample(self, grid: GridSpec) -> SampledFunction:
        '''
        :return: the expression sampled on grid
        '''
        if grid.dimension != self._dimension:
            raise InputError(f'grid dimension {grid.dimension} does not match expression dimension {self._dimension}')
        return SampledFunction.from_callable(grid, self)
