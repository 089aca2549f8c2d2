# -*- coding: utf-8 -*-
# @package tests.minimax
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
phimax: Test module for minimax.saddle.
'''

import math
import unittest

from hypothesis import given, settings, strategies
import numpy

from phimax.common.errors import InputError, UnsupportedError
from phimax.convexity.core import GridSpec, SampledFunction
from phimax.minimax import saddle


def _problem(tables, step=0.5, labels=None) -> saddle.SaddleProblem:
    l_grid = GridSpec.cube(-1.0, 1.0, 1.0)
    l_tables = [SampledFunction(l_grid, i_values) for i_values in tables]
    l_labels = labels if labels is not None else [f'y{i_i + 1}' for i_i in range(len(l_tables))]
    return saddle.SaddleProblem.from_tables(l_labels, l_tables, step)


class TestSaddle(unittest.TestCase):
    '''
    Test cases for saddle problems and their iterated values
    '''

    def setUp(self):
        '''
        Set up a problem with gap 1: the tables cross but no mixture lifts its infimum above 1
        '''
        self.gap = _problem([[0.0, 2.0, 2.0], [2.0, 2.0, 0.0]])

    def tearDown(self):
        '''
        Clean up
        '''
        del self.gap

    def test_problem_errors(self):
        '''
        Test SaddleProblem validation
        '''
        l_table = [0.0, 1.0, 2.0]
        with self.assertRaises(InputError):
            _problem([])
        with self.assertRaises(UnsupportedError):
            _problem([l_table] * 5)
        with self.assertRaises(InputError):
            _problem([l_table, l_table], labels=['y', 'y'])
        with self.assertRaises(InputError):
            _problem([l_table, l_table], labels=['y1'])
        for i_step in (0.0, 0.3, 1.5, math.nan):
            with self.subTest(pattern=i_step):
                with self.assertRaises(InputError):
                    _problem([l_table], step=i_step)
        l_other = SampledFunction(GridSpec.cube(-2.0, 2.0, 2.0), l_table)
        with self.assertRaises(InputError):
            saddle.SaddleProblem.from_tables(['y1', 'y2'], [self.gap.tables[0], l_other])

    def test_default_mixture_step(self):
        '''
        Test the default simplex resolution
        '''
        l_tables = self.gap.tables
        self.assertEqual(saddle.SaddleProblem.from_tables(['a', 'b'], l_tables[:2]).mixture_step, 0.01)
        self.assertEqual(saddle.SaddleProblem.from_tables(['a', 'b', 'c'], l_tables + l_tables[:1]).mixture_step, 0.05)

    def test_simplex_grid(self):
        '''
        Test simplex grid order: vertices first, then lexicographic
        '''
        numpy.testing.assert_array_equal(self.gap.simplex_grid(), [[1.0, 0.0], [0.0, 1.0], [0.5, 0.5]])
        self.assertEqual(self.gap.simplex_grid(0.01).shape, (101, 2))

        l_three = _problem([[0.0, 0.0, 0.0]] * 3)
        numpy.testing.assert_array_equal(
            l_three.simplex_grid(),
            [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0],
             [0.0, 0.5, 0.5], [0.5, 0.0, 0.5], [0.5, 0.5, 0.0]]
        )
        numpy.testing.assert_allclose(l_three.simplex_grid(0.25).sum(axis=1), 1.0)
        self.assertEqual(l_three.simplex_grid(0.25).shape, (15, 3))

    def test_mixture(self):
        '''
        Test mixture tables and labels
        '''
        numpy.testing.assert_array_equal(self.gap.mixture([0.5, 0.5]).flat, [1.0, 2.0, 1.0])
        numpy.testing.assert_array_equal(self.gap.mixture([1.0, 0.0]).flat, [0.0, 2.0, 2.0])
        self.assertEqual(self.gap.label_of([0.0, 1.0]), 'y2')
        self.assertEqual(self.gap.label_of([0.25, 0.75]), '0.25*y1+0.75*y2')

        l_infinite = _problem([[0.0, 1.0, math.inf], [1.0, 1.0, 1.0]])
        numpy.testing.assert_array_equal(l_infinite.mixture([0.0, 1.0]).flat, [1.0, 1.0, 1.0])
        numpy.testing.assert_array_equal(l_infinite.mixture([0.5, 0.5]).flat, [0.5, 1.0, math.inf])

        for i_weights in ([0.5, 0.6], [-0.5, 1.5], [1.0]):
            with self.subTest(pattern=i_weights):
                with self.assertRaises(InputError):
                    self.gap.mixture(i_weights)

    def test_saddle_values(self):
        '''
        Test sup-inf and inf-sup of the gap problem
        '''
        l_values = saddle.saddle_values(self.gap)
        self.assertEqual(l_values.lower, 1.0)
        self.assertEqual(l_values.upper, 2.0)
        self.assertEqual(l_values.gap, 1.0)
        numpy.testing.assert_array_equal(l_values.lower_weights, [0.5, 0.5])
        numpy.testing.assert_array_equal(l_values.upper_point, [-1.0])
        self.assertEqual(l_values.mixture_step, 0.5)
        self.assertEqual(l_values.lower_slack, 0.5)
        self.assertEqual(l_values.lower_ceiling, 1.5)
        self.assertEqual(l_values.refinement_delta, 0.0)
        self.assertIsNone(saddle.saddle_values(self.gap, refine=False).refinement_delta)

    def test_saddle_values_without_gap(self):
        '''
        Test a problem with a saddle point and the slack of special cases
        '''
        l_values = saddle.saddle_values(_problem([[-1.0, 0.0, 1.0], [1.0, 0.0, -1.0]]))
        self.assertEqual(l_values.lower, 0.0)
        self.assertEqual(l_values.upper, 0.0)
        self.assertEqual(l_values.gap, 0.0)
        numpy.testing.assert_array_equal(l_values.upper_point, [0.0])

        l_single = saddle.saddle_values(_problem([[3.0, 1.0, 2.0]], step=1.0))
        self.assertEqual(l_single.lower, 1.0)
        self.assertEqual(l_single.lower_slack, 0.0)
        self.assertIsNone(l_single.refinement_delta)

        l_infinite = saddle.saddle_values(_problem([[0.0, 1.0, math.inf], [1.0, 1.0, 1.0]]))
        self.assertEqual(l_infinite.lower_slack, math.inf)
        self.assertEqual(l_infinite.upper, 1.0)

    def test_concavity_in_y_check(self):
        '''
        Test that mixtures are affine in the weights
        '''
        self.assertTrue(saddle.concavity_in_y_check(self.gap))
        self.assertTrue(saddle.concavity_in_y_check(_problem([[0.0, 1.0, math.inf], [1.0, 1.0, 1.0], [2.0, 0.5, 3.0]])))

    @settings(max_examples=30, deadline=None, derandomize=True)
    @given(tables=strategies.lists(
        strategies.lists(strategies.floats(min_value=-10.0, max_value=10.0), min_size=3, max_size=3),
        min_size=1, max_size=4
    ))
    def test_weak_duality(self, tables):
        '''
        Test that the sup-inf never exceeds the inf-sup
        '''
        l_values = saddle.saddle_values(_problem(tables), refine=False)
        self.assertLessEqual(l_values.lower, l_values.upper)
        self.assertGreaterEqual(l_values.gap, 0.0)
        self.assertLessEqual(l_values.lower, l_values.lower_ceiling)


if __name__ == '__main__':
    unittest.main()
