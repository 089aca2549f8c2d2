# -*- coding: utf-8 -*-
# @package tests.convexity
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
phimax: Test module for convexity.subdiff.
'''

import math
import typing
import unittest
from unittest import mock

from hypothesis import given, settings, strategies
import numpy

from phimax.common.errors import ConsistencyError, InputError, PreconditionError
from phimax.common.helper import Verdict
from phimax.convexity import intersection, subdiff
from phimax.convexity.core import GridSpec, QuadMinorant, SampledFunction, SupportReport, eval_minorant
from phimax.convexity.support import MinorantDictionary


_COEFFICIENTS = (-1.0, -0.5, 0.0, 0.5, 1.0)
_GRIDS = {
    1: GridSpec.cube(-2.0, 2.0, 0.25),
    2: GridSpec.cube(-1.0, 1.0, 0.25, 2),
    3: GridSpec.cube(-1.0, 1.0, 0.5, 3),
}


def _shapes(dimension: int):
    return strategies.builds(
        QuadMinorant,
        strategies.sampled_from((0.0, 0.5, 1.0)),
        strategies.tuples(*(strategies.sampled_from(_COEFFICIENTS),) * dimension),
        strategies.sampled_from(_COEFFICIENTS)
    )


def _max_of_pieces(data, dimension: int) -> typing.Tuple[SampledFunction, typing.List[QuadMinorant]]:
    l_pieces = data.draw(strategies.lists(_shapes(dimension), min_size=3, max_size=8))
    l_f = SampledFunction.from_callable(
        _GRIDS[dimension], lambda x: numpy.max([eval_minorant(i_p, x) for i_p in l_pieces], axis=0)
    )
    return l_f, l_pieces


class TestSubdiff(unittest.TestCase):
    '''
    Test cases for subdifferentials of sampled functions
    '''

    def setUp(self):
        '''
        Set up x^2 on [-2, 2]
        '''
        self.square = SampledFunction.from_callable(GridSpec.cube(-2.0, 2.0, 0.5), lambda x: x[:, 0] ** 2)

    def tearDown(self):
        '''
        Clean up
        '''
        del self.square

    def test_query(self):
        '''
        Test SubdiffQuery validation
        '''
        l_query = subdiff.SubdiffQuery(self.square, 1.0, 0.25)
        numpy.testing.assert_array_equal(l_query.x_bar, [1.0])
        self.assertEqual(l_query.index, 6)
        self.assertEqual(l_query.value, 1.0)

        l_partial = self.square.with_values(numpy.where(self.square.flat > 3.0, numpy.inf, self.square.flat))
        for i_f, i_x, i_eps in ((self.square, 0.3, 0.0), (self.square, 1.0, -0.1), (self.square, 1.0, math.inf),
                                (self.square, 3.0, 0.0), (l_partial, 2.0, 0.0)):
            with self.subTest(pattern=(i_x, i_eps)):
                with self.assertRaises(InputError):
                    subdiff.SubdiffQuery(i_f, i_x, i_eps)

    def test_membership(self):
        '''
        Test exact and epsilon membership
        '''
        l_exact = subdiff.SubdiffQuery(self.square, 1.0)
        l_tangent = QuadMinorant.parse('0,2,0')
        self.assertEqual(subdiff.canonical_representative(l_exact, l_tangent), QuadMinorant.parse('0,2,-1'))
        self.assertEqual(subdiff.definitional_residual(l_exact, l_tangent), 0.0)
        self.assertTrue(subdiff.subdiff_membership(l_exact, l_tangent))
        # only the shape matters
        self.assertTrue(subdiff.subdiff_membership(l_exact, QuadMinorant.parse('0,2,17')))

        l_flat = QuadMinorant.parse('0,1,0')
        self.assertEqual(subdiff.definitional_residual(l_exact, l_flat), 0.25)
        self.assertFalse(subdiff.subdiff_membership(l_exact, l_flat))

        l_eps = subdiff.SubdiffQuery(self.square, 1.0, 0.25)
        self.assertEqual(subdiff.definitional_residual(l_eps, l_flat), 0.0)
        self.assertTrue(subdiff.subdiff_membership(l_eps, l_flat))
        self.assertEqual(subdiff.canonical_representative(l_eps, l_flat), QuadMinorant.parse('0,1,-0.25'))

        # a curved minorant touching at 1
        self.assertTrue(subdiff.subdiff_membership(l_exact, QuadMinorant.parse('1,4,0')))
        with self.assertRaises(InputError):
            subdiff.definitional_residual(l_exact, QuadMinorant.parse('0,1,1,0'))

    def test_touching(self):
        '''
        Test that position is checked apart from shape
        '''
        l_low = QuadMinorant.parse('0,0,-0.3')
        l_exact = subdiff.SubdiffQuery(self.square, 0.0)
        self.assertTrue(subdiff.subdiff_membership(l_exact, l_low))
        self.assertFalse(subdiff.is_touching(l_exact, l_low))
        self.assertFalse(subdiff.is_subgradient(l_exact, l_low))
        self.assertTrue(subdiff.is_subgradient(l_exact, QuadMinorant.parse('0,0,0')))

        # within eps below f(x_bar) is in position, above it never is
        l_eps = subdiff.SubdiffQuery(self.square, 0.0, 0.5)
        self.assertTrue(subdiff.is_touching(l_eps, l_low))
        self.assertTrue(subdiff.is_subgradient(l_eps, l_low))
        self.assertTrue(subdiff.is_touching(l_eps, QuadMinorant.parse('0,0,-0.5')))
        self.assertFalse(subdiff.is_touching(l_eps, QuadMinorant.parse('0,0,-0.6')))
        self.assertFalse(subdiff.is_touching(l_eps, QuadMinorant.parse('0,0,0.1')))

        # the shape of a shifted tangent is still a member, its position is not
        l_query = subdiff.SubdiffQuery(self.square, 1.0)
        for i_delta in (-1.0, 0.0, 0.7):
            with self.subTest(pattern=i_delta):
                l_phi = QuadMinorant(0.0, (2.0,), -1.0 + i_delta)
                self.assertTrue(subdiff.subdiff_membership(l_query, l_phi))
                self.assertEqual(subdiff.is_subgradient(l_query, l_phi), i_delta == 0.0)

    def test_membership_consistency(self):
        '''
        Test that disagreeing characterisations raise
        '''
        l_query = subdiff.SubdiffQuery(self.square, 1.0)
        l_tangent = QuadMinorant.parse('0,2,-1')
        l_contradiction = SupportReport(member=False, min_slack=1.0, argmin=numpy.array([1.0]))
        with mock.patch('phimax.convexity.subdiff.support_membership', return_value=l_contradiction):
            with self.assertRaises(ConsistencyError):
                subdiff.subdiff_membership(l_query, l_tangent)
        # a disagreement within tol of the boundary is not a contradiction
        l_boundary = SupportReport(member=False, min_slack=-1e-12, argmin=numpy.array([1.0]))
        with mock.patch('phimax.convexity.subdiff.support_membership', return_value=l_boundary):
            self.assertFalse(subdiff.subdiff_membership(l_query, l_tangent))

    def test_eps_subgradient_from_support(self):
        '''
        Test lifting a support member to its touching point
        '''
        l_lifted = subdiff.eps_subgradient_from_support(self.square, QuadMinorant.constant(-1.0, 1), 0.1)
        numpy.testing.assert_array_equal(l_lifted.x1, [0.0])
        self.assertEqual(l_lifted.phi_bar, QuadMinorant.constant(0.0, 1))
        self.assertEqual(l_lifted.c1, 1.0)

        with self.assertRaises(PreconditionError):
            subdiff.eps_subgradient_from_support(self.square, QuadMinorant.constant(1.0, 1), 0.1)
        with self.assertRaises(PreconditionError):
            subdiff.eps_subgradient_from_support(self.square, QuadMinorant.constant(-1.0, 1), 0.0)

    def test_subgradient_search(self):
        '''
        Test dictionary subgradients at a point
        '''
        l_dictionary = MinorantDictionary.lattice(1, 0.5, 4.0, (0.0, 1.0))
        l_found = subdiff.subgradient_search(self.square, 1.0, l_dictionary)
        self.assertIn(QuadMinorant.parse('0,2,-1'), l_found)
        self.assertIn(QuadMinorant.parse('1,4,-2'), l_found)
        self.assertNotIn(QuadMinorant.parse('0,0,0'), l_found)
        l_query = subdiff.SubdiffQuery(self.square, 1.0)
        for i_phi in l_found:
            with self.subTest(pattern=str(i_phi)):
                self.assertTrue(subdiff.subdiff_membership(l_query, i_phi))

        with self.assertRaises(InputError):
            subdiff.subgradient_search(self.square, 1.0, MinorantDictionary.lattice(2, 1.0, 1.0))

    def test_density(self):
        '''
        Test subdifferentiability domain and density radius
        '''
        l_dictionary = MinorantDictionary.lattice(1, 0.5, 4.0, (0.0,))
        numpy.testing.assert_array_equal(subdiff.subdiff_domain(self.square, l_dictionary), self.square.grid.points)
        self.assertEqual(subdiff.density_radius(self.square, l_dictionary), 0.0)

        l_kink = SampledFunction.from_callable(GridSpec.cube(-1.0, 1.0, 0.5), lambda x: -numpy.abs(x[:, 0]))
        l_affine = MinorantDictionary.lattice(1, 0.5, 1.0, (0.0,))
        numpy.testing.assert_array_equal(subdiff.subdiff_domain(l_kink, l_affine), [[-1.0], [1.0]])
        self.assertEqual(subdiff.density_radius(l_kink, l_affine), 1.0)

    @settings(max_examples=500, deadline=None, derandomize=True)
    @given(data=strategies.data())
    def test_membership_against_definition(self, data):
        '''
        Test that membership matches the subgradient inequality on maxima of quadratic pieces
        '''
        l_dimension = data.draw(strategies.sampled_from((1, 2, 3)))
        l_f, l_pieces = _max_of_pieces(data, l_dimension)
        l_index = data.draw(strategies.integers(min_value=0, max_value=l_f.grid.size - 1))
        l_epsilon = data.draw(strategies.sampled_from((0.0, 0.1, 1.0)))
        l_query = subdiff.SubdiffQuery(l_f, l_f.grid.point(l_index), l_epsilon)
        l_phi = data.draw(strategies.one_of(strategies.sampled_from(l_pieces), _shapes(l_dimension)))

        self.assertEqual(subdiff.definitional_residual(l_query, l_phi) <= 1e-9,
                         subdiff.subdiff_membership(l_query, l_phi))
        for i_piece in l_pieces:
            if eval_minorant(i_piece, l_query.x_bar) == l_query.value:
                self.assertTrue(subdiff.is_subgradient(l_query, i_piece))
        # every grid point carries an active piece whose shape is in the dictionary
        l_dictionary = MinorantDictionary.lattice(l_dimension, 0.5, 1.0, (0.0, 0.5, 1.0))
        self.assertEqual(subdiff.density_radius(l_f, l_dictionary), 0.0)

    @settings(max_examples=200, deadline=None, derandomize=True)
    @given(data=strategies.data())
    def test_lifted_support_pairs(self, data):
        '''
        Test that lifting opposite affine support members gives touching pairs that keep the intersection property
        '''
        l_dimension = data.draw(strategies.sampled_from((1, 2, 3)))
        l_f, _ = _max_of_pieces(data, l_dimension)
        l_g, _ = _max_of_pieces(data, l_dimension)
        l_u = numpy.array(data.draw(strategies.tuples(*(strategies.sampled_from(_COEFFICIENTS),) * l_dimension)))
        l_drops = data.draw(strategies.tuples(*(strategies.sampled_from((0.0, 0.25, 0.5)),) * 2))
        l_points = l_f.grid.points
        l_phi1 = QuadMinorant(0.0, tuple(l_u), float(numpy.min(l_f.flat - l_points @ l_u)) - l_drops[0])
        l_phi2 = QuadMinorant(0.0, tuple(-l_u), float(numpy.min(l_g.flat + l_points @ l_u)) - l_drops[1])
        l_alpha = 0.5 * (l_phi1.c + l_phi2.c) - data.draw(strategies.sampled_from((0.0, 0.5)))
        self.assertIs(intersection.ip_decide_fullspace(l_phi1, l_phi2, l_alpha).verdict, Verdict.HOLDS)

        for i_epsilon in (0.1, 1.0):
            with self.subTest(pattern=i_epsilon):
                l_first = subdiff.eps_subgradient_from_support(l_f, l_phi1, i_epsilon)
                l_second = subdiff.eps_subgradient_from_support(l_g, l_phi2, i_epsilon)
                for i_f, i_lifted, i_phi in ((l_f, l_first, l_phi1), (l_g, l_second, l_phi2)):
                    self.assertTrue(subdiff.is_subgradient(subdiff.SubdiffQuery(i_f, i_lifted.x1, i_epsilon),
                                                           i_lifted.phi_bar))
                    self.assertTrue(intersection.dominates(i_lifted.phi_bar, i_phi, i_f.grid))
                l_levels = (l_alpha, l_alpha - 0.5, l_alpha - 1.0, l_alpha - 10.0)
                for i_decision in intersection.holds_at_levels(l_first.phi_bar, l_second.phi_bar, l_levels):
                    self.assertIs(i_decision.verdict, Verdict.HOLDS)


if __name__ == '__main__':
    unittest.main()
