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
phimax: Test module for convexity.intersection.
'''

import math
import unittest

from hypothesis import given, settings, strategies
import numpy

from phimax.common.errors import InputError, UnsupportedError
from phimax.common.helper import Verdict
from phimax.convexity import intersection
from phimax.convexity.core import GridSpec, QuadMinorant, SampledFunction, eval_minorant


def _phi(text: str) -> QuadMinorant:
    return QuadMinorant.parse(text)


_COEFFICIENTS = (-1.0, -0.5, 0.0, 0.5, 1.0)


@strategies.composite
def _minorant_pairs(draw):
    l_dimension = draw(strategies.integers(min_value=1, max_value=3))
    l_pair = []
    for _ in range(2):
        l_pair.append(QuadMinorant(
            draw(strategies.sampled_from((0.0, 0.5, 1.0))),
            draw(strategies.tuples(*(strategies.sampled_from(_COEFFICIENTS),) * l_dimension)),
            draw(strategies.sampled_from(_COEFFICIENTS))
        ))
    return tuple(l_pair)


class TestIntersection(unittest.TestCase):
    '''
    Test cases for intersection property decisions
    '''

    def assertWitness(self, phi1, phi2, alpha, decision):  # pylint: disable=invalid-name
        '''
        Assert that a Fails decision carries a common strict point
        '''
        self.assertIs(decision.verdict, Verdict.FAILS)
        self.assertLess(eval_minorant(phi1, decision.witness), alpha)
        self.assertLess(eval_minorant(phi2, decision.witness), alpha)
        self.assertGreater(decision.margin, 0.0)

    def test_classify_strict_sublevel(self):
        '''
        Test classification of strict sublevel sets
        '''
        self.assertTrue(intersection.classify_strict_sublevel(_phi('0,0,1'), 0.0).is_empty)
        self.assertTrue(intersection.classify_strict_sublevel(_phi('0,0,0'), 0.0).is_empty)
        self.assertIsInstance(intersection.classify_strict_sublevel(_phi('0,0,-1'), 0.0), intersection.All)
        self.assertIsInstance(intersection.classify_strict_sublevel(_phi('0,1,0'), 0.0), intersection.OpenHalfspace)
        self.assertIsInstance(intersection.classify_strict_sublevel(_phi('1,0,0'), 0.0), intersection.PuncturedSpace)
        self.assertIsInstance(intersection.classify_strict_sublevel(_phi('1,0,0'), 1.0), intersection.All)
        l_exterior = intersection.classify_strict_sublevel(_phi('1,2,0'), 0.0)
        self.assertIsInstance(l_exterior, intersection.BallExterior)
        # -x^2 + 2x = -(x - 1)^2 + 1
        numpy.testing.assert_array_equal(l_exterior.center, [1.0])
        self.assertEqual(l_exterior.radius, 1.0)
        numpy.testing.assert_array_equal(l_exterior.contains(numpy.array([[0.0], [1.0], [2.5]])), [False, False, True])

    def test_decide_fullspace(self):
        '''
        Test full-space decisions
        '''
        l_decision = intersection.ip_decide_fullspace(_phi('0,0,0'), _phi('1,0,0'), 0.0)
        self.assertIs(l_decision.verdict, Verdict.HOLDS)
        self.assertEqual(l_decision.certificate, 'empty-sublevel')
        self.assertIsNone(l_decision.witness)

        l_decision = intersection.ip_decide_fullspace(_phi('0,1,0'), _phi('0,-1,0'), 0.0)
        self.assertIs(l_decision.verdict, Verdict.HOLDS)
        self.assertEqual(l_decision.certificate, 'antiparallel-halfspaces')

        self.assertIs(intersection.ip_decide_fullspace(_phi('0,2,0'), _phi('0,-1,3'), 1.0).verdict, Verdict.HOLDS)

        for i_phi1, i_phi2, i_alpha, i_certificate in (
                ('0,1,0', '0,-1,0', 1.0, 'antiparallel-overlap'),
                ('0,1,0,0', '0,0,1,0', 0.0, 'halfspace-pair'),
                ('0,1,0', '0,2,3', 0.0, 'halfspace-pair'),
                ('1,0,0', '0,0,-5', -1.0, 'co-bounded-ray'),
                ('1,0,0,0', '0,1,1,0', 0.0, 'co-bounded-ray'),
                ('0,0,-1', '0,0,-1', 0.0, 'co-bounded-ray')):
            with self.subTest(pattern=(i_phi1, i_phi2, i_alpha)):
                l_decision = intersection.ip_decide_fullspace(_phi(i_phi1), _phi(i_phi2), i_alpha)
                self.assertWitness(_phi(i_phi1), _phi(i_phi2), i_alpha, l_decision)
                self.assertEqual(l_decision.certificate, i_certificate)

        with self.assertRaises(InputError):
            intersection.ip_decide_fullspace(_phi('0,0,0'), _phi('0,0,0,0'), 0.0)
        with self.assertRaises(InputError):
            intersection.ip_decide_fullspace(_phi('0,0,0'), _phi('0,0,0'), math.inf)

    def test_decide_ball(self):
        '''
        Test decisions on a ball
        '''
        l_decision = intersection.ip_decide_ball(_phi('0,1,0'), _phi('0,-1,0'), 0.0, 5.0)
        self.assertIs(l_decision.verdict, Verdict.HOLDS)
        self.assertEqual(l_decision.certificate, 'fullspace-restriction:antiparallel-halfspaces')

        self.assertWitness(_phi('0,1,0'), _phi('0,-1,0'), 1.0,
                           intersection.ip_decide_ball(_phi('0,1,0'), _phi('0,-1,0'), 1.0, 5.0))

        # the overlap (-20, -10) lies outside the ball
        l_decision = intersection.ip_decide_ball(_phi('0,1,10'), _phi('0,-1,-20'), 0.0, 5.0)
        self.assertIs(l_decision.verdict, Verdict.HOLDS)
        self.assertEqual(l_decision.certificate, 'branch-and-bound')
        self.assertIs(intersection.ip_decide_fullspace(_phi('0,1,10'), _phi('0,-1,-20'), 0.0).verdict, Verdict.FAILS)

        # a shallow quadratic stays above the level on the unit ball
        l_decision = intersection.ip_decide_ball(_phi('0.01,0,1'), _phi('0.01,0,1'), 0.5, 1.0)
        self.assertIs(l_decision.verdict, Verdict.HOLDS)

        l_decision = intersection.ip_decide_ball(_phi('1,0,0,0'), _phi('1,0,0,0'), 0.0, 2.0)
        self.assertWitness(_phi('1,0,0,0'), _phi('1,0,0,0'), 0.0, l_decision)
        self.assertLessEqual(float(numpy.linalg.norm(l_decision.witness)), 2.0)

        for i_gamma, i_margin in ((0.0, 1e-6), (1.0, 0.0), (math.inf, 1e-6)):
            with self.subTest(pattern=(i_gamma, i_margin)):
                with self.assertRaises(InputError):
                    intersection.ip_decide_ball(_phi('0,0,0'), _phi('0,0,0'), 0.0, i_gamma, i_margin)

    def test_brute_force_and_levels(self):
        '''
        Test grid reference decisions, level sweeps and domination
        '''
        l_grid = GridSpec.cube(-2.0, 2.0, 0.5)
        l_decision = intersection.ip_brute_force(_phi('0,1,0'), _phi('0,-1,0'), 1.0, l_grid)
        self.assertIs(l_decision.verdict, Verdict.FAILS)
        numpy.testing.assert_array_equal(l_decision.witness, [-0.5])
        self.assertIs(intersection.ip_brute_force(_phi('0,1,10'), _phi('0,-1,-20'), 0.0, l_grid, 1.0).verdict,
                      Verdict.HOLDS)
        with self.assertRaises(InputError):
            intersection.ip_brute_force(_phi('0,1,0,0'), _phi('0,1,0,0'), 0.0, l_grid)

        l_verdicts = [i_d.verdict for i_d in intersection.holds_at_levels(_phi('0,1,0'), _phi('0,-1,0'), (-1.0, 0.0, 1.0))]
        self.assertListEqual(l_verdicts, [Verdict.HOLDS, Verdict.HOLDS, Verdict.FAILS])

        self.assertTrue(intersection.dominates(_phi('0,0,1'), _phi('1,0,1'), l_grid))
        self.assertFalse(intersection.dominates(_phi('1,0,1'), _phi('0,0,1'), l_grid))

    def test_no_witness_certificate(self):
        '''
        Test the one-dimensional nonexistence certificate
        '''
        l_grid = GridSpec.cube(-10.0, 10.0, 0.01)
        l_f = SampledFunction.from_callable(l_grid, lambda x: 2.0 ** x[:, 0])
        l_g = SampledFunction.from_callable(l_grid, lambda x: 2.0 - numpy.abs(x[:, 0]))
        self.assertTrue(intersection.ip_no_witness_certificate_1d(l_f, l_g, 0.0))

        l_convex = GridSpec.cube(-3.0, 3.0, 0.01)
        l_square = SampledFunction.from_callable(l_convex, lambda x: x[:, 0] ** 2)
        l_shifted = SampledFunction.from_callable(l_convex, lambda x: (x[:, 0] - 2.0) ** 2)
        # tangents 2x - 1 and -2x + 3 at 1 separate the 0.5-sublevel sets
        self.assertFalse(intersection.ip_no_witness_certificate_1d(l_square, l_shifted, 0.5))
        self.assertFalse(intersection.ip_no_witness_certificate_pairs((l_square, l_shifted), 0.5))
        # a positive constant minorant at level 0 is a witness by itself
        self.assertFalse(intersection.ip_no_witness_certificate_pairs((l_square.with_values(l_square.flat + 1.0),), 0.0))

        l_profile = intersection.ray_profile(l_square, 0.5)
        self.assertTrue(l_profile.has_interior_domain)
        self.assertFalse(l_profile.constant_above_level)
        with self.assertRaises(InputError):
            intersection.ip_no_witness_certificate_1d(l_f, l_square, 0.0)
        l_plane = SampledFunction(GridSpec.cube(0.0, 1.0, 0.5, 2), numpy.zeros(9))
        with self.assertRaises(UnsupportedError):
            intersection.ray_profile(l_plane, 0.0)
        with self.assertRaises(UnsupportedError):
            intersection.ip_no_witness_certificate_1d(l_plane, l_plane, 0.0)

    @settings(max_examples=60, derandomize=True)
    @given(
        first=strategies.tuples(*(strategies.integers(min_value=-3, max_value=3),) * 2),
        second=strategies.tuples(*(strategies.integers(min_value=-3, max_value=3),) * 2),
        alpha=strategies.integers(min_value=-3, max_value=3)
    )
    def test_fullspace_against_grid(self, first, second, alpha):
        '''
        Test that full-space Holds leaves no grid witness and Fails carries a witness
        '''
        l_phi1 = QuadMinorant(0.0, (float(first[0]),), float(first[1]))
        l_phi2 = QuadMinorant(0.0, (float(second[0]),), float(second[1]))
        l_decision = intersection.ip_decide_fullspace(l_phi1, l_phi2, float(alpha))
        if l_decision.verdict is Verdict.HOLDS:
            l_grid = GridSpec.cube(-8.0, 8.0, 0.25)
            self.assertIs(intersection.ip_brute_force(l_phi1, l_phi2, float(alpha), l_grid).verdict, Verdict.HOLDS)
        else:
            self.assertWitness(l_phi1, l_phi2, float(alpha), l_decision)

    @settings(max_examples=1000, deadline=None, derandomize=True)
    @given(pair=_minorant_pairs(),
           alpha=strategies.sampled_from((-1.0, -0.5, 0.0, 0.5, 1.0)),
           gamma=strategies.sampled_from((1.0, 2.0)))
    def test_decisions_against_grid(self, pair, alpha, gamma):
        '''
        Test full-space and ball decisions against a grid scan in dimensions one to three
        '''
        l_phi1, l_phi2 = pair
        l_grid = GridSpec.cube(-3.0, 3.0, 0.5, l_phi1.dimension)
        l_full = intersection.ip_decide_fullspace(l_phi1, l_phi2, alpha)
        l_ball = intersection.ip_decide_ball(l_phi1, l_phi2, alpha, gamma, max_cells=20000)

        self.assertIsNot(l_full.verdict, Verdict.UNDECIDED)
        if intersection.ip_brute_force(l_phi1, l_phi2, alpha, l_grid).verdict is Verdict.FAILS:
            self.assertIs(l_full.verdict, Verdict.FAILS)
        if l_full.verdict is Verdict.FAILS:
            self.assertWitness(l_phi1, l_phi2, alpha, l_full)
        else:
            self.assertIs(l_ball.verdict, Verdict.HOLDS)

        if intersection.ip_brute_force(l_phi1, l_phi2, alpha, l_grid, gamma).verdict is Verdict.FAILS:
            self.assertIsNot(l_ball.verdict, Verdict.HOLDS)
        if l_ball.verdict is Verdict.FAILS:
            self.assertWitness(l_phi1, l_phi2, alpha, l_ball)
            self.assertLessEqual(float(l_ball.witness @ l_ball.witness), gamma ** 2 * (1.0 + 1e-12))

        # Holds at a level carries over to every lower level
        l_verdicts = [i_d.verdict for i_d in intersection.holds_at_levels(
            l_phi1, l_phi2, (alpha, alpha - 0.5, alpha - 1.0, alpha - 10.0)
        )]
        for i_higher, i_lower in zip(l_verdicts, l_verdicts[1:]):
            if i_higher is Verdict.HOLDS:
                self.assertIs(i_lower, Verdict.HOLDS)

    def test_ball_undecided_rate(self):
        '''
        Test that random continuous ball instances are almost always decided
        '''
        l_rng = numpy.random.default_rng(20260)
        l_undecided = 0
        l_total = 600
        for i_case in range(l_total):
            l_dimension = 1 + i_case % 3
            l_pair = [
                QuadMinorant(
                    float(l_rng.uniform(0.0, 1.0)) if l_rng.random() < 0.5 else 0.0,
                    tuple(float(i_l) for i_l in l_rng.uniform(-1.0, 1.0, l_dimension)),
                    float(l_rng.uniform(-1.0, 2.0))
                ) for _ in range(2)
            ]
            l_decision = intersection.ip_decide_ball(
                *l_pair, float(l_rng.uniform(-1.0, 1.0)), float(l_rng.uniform(0.5, 3.0))
            )
            if l_decision.verdict is Verdict.UNDECIDED:
                l_undecided += 1
            elif l_decision.verdict is Verdict.FAILS:
                self.assertGreater(l_decision.margin, 0.0)
        self.assertLess(l_undecided / l_total, 0.02)


if __name__ == '__main__':
    unittest.main()
