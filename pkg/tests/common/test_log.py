# -*- coding: utf-8 -*-
# @package tests.common
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
phimax: Test module for common.log.
'''

import logging
import logging.handlers
from pathlib import Path
import tempfile
import unittest

import phimax.common.log


class TestLog(unittest.TestCase):
    '''
    Test cases for the logger factory
    '''

    def test_logger(self):
        '''
        Test logger levels and handlers
        '''
        with tempfile.TemporaryDirectory() as f_dir:
            l_logfile = Path(f_dir) / 'sub' / 'phimax.log'
            for i_level, i_expected in (('debug', logging.DEBUG), ('INFO', logging.INFO), (logging.WARNING, logging.WARNING)):
                with self.subTest(pattern=i_level):
                    l_log = phimax.common.log.logger(f'phimax.test.log.{i_expected}', i_level, True, l_logfile)
                    self.assertIsInstance(l_log, logging.Logger)
                    self.assertEqual(l_log.level, i_expected)
                    self.assertFalse(l_log.propagate)
                    self.assertTrue(l_logfile.parent.is_dir())

            l_log = phimax.common.log.logger('phimax.test.log.handlers', 'INFO', False, l_logfile)
            self.assertEqual(
                sum(isinstance(i_h, logging.handlers.RotatingFileHandler) for i_h in l_log.handlers), 1
            )
            # asking again does not add handlers
            l_again = phimax.common.log.logger('phimax.test.log.handlers', 'INFO', False, l_logfile)
            self.assertIs(l_again, l_log)
            self.assertEqual(len(l_again.handlers), 2)

    def test_logger_errors(self):
        '''
        Test type checks of the arguments
        '''
        with tempfile.TemporaryDirectory() as f_dir:
            with self.assertRaises(TypeError):
                phimax.common.log.logger('phimax.test.log.badlevel', ['DEBUG'], True, Path(f_dir) / 'a.log')
            with self.assertRaises(TypeError):
                phimax.common.log.logger('phimax.test.log.badquiet', 'DEBUG', 'yes', Path(f_dir) / 'b.log')


if __name__ == '__main__':
    unittest.main()
