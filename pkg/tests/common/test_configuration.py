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
phimax: Test module for common.configuration.
'''

import tempfile
import unittest
from pathlib import Path
from types import MappingProxyType

import yaml

import phimax.common.configuration


class Namespace(object):
    '''Namespace similar to argparse'''
    # pylint: disable=too-few-public-methods
    def __init__(self, **kwargs):
        '''Initialisation.'''
        self.__dict__.update(kwargs)


def _args(directory: str, **kwargs) -> Namespace:
    l_args = {
        'loglevel': 'DEBUG',
        'quiet': True,
        'logfile': Path(directory) / 'phimax.log',
        'configfile': Path(directory) / 'config' / 'phimaxconfig.yaml',
        'freshconfigs': False,
        'margin': None,
        'mixture_step': None,
        'grid_tolerance': None,
        'slope_radius': None
    }
    l_args.update(kwargs)
    return Namespace(**l_args)


class TestConfiguration(unittest.TestCase):
    '''
    Test cases for Configuration
    '''

    def test_configuration(self):
        '''
        Test generation of the default config file
        '''
        with tempfile.TemporaryDirectory() as f_dir:
            l_args = _args(f_dir)
            l_config = phimax.common.configuration.Configuration(l_args)
            self.assertTrue(l_args.configfile.is_file())
            with open(l_args.configfile) as f_config:
                l_written = yaml.safe_load(f_config)
            self.assertDictEqual(
                l_written,
                phimax.common.configuration._DEFAULT_CONFIG  # pylint: disable=protected-access
            )
            self.assertIsInstance(l_config.revision, str)
            self.assertTrue(l_config.revision)

    def test_configuration_baseexceptions(self):
        '''
        Test for BaseExceptions
        '''
        with tempfile.TemporaryDirectory() as f_dir:
            with self.assertRaises(BaseException):
                phimax.common.configuration.Configuration(_args(f_dir, configfile=None))

    def test_configuration_properties(self):
        '''
        Test Configuration properties
        '''
        with tempfile.TemporaryDirectory() as f_dir:
            l_config = phimax.common.configuration.Configuration(_args(f_dir))
            for i_property in (l_config.tolerances, l_config.dictionary, l_config.intersection,
                               l_config.variational, l_config.minimax, l_config.paper_example):
                self.assertIsInstance(i_property, MappingProxyType)
            self.assertEqual(l_config.tolerances['membership'], 1e-9)
            self.assertEqual(l_config.dictionary['slope_radius'], 4.0)
            self.assertEqual(l_config.intersection['margin'], 1e-6)
            self.assertEqual(l_config.variational['max_restarts'], 10)
            self.assertListEqual(list(l_config.paper_example['gammas']), [1.0, 5.0, 10.0])
            self.assertEqual(l_config.mixture_step(2), 0.01)
            self.assertEqual(l_config.mixture_step(3), 0.05)

    def test_configuration_overrides(self):
        '''
        Test that command line flags override the config file
        '''
        with tempfile.TemporaryDirectory() as f_dir:
            l_config = phimax.common.configuration.Configuration(
                _args(f_dir, margin=1e-3, mixture_step=0.1, grid_tolerance=0.5, slope_radius=2.0)
            )
            self.assertEqual(l_config.intersection['margin'], 1e-3)
            self.assertEqual(l_config.mixture_step(2), 0.1)
            self.assertEqual(l_config.mixture_step(4), 0.1)
            self.assertEqual(l_config.minimax['grid_tolerance'], 0.5)
            self.assertEqual(l_config.dictionary['slope_radius'], 2.0)

    def test_configuration_partial_file(self):
        '''
        Test that sections missing in an existing config file are filled with defaults
        '''
        with tempfile.TemporaryDirectory() as f_dir:
            l_args = _args(f_dir)
            l_args.configfile.parent.mkdir(parents=True)
            with open(l_args.configfile, 'w') as f_config:
                yaml.safe_dump({'tolerances': {'membership': 1e-6}}, f_config)
            l_config = phimax.common.configuration.Configuration(l_args)
            self.assertEqual(l_config.tolerances['membership'], 1e-6)
            self.assertEqual(l_config.tolerances['consistency'], 1e-9)
            self.assertEqual(l_config.minimax['conv_level_offset'], 0.05)

            # fresh configs overwrite the file
            l_config = phimax.common.configuration.Configuration(_args(f_dir, freshconfigs=True))
            self.assertEqual(l_config.tolerances['membership'], 1e-9)


if __name__ == '__main__':
    unittest.main()
