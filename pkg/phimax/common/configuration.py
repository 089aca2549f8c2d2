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
'''Configuration of tolerances, dictionaries and search budgets.'''

import copy
from pathlib import Path
from types import MappingProxyType
import sh

import phimax.common.io
import phimax.common.log


_DEFAULT_CONFIG = {
    'tolerances': {
        'membership': 1e-9,
        'consistency': 1e-9,
        'convexity': 1e-9,
        'bounds': 1e-9
    },
    'dictionary': {
        'curvatures': [0.25 * i for i in range(17)],
        'slope_step': 0.25,
        'slope_radius': 4.0
    },
    'intersection': {
        'margin': 1e-6,
        'max_depth': 40,
        'max_cells': 200000
    },
    'variational': {
        'max_restarts': 10
    },
    'minimax': {
        'mixture_step_two_labels': 0.01,
        'mixture_step_many_labels': 0.05,
        'grid_tolerance': 0.02,
        'conv_level_offset': 0.05
    },
    'paper_example': {
        'step': 0.01,
        'gammas': [1.0, 5.0, 10.0],
        'eta': 0.1
    }
}


class Configuration(object):
    '''Configuration reads phimax' YAML config file and merges it with command line flags.'''

    def __init__(self, args):
        '''
        Initialisation: Read config file (or write the defaults) and merge with command line
        arguments. Command line args override the file.
        '''

        self._log = phimax.common.log.logger(__name__, args.loglevel, args.quiet, args.logfile)
        self._reader = phimax.common.io.Reader(args)
        self._writer = phimax.common.io.Writer(args)
        self._args = args

        if self._args.configfile is None:
            raise ValueError('configuration file flag is None')

        if not Path(self._args.configfile).is_file() or self._args.freshconfigs:
            self._log.info('generating default configuration %s', self._args.configfile)
            self._config = copy.deepcopy(_DEFAULT_CONFIG)
            Path(self._args.configfile).parent.mkdir(parents=True, exist_ok=True)
            self._writer.write_yaml(self._config, self._args.configfile)
        else:
            self._config = self._reader.read_yaml(self._args.configfile)

        # fill sections missing in older config files
        for i_section, i_defaults in _DEFAULT_CONFIG.items():
            l_section = self._config.setdefault(i_section, {})
            for i_key, i_value in i_defaults.items():
                l_section.setdefault(i_key, copy.deepcopy(i_value))

        # store currently running revision
        # inferred from current HEAD if located inside a git project.
        # otherwise set revision to 'UNKNOWN'
        try:
            l_git_commit_id = sh.Command('git')(['rev-parse', 'HEAD'])
            self._config['phimax_revision'] = str(l_git_commit_id).replace('\n', '')
        except sh.ErrorReturnCode:
            self._config['phimax_revision'] = 'UNKNOWN'
        except sh.CommandNotFound:
            self._log.debug('Git command not found in PATH. Setting revision to UNKNOWN.')
            self._config['phimax_revision'] = 'UNKNOWN'

        self._override_cfg_flags()

    def _override_cfg_flags(self):
        '''Override the config with command line flags that were given.'''

        if getattr(self._args, 'margin', None) is not None:
            self._config['intersection']['margin'] = float(self._args.margin)
        if getattr(self._args, 'mixture_step', None) is not None:
            self._config['minimax']['mixture_step_two_labels'] = float(self._args.mixture_step)
            self._config['minimax']['mixture_step_many_labels'] = float(self._args.mixture_step)
        if getattr(self._args, 'grid_tolerance', None) is not None:
            self._config['minimax']['grid_tolerance'] = float(self._args.grid_tolerance)
        if getattr(self._args, 'slope_radius', None) is not None:
            self._config['dictionary']['slope_radius'] = float(self._args.slope_radius)

    @property
    def tolerances(self) -> MappingProxyType:
        '''
        :return: tolerances
        '''
        return MappingProxyType(self._config['tolerances'])

    @property
    def dictionary(self) -> MappingProxyType:
        '''
        :return: default minorant dictionary parameters
        '''
        return MappingProxyType(self._config['dictionary'])

    @property
    def intersection(self) -> MappingProxyType:
        '''
        :return: intersection decider parameters
        '''
        return MappingProxyType(self._config['intersection'])

    @property
    def variational(self) -> MappingProxyType:
        '''
        :return: variational principle parameters
        '''
        return MappingProxyType(self._config['variational'])

    @property
    def minimax(self) -> MappingProxyType:
        '''
        :return: minimax parameters
        '''
        return MappingProxyType(self._config['minimax'])

    @property
    def paper_example(self) -> MappingProxyType:
        '''
        :return: parameters of the built-in worked example
        '''
        return MappingProxyType(self._config['paper_example'])

    @property
    def revision(self) -> str:
        '''
        :return: git revision of the running tree or UNKNOWN
        '''
        return self._config['phimax_revision']

    def mixture_step(self, labels: int) -> float:
        '''
        Default simplex grid step for a saddle problem.

        :param labels: number of labels
        :return: step
        '''
        if labels <= 2:
            return float(self.minimax['mixture_step_two_labels'])
        return float(self.minimax['mixture_step_many_labels'])
