# -*- coding: utf-8 -*-
# @package phimax
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
# pylint: disable=too-few-public-methods
'''phimax main module.'''
import argparse
from pathlib import Path
import sys
import typing

import pandas

import phimax.common.configuration
import phimax.common.io
import phimax.common.log
from phimax.cli.commands import COMMANDS
from phimax.common.errors import InputError, PhimaxError, exit_code
from phimax.common.helper import Sweep

_MINORANT_HELP = 'minorant -a|x|^2 + <l, x> + c given as a,l1[,l2,...],c'


class _ArgumentParser(argparse.ArgumentParser):
    '''Argument parser reporting errors as InputError instead of exiting.'''

    def error(self, message):
        raise InputError(f'{self.prog}: {message}')


def _positive(text: str) -> float:
    l_value = float(text)
    if not l_value > 0:
        raise InputError(f'{text} is not positive')
    return l_value


class Phimax(object):
    '''phimax main class'''

    def __init__(self, argv: typing.Optional[typing.Sequence[str]] = None):
        '''Initialisation.'''

        # get config dir ~/.phimax and create if not exist
        l_config_dir = Path('~/.phimax').expanduser()
        l_config_dir.mkdir(exist_ok=True)

        l_parser = _ArgumentParser(
            prog='phimax',
            description='Abstract convexity toolkit: Phi-subdifferentials, intersection property '
                        'and minimax certificates on grids.'
        )
        l_parser.add_argument(
            '--configfile', dest='configfile', type=Path,
            default=l_config_dir / 'phimaxconfig.yaml'
        )
        l_parser.add_argument(
            '--fresh-configs',
            dest='freshconfigs',
            action='store_true',
            default=False,
            help=f'generate a fresh config file (overwrite an existing one in {l_config_dir})'
        )
        l_parser.add_argument(
            '--logfile', dest='logfile', type=Path,
            default=l_config_dir / 'phimax.log'
        )
        l_parser.add_argument(
            '--loglevel', dest='loglevel', type=str,
            default='INFO'
        )
        l_parser.add_argument(
            '-q', '--quiet', dest='quiet', action='store_true',
            default=False, help='suppress log output to stderr'
        )
        l_parser.add_argument(
            '--debug',
            dest='loglevel',
            action='store_const',
            const='DEBUG',
            help='Equivalent to \'--loglevel DEBUG\''
        )
        l_parser.add_argument(
            '--out', dest='out', type=Path,
            default=None, help='write the report to this file instead of stdout'
        )
        l_parser.add_argument(
            '--margin', dest='margin', type=_positive,
            default=None, help='witness margin of ball decisions'
        )
        l_parser.add_argument(
            '--mixture-step', dest='mixture_step', type=_positive,
            default=None, help='simplex grid step of saddle problems'
        )
        l_parser.add_argument(
            '--grid-tolerance', dest='grid_tolerance', type=_positive,
            default=None, help='largest saddle gap treated as zero'
        )
        l_parser.add_argument(
            '--slope-radius', dest='slope_radius', type=float,
            default=None, help='largest slope entry of default dictionaries'
        )

        l_commands = l_parser.add_subparsers(dest='command', metavar='command')
        l_commands.required = True

        l_envelope = l_commands.add_parser('envelope', help='Phi-convexity gap of a function')
        l_envelope.add_argument('problem', type=Path)
        l_envelope.add_argument('--fn', dest='fn', required=True)

        l_subdiff = l_commands.add_parser('subdiff', help='subdifferential membership or search at a point')
        l_subdiff.add_argument('problem', type=Path)
        l_subdiff.add_argument('--fn', dest='fn', required=True)
        l_subdiff.add_argument('--at', dest='at', default=None, help='grid point x1[,x2,...]')
        l_subdiff.add_argument('--eps', dest='eps', type=float, default=0.0)
        l_subdiff.add_argument('--phi', dest='phi', default=None, help=_MINORANT_HELP)

        l_intersect = l_commands.add_parser('intersect', help='intersection property of two minorants')
        l_intersect.add_argument('--phi1', dest='phi1', required=True, help=_MINORANT_HELP)
        l_intersect.add_argument('--phi2', dest='phi2', required=True, help=_MINORANT_HELP)
        l_intersect.add_argument('--alpha', dest='alpha', type=float, required=True)
        l_intersect.add_argument('--ball', dest='ball', type=_positive, default=None, help='ball radius')

        l_br = l_commands.add_parser('br', help='exact subgradient near an epsilon-subgradient')
        l_br.add_argument('problem', type=Path)
        l_br.add_argument('--fn', dest='fn', required=True)
        l_br.add_argument('--at', dest='at', default=None)
        l_br.add_argument('--phi', dest='phi', default=None, help=_MINORANT_HELP)
        l_br.add_argument('--eps', dest='eps', type=_positive, default=None)
        l_br.add_argument('--lambda', dest='lam', type=_positive, default=None)

        l_transfer = l_commands.add_parser('transfer', help='move a witness pair to subgradients on a ball')
        l_transfer.add_argument('problem', type=Path)
        l_transfer.add_argument('--fn', dest='fn', required=True)
        l_transfer.add_argument('--fn2', dest='fn2', required=True)
        l_transfer.add_argument('--phi1', dest='phi1', default=None, help=_MINORANT_HELP)
        l_transfer.add_argument('--phi2', dest='phi2', default=None, help=_MINORANT_HELP)
        l_transfer.add_argument('--alpha', dest='alpha', type=float, default=None)
        l_transfer.add_argument('--gamma', dest='gamma', type=_positive, default=None)
        l_transfer.add_argument('--eta', dest='eta', type=_positive, default=None)

        l_minimax = l_commands.add_parser('minimax', help='saddle values and witness sweep')
        l_minimax.add_argument('problem', type=Path)
        l_minimax.add_argument('--alpha-sweep', dest='alpha_sweep', type=Sweep.from_string, default=None,
                               help='levels low:high:step')
        l_minimax.add_argument('--ball', dest='ball', type=_positive, default=None)
        l_minimax.add_argument('--mode', dest='mode', choices=('support', 'subgrad', 'eps', 'conv'),
                               default='support')
        l_minimax.add_argument('--eps', dest='eps', type=_positive, default=0.1)
        l_minimax.add_argument('--format', dest='format', choices=('json', 'csv'), default='json')
        l_minimax.add_argument(
            '--output-hdf5-file', dest='results_hdf5_file', type=Path,
            default=None, help='target HDF5 file the sweep will be written to'
        )

        l_paper = l_commands.add_parser('paper-example', help='worked example 2^x and -|x| + 2')
        l_paper.add_argument('--gamma', dest='gamma', type=_positive, default=None)
        l_paper.add_argument('--eta', dest='eta', type=_positive, default=None)

        self._args = l_parser.parse_args(argv)

        # package logger, library modules log through its children
        self._log = phimax.common.log.logger(
            'phimax',
            self._args.loglevel,
            self._args.quiet,
            self._args.logfile
        )

    @property
    def args(self) -> argparse.Namespace:
        '''
        :return: parsed arguments
        '''
        return self._args

    def run(self) -> int:
        '''
        Run the selected command and write its report.

        :return: exit code
        '''
        self._log.debug('---- Starting phimax %s ----', self._args.command)
        l_configuration = phimax.common.configuration.Configuration(self._args)
        self._log.debug('phimax revision %s', l_configuration.revision)
        l_report, l_status = COMMANDS[self._args.command](self._args, l_configuration)

        l_writer = phimax.common.io.Writer(self._args)
        if isinstance(l_report, pandas.DataFrame):
            l_writer.write_csv(l_report, self._args.out)
        else:
            l_writer.write_json({**l_report, 'revision': l_configuration.revision}, self._args.out)
        return l_status


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    '''main entry point'''
    try:
        return Phimax(argv).run()
    except PhimaxError as error:
        sys.stderr.write(f'phimax: {type(error).__name__}: {error}\n')
        return exit_code(error)


if __name__ == '__main__':
    sys.exit(main())
