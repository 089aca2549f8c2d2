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
'''
Exception hierarchy.

Every exception derives from a builtin as well, so callers that only know about
``ValueError`` or ``RuntimeError`` keep working. The front end maps the classes to exit codes
via :data:`EXIT_CODES`.
'''


class PhimaxError(Exception):
    '''Base class of all phimax errors.'''


class InputError(PhimaxError, ValueError):
    '''Malformed input: bad dimensions, non-grid points, NaN or -inf values, bad files or flags.'''


class PreconditionError(PhimaxError, ValueError):
    '''A hypothesis of a constructive statement does not hold for the given data.'''


class UnsupportedError(PhimaxError, NotImplementedError):
    '''Request outside the supported scope, e.g. dimension above six.'''


class SeparationError(PhimaxError, RuntimeError):
    '''No separating direction passes validation at grid resolution.'''


class ConsistencyError(PhimaxError, AssertionError):
    '''Two independent computations of the same quantity disagree.'''


class TheoremViolation(PhimaxError, RuntimeError):
    '''A constructive guarantee failed its post-verification.'''


class VerificationError(TheoremViolation):
    '''Exhaustive post-verification of a variational construction failed.'''


EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNDECIDED = 2
EXIT_VIOLATION = 3

EXIT_CODES = (
    (TheoremViolation, EXIT_VIOLATION),
    (ConsistencyError, EXIT_VIOLATION),
    (PhimaxError, EXIT_INPUT),
)


def exit_code(error: BaseException) -> int:
    '''
    Map an exception to the front end exit code.

    :param error: raised exception
    :return: exit code, :data:`EXIT_INPUT` for anything not listed
    '''
    for i_class, i_code in EXIT_CODES:
        if isinstance(error, i_class):
            return i_code
    return EXIT_INPUT
