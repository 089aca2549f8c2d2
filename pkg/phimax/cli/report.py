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
Report assembly. Reports are plain nested dicts with a fixed key order; floats keep their
shortest round-trip representation, infinities are spelled ``"+inf"`` and ``"-inf"`` and
minorants use the flag syntax ``a,l1,...,c``.
'''

import dataclasses
import enum
import math
import typing

import numpy
import pandas

from phimax.common.errors import InputError
from phimax.common.helper import Region
from phimax.convexity.core import ExtReal, QuadMinorant
from phimax.convexity.intersection import IPDecision
from phimax.minimax.saddle import SaddleProblem, SaddleValues
from phimax.minimax.witness import IPWitness

SWEEP_COLUMNS = ('alpha', 'mode', 'region', 'verdict', 'witness_found', 'y1', 'y2', 'phi1', 'phi2', 'verify_ok')


def _float(value: float):
    if math.isnan(value):
        raise InputError('NaN in report')
    if math.isinf(value):
        return '+inf' if value > 0 else '-inf'
    return float(value)


def jsonable(obj):
    '''
    Convert obj recursively into JSON compatible values.
    '''
    if obj is None or isinstance(obj, (bool, numpy.bool_, str)):
        return bool(obj) if isinstance(obj, numpy.bool_) else obj
    if isinstance(obj, (int, numpy.integer)):
        return int(obj)
    if isinstance(obj, (float, numpy.floating)):
        return _float(float(obj))
    if isinstance(obj, ExtReal):
        return _float(float(obj))
    if isinstance(obj, (QuadMinorant, Region, enum.Enum)):
        return str(obj)
    if isinstance(obj, numpy.ndarray):
        return [jsonable(i_v) for i_v in obj.tolist()]
    if isinstance(obj, typing.Mapping):
        return {str(i_k): jsonable(i_v) for i_k, i_v in obj.items()}
    if isinstance(obj, tuple) and hasattr(obj, '_asdict'):
        return jsonable(obj._asdict())
    if isinstance(obj, (list, tuple)):
        return [jsonable(i_v) for i_v in obj]
    if dataclasses.is_dataclass(obj):
        return {i_field.name: jsonable(getattr(obj, i_field.name)) for i_field in dataclasses.fields(obj)}
    raise InputError(f'cannot report a value of type {type(obj).__name__}')


def decision_report(decision: IPDecision) -> dict:
    '''
    :return: verdict, witness, certificate and margin
    '''
    return jsonable({
        'verdict': decision.verdict,
        'witness': decision.witness,
        'certificate': decision.certificate,
        'margin': decision.margin
    })


def values_report(values: SaddleValues, problem: SaddleProblem) -> dict:
    '''
    :return: both saddle values with their argmax/argmin and the refinement estimate
    '''
    return jsonable({
        'lower': values.lower,
        'upper': values.upper,
        'gap': values.gap,
        'lower_weights': values.lower_weights,
        'lower_label': problem.label_of(values.lower_weights),
        'upper_point': values.upper_point,
        'mixture_step': values.mixture_step,
        'lower_slack': values.lower_slack,
        'refinement_delta': values.refinement_delta
    })


def witness_report(problem: SaddleProblem, witness: typing.Optional[IPWitness]) -> typing.Optional[dict]:
    '''
    :return: labels, weights, minorants, touching points and decision of a witness
    '''
    if witness is None:
        return None
    return jsonable({
        'y1': problem.label_of(witness.y1),
        'y2': problem.label_of(witness.y2),
        'y1_weights': witness.y1,
        'y2_weights': witness.y2,
        'phi1': witness.phi1,
        'phi2': witness.phi2,
        'x1': witness.x1,
        'x2': witness.x2,
        'mode': witness.mode,
        'region': witness.region,
        'level': witness.level,
        'epsilon': witness.epsilon,
        'decision': decision_report(witness.decision)
    })


def sweep_table(rows: typing.Sequence[typing.Mapping]) -> pandas.DataFrame:
    '''
    :param rows: sweep rows as produced by the minimax command
    :return: table with the sweep columns, one row per level
    '''
    return pandas.DataFrame(
        [[i_row.get(i_column) for i_column in SWEEP_COLUMNS] for i_row in rows],
        columns=list(SWEEP_COLUMNS)
    )
