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
Subcommands. Every command takes the parsed arguments and the configuration and returns the
report (a dict, or a DataFrame for csv sweeps) together with the exit status.
'''

import logging
from pathlib import Path
import typing

import numpy
import pandas

import phimax.common.io
from phimax.common.configuration import Configuration
from phimax.common.errors import EXIT_OK, EXIT_UNDECIDED, InputError, PreconditionError, TheoremViolation
from phimax.common.helper import FULL_SPACE, Region, Sweep, Verdict, WitnessMode
from phimax.cli.problem import ProblemFile
from phimax.cli.report import decision_report, jsonable, sweep_table, values_report, witness_report
from phimax.convexity.core import QuadMinorant, as_vector
from phimax.convexity.intersection import ip_decide_ball, ip_decide_fullspace, ip_no_witness_certificate_1d
from phimax.convexity.subdiff import (
    SubdiffQuery, canonical_representative, definitional_residual, density_radius, is_subgradient, is_touching,
    subdiff_membership, subgradient_search
)
from phimax.convexity.support import envelope_tolerance, phi_convexity_gap
from phimax.convexity.variational import bronsted_rockafellar, ip_transfer_to_ball
from phimax.minimax.saddle import SaddleProblem, concavity_in_y_check, saddle_values
from phimax.minimax.witness import (
    conv_minimax_witness, eps_subgradient_ip_witness_search, nonexistence_label, steepest_table,
    subgradient_ip_witness_search, support_ip_witness_search, verify_witness
)

_LOG = logging.getLogger(__name__)

WORKED_EXAMPLE = Path(__file__).resolve().parent.parent / 'resources' / 'problems' / 'paper_example.yaml'


def parse_point(text: str):
    '''
    :return: vector from comma separated coordinates
    '''
    try:
        return as_vector([float(i_part) for i_part in str(text).split(',')])
    except ValueError as error:
        raise InputError(f'cannot parse point "{text}": {error}') from error


def _required(value, problem: typing.Optional[ProblemFile], key: str, flag: str):
    '''Flag value, or the problem file's parameter of the same meaning.'''
    if value is None and problem is not None:
        value = problem.parameter(key)
    if value is None:
        raise InputError(f'{flag} is required (no {key} parameter in the problem file either)')
    return value


def _minorant(value) -> QuadMinorant:
    return value if isinstance(value, QuadMinorant) else QuadMinorant.parse(str(value))


def envelope(args, cfg: Configuration) -> typing.Tuple[dict, int]:
    '''Phi-convexity gap of a function with respect to its dictionary.'''
    l_problem = ProblemFile.read(args.problem, args)
    l_f = l_problem.function(args.fn)
    l_dictionary = l_problem.dictionary_for(l_f, cfg.dictionary)
    l_gap = phi_convexity_gap(l_f, l_dictionary)
    l_tolerance = envelope_tolerance(l_f)
    return jsonable({
        'command': 'envelope',
        'problem': l_problem.name,
        'function': args.fn,
        'dictionary_size': len(l_dictionary),
        'gap': l_gap,
        'tolerance': l_tolerance,
        'phi_convex': l_gap <= l_tolerance,
        'density_radius': density_radius(l_f, l_dictionary, cfg.tolerances['membership'])
    }), EXIT_OK


def subdiff(args, cfg: Configuration) -> typing.Tuple[dict, int]:
    '''Membership of a given minorant, or the dictionary subgradients at a point.'''
    l_problem = ProblemFile.read(args.problem, args)
    l_f = l_problem.function(args.fn)
    l_tol = cfg.tolerances['membership']
    l_query = SubdiffQuery(l_f, parse_point(_required(args.at, l_problem, 'at', '--at')), args.eps, l_tol)
    l_report = {
        'command': 'subdiff',
        'problem': l_problem.name,
        'function': args.fn,
        'x_bar': l_query.x_bar,
        'epsilon': l_query.epsilon
    }
    if args.phi is not None:
        l_phi = QuadMinorant.parse(args.phi)
        l_report.update({
            'phi': l_phi,
            'member': subdiff_membership(l_query, l_phi),
            'touching': is_touching(l_query, l_phi),
            'residual': definitional_residual(l_query, l_phi),
            'canonical': canonical_representative(l_query, l_phi)
        })
    else:
        l_found = subgradient_search(l_f, l_query.x_bar, l_problem.dictionary_for(l_f, cfg.dictionary), l_tol)
        l_report.update({'count': len(l_found), 'subgradients': l_found})
    return jsonable(l_report), EXIT_OK


def intersect(args, cfg: Configuration) -> typing.Tuple[dict, int]:
    '''Intersection property decision for two minorants given as flags.'''
    l_phi1 = QuadMinorant.parse(args.phi1)
    l_phi2 = QuadMinorant.parse(args.phi2)
    if args.ball is None:
        l_decision = ip_decide_fullspace(l_phi1, l_phi2, args.alpha)
    else:
        l_decision = ip_decide_ball(
            l_phi1, l_phi2, args.alpha, args.ball,
            cfg.intersection['margin'], cfg.intersection['max_depth'], cfg.intersection['max_cells']
        )
    l_report = {
        'command': 'intersect',
        'phi1': l_phi1,
        'phi2': l_phi2,
        'alpha': args.alpha,
        'region': Region(args.ball)
    }
    l_report.update(decision_report(l_decision))
    return jsonable(l_report), EXIT_UNDECIDED if l_decision.verdict is Verdict.UNDECIDED else EXIT_OK


def br(args, cfg: Configuration) -> typing.Tuple[dict, int]:
    '''Exact subgradient near an epsilon-subgradient with all certified bounds.'''
    l_problem = ProblemFile.read(args.problem, args)
    l_f = l_problem.function(args.fn)
    l_phi = _minorant(_required(args.phi, l_problem, 'phi', '--phi'))
    l_epsilon = float(_required(args.eps, l_problem, 'epsilon', '--eps'))
    l_lambda = float(_required(args.lam, l_problem, 'lambda', '--lambda'))
    l_result = bronsted_rockafellar(
        l_f, parse_point(_required(args.at, l_problem, 'at', '--at')), l_phi, l_epsilon, l_lambda,
        cfg.tolerances['membership'], cfg.variational['max_restarts']
    )
    return jsonable({
        'command': 'br',
        'problem': l_problem.name,
        'function': args.fn,
        'phi': l_phi,
        'epsilon': l_epsilon,
        'lambda': l_lambda,
        'y_bar': l_result.y_bar,
        'phi_bar': l_result.phi_bar,
        'bounds': l_result.bounds,
        'violations': l_result.bounds.violations(l_lambda, cfg.tolerances['bounds'])
    }), EXIT_OK


def transfer(args, cfg: Configuration) -> typing.Tuple[dict, int]:
    '''Move a full-space witness pair to exact subgradients on a ball.'''
    l_problem = ProblemFile.read(args.problem, args)
    l_alpha = float(_required(args.alpha, l_problem, 'alpha', '--alpha'))
    l_gamma = float(_required(args.gamma, l_problem, 'gamma', '--gamma'))
    l_eta = float(_required(args.eta, l_problem, 'eta', '--eta'))
    l_result = ip_transfer_to_ball(
        l_problem.function(args.fn), l_problem.function(args.fn2),
        _minorant(_required(args.phi1, l_problem, 'phi1', '--phi1')),
        _minorant(_required(args.phi2, l_problem, 'phi2', '--phi2')),
        l_alpha, l_gamma, l_eta, cfg.intersection['margin'], cfg.tolerances['membership']
    )
    return jsonable({
        'command': 'transfer',
        'problem': l_problem.name,
        'functions': [args.fn, args.fn2],
        'alpha': l_alpha,
        'gamma': l_gamma,
        'eta': l_eta,
        'epsilon': l_result.epsilon,
        'lambdas': l_result.lambdas,
        'lifted': [{'x1': i_lift.x1, 'phi_bar': i_lift.phi_bar, 'c1': i_lift.c1} for i_lift in l_result.lifted],
        'x1': l_result.x1,
        'phi1_bar': l_result.phi1_bar,
        'x2': l_result.x2,
        'phi2_bar': l_result.phi2_bar,
        'level': l_alpha - l_eta,
        'decision': decision_report(l_result.decision),
        'drift': l_result.drift
    }), EXIT_UNDECIDED if l_result.decision.verdict is Verdict.UNDECIDED else EXIT_OK


def _sweep_row(problem: SaddleProblem, values, dictionary, alpha: float, mode: WitnessMode, region: Region,
               args, cfg: Configuration) -> dict:
    '''Search one level and qualify the outcome.'''
    l_row = {'alpha': alpha, 'mode': str(mode), 'region': str(region)}
    l_tol = cfg.tolerances['membership']
    l_applicable = alpha < values.upper if mode is not WitnessMode.CONV_SUBGRADIENT else alpha <= values.lower
    if not l_applicable:
        l_row.update({'verdict': 'not-applicable', 'witness_found': False, 'witness': None})
        return l_row

    if mode is WitnessMode.SUPPORT:
        l_witness = support_ip_witness_search(problem, alpha, dictionary, values, l_tol)
    elif mode is WitnessMode.SUBGRADIENT:
        l_witness = subgradient_ip_witness_search(problem, alpha, region, dictionary, values,
                                                  margin=cfg.intersection['margin'], tol=l_tol)
    elif mode is WitnessMode.EPS_SUBGRADIENT:
        l_witness = eps_subgradient_ip_witness_search(problem, alpha, args.eps, dictionary, values, l_tol)
    else:
        l_witness = conv_minimax_witness(problem, alpha, values, cfg.minimax['grid_tolerance'],
                                         cfg.minimax['conv_level_offset'], l_tol, cfg.tolerances['convexity'])

    if l_witness is None:
        l_row.update({
            'verdict': 'none',
            'witness_found': False,
            'nonexistence': nonexistence_label(problem, alpha, mode, region, values, l_tol),
            'witness': None
        })
        return l_row

    l_verified = verify_witness(problem, l_witness, l_tol, cfg.intersection['margin'])
    if l_witness.holds and not l_verified:
        raise TheoremViolation(f'witness at {alpha!r} failed re-verification')
    l_row.update({
        'verdict': str(l_witness.decision.verdict),
        'witness_found': True,
        'y1': problem.label_of(l_witness.y1),
        'y2': problem.label_of(l_witness.y2),
        'phi1': str(l_witness.phi1),
        'phi2': str(l_witness.phi2),
        'verify_ok': l_verified,
        'witness': witness_report(problem, l_witness)
    })
    return l_row


def minimax(args, cfg: Configuration) -> typing.Tuple[typing.Union[dict, pandas.DataFrame], int]:
    '''Saddle values and a witness search for every level of a sweep.'''
    l_problem_file = ProblemFile.read(args.problem, args)
    l_problem = l_problem_file.saddle_problem(getattr(args, 'mixture_step', None), cfg.mixture_step)
    l_dictionary = l_problem_file.dictionary_for(steepest_table(l_problem), cfg.dictionary)
    l_mode = WitnessMode.from_string(args.mode)
    if args.ball is not None and l_mode is not WitnessMode.SUBGRADIENT:
        raise InputError('--ball is only available with --mode subgrad')
    l_region = Region(args.ball)
    l_values = saddle_values(l_problem, refine=True, tol=cfg.tolerances['consistency'])
    _LOG.info('%s: lower %r, upper %r, gap %r', l_problem_file.name, l_values.lower, l_values.upper, l_values.gap)

    l_sweep = args.alpha_sweep if args.alpha_sweep is not None else Sweep.from_string(
        _required(None, l_problem_file, 'alpha_sweep', '--alpha-sweep'))
    if l_mode is WitnessMode.CONV_SUBGRADIENT and l_values.gap > cfg.minimax['grid_tolerance']:
        raise PreconditionError(f'saddle gap {l_values.gap!r} exceeds the grid tolerance')
    l_rows = [
        _sweep_row(l_problem, l_values, l_dictionary, i_alpha, l_mode, l_region, args, cfg) for i_alpha in l_sweep
    ]
    l_status = EXIT_UNDECIDED if any(i_row['verdict'] == str(Verdict.UNDECIDED) for i_row in l_rows) else EXIT_OK

    if args.results_hdf5_file is not None:
        _write_hdf5(args, l_problem_file.name, l_values, l_rows)

    if args.format == 'csv':
        return sweep_table(l_rows), l_status
    return jsonable({
        'command': 'minimax',
        'problem': l_problem_file.name,
        'labels': l_problem.labels,
        'mode': l_mode,
        'region': l_region,
        'values': values_report(l_values, l_problem),
        'dictionary_size': len(l_dictionary),
        'concave_in_y': concavity_in_y_check(l_problem),
        'rows': l_rows
    }), l_status


def _write_hdf5(args, name: str, values, rows: typing.Sequence[dict]):
    l_table = sweep_table(rows)
    l_objects = {
        'values': {
            'value': numpy.array([values.lower, values.upper, values.gap]),
            'attr': {'columns': 'lower,upper,gap', 'mixture_step': values.mixture_step}
        },
        'sweep': {
            i_column: {
                'value': [str(i_v) for i_v in l_table[i_column]]
                if l_table[i_column].dtype == object else l_table[i_column].to_numpy(),
                'attr': {}
            }
            for i_column in l_table.columns
        }
    }
    phimax.common.io.Writer(args).write_hdf5(l_objects, str(args.results_hdf5_file), f'minimax/{name}')


def paper_example(args, cfg: Configuration) -> typing.Tuple[dict, int]:
    '''
    Reproduce the worked example f = 2^x, g = -|x| + 2: no pair of subgradients with the
    intersection property at level 0 on the full space, but pairs on every ball at level -eta.
    '''
    l_data = phimax.common.io.Reader(args).read_mapping(WORKED_EXAMPLE)
    l_data['box']['step'] = float(cfg.paper_example['step'])
    l_problem = ProblemFile.from_mapping(l_data, 'paper_example')
    l_f = l_problem.function('f')
    l_g = l_problem.function('g')
    l_alpha = float(l_problem.parameter('alpha', 0.0))
    l_eta = float(args.eta if args.eta is not None else cfg.paper_example['eta'])
    l_gammas = [args.gamma] if args.gamma is not None else list(cfg.paper_example['gammas'])
    l_tol = cfg.tolerances['membership']
    l_margin = cfg.intersection['margin']

    l_pair = SaddleProblem.from_tables(('f', 'g'), (l_f, l_g), mixture_step=1.0)
    l_dictionary = l_problem.dictionary_for(steepest_table(l_pair), cfg.dictionary)
    l_fullspace = subgradient_ip_witness_search(l_pair, l_alpha, FULL_SPACE, dictionary=l_dictionary, tol=l_tol)
    l_certified = ip_no_witness_certificate_1d(l_f, l_g, l_alpha, l_tol)

    l_phi1 = QuadMinorant.parse(l_problem.parameter('phi1'))
    l_phi2 = QuadMinorant.parse(l_problem.parameter('phi2'))
    l_balls = []
    for i_gamma in l_gammas:
        l_result = ip_transfer_to_ball(l_f, l_g, l_phi1, l_phi2, l_alpha, float(i_gamma), l_eta, l_margin, l_tol)
        l_verified = is_subgradient(SubdiffQuery(l_f, l_result.x1, 0.0, l_tol), l_result.phi1_bar) \
            and is_subgradient(SubdiffQuery(l_g, l_result.x2, 0.0, l_tol), l_result.phi2_bar) \
            and ip_decide_ball(l_result.phi1_bar, l_result.phi2_bar, l_alpha - l_eta, float(i_gamma),
                               l_margin).verdict is Verdict.HOLDS
        l_balls.append({
            'gamma': float(i_gamma),
            'level': l_alpha - l_eta,
            'x1': l_result.x1,
            'phi1_bar': l_result.phi1_bar,
            'x2': l_result.x2,
            'phi2_bar': l_result.phi2_bar,
            'verdict': l_result.decision.verdict,
            'certificate': l_result.decision.certificate,
            'verified': l_verified
        })
    if l_fullspace is not None:
        raise TheoremViolation(f'full-space subgradient witness found at {l_alpha!r}: {l_fullspace.phi1}, {l_fullspace.phi2}')
    if not l_certified:
        raise TheoremViolation(f'full-space nonexistence at {l_alpha!r} could not be certified')

    l_status = EXIT_UNDECIDED if any(i_ball['verdict'] is Verdict.UNDECIDED for i_ball in l_balls) else EXIT_OK
    return jsonable({
        'command': 'paper-example',
        'functions': {i_name: l_problem.source(i_name) for i_name in ('f', 'g')},
        'box': {'low': l_f.grid.low[0], 'high': l_f.grid.high[0], 'step': l_f.grid.step},
        'alpha': l_alpha,
        'eta': l_eta,
        'fullspace_witness': None,
        'fullspace_certified': l_certified,
        'support_pair': {
            'phi1': l_phi1,
            'phi2': l_phi2,
            'decision': decision_report(ip_decide_fullspace(l_phi1, l_phi2, l_alpha))
        },
        'ball': l_balls
    }), l_status


COMMANDS = {
    'envelope': envelope,
    'subdiff': subdiff,
    'intersect': intersect,
    'br': br,
    'transfer': transfer,
    'minimax': minimax,
    'paper-example': paper_example
}
