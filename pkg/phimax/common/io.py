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
'''I/O module'''
# pylint: disable=no-member

import gzip
import json
from pathlib import Path
import sys
import typing

import numpy
import pandas

try:
    from yaml import CSafeLoader as SafeLoader, CSafeDumper as SafeDumper
except ImportError:  # pragma: no cover
    from yaml import SafeLoader, SafeDumper

import yaml

import h5py

import phimax.common.log
from phimax.common.errors import InputError


def _open_text(filename: Path, mode: str):
    '''Open a text file, transparently gzipped if the name ends with .gz.'''
    if Path(filename).suffix.lower() == '.gz':
        return gzip.open(filename, mode + 't')
    return open(filename, mode)


class Reader(object):
    '''Read json and yaml files.'''

    def __init__(self, args=None):
        '''Initialisation.'''
        if args is not None:
            self._log = phimax.common.log.logger(__name__, args.loglevel, args.quiet, args.logfile)
        else:
            self._log = phimax.common.log.logger(__name__)

    def read_yaml(self, filename: Path):
        '''
        Reads yaml file and returns dictionary.
        If filename ends with .gz treat file as gzipped yaml.
        '''
        self._log.debug('Reading %s', filename)

        with _open_text(filename, 'r') as f_yaml:
            return yaml.load(f_yaml, Loader=SafeLoader)

    def read_json(self, filename: Path):
        '''
        Reads json file and returns its content.
        If filename ends with .gz treat file as gzipped json.
        '''
        self._log.debug('Reading %s', filename)

        with _open_text(filename, 'r') as f_json:
            return json.load(f_json)

    def read_mapping(self, filename: Path) -> dict:
        '''
        Read a problem file, choosing the parser by suffix (``.json`` or ``.yaml``/``.yml``,
        optionally followed by ``.gz``).

        :param filename: file name
        :return: top level mapping
        '''
        l_path = Path(filename)
        if not l_path.is_file():
            raise InputError(f'problem file {l_path} does not exist')

        l_suffixes = [i_suffix.lower() for i_suffix in l_path.suffixes if i_suffix.lower() != '.gz']
        try:
            if l_suffixes and l_suffixes[-1] == '.json':
                l_data = self.read_json(l_path)
            else:
                l_data = self.read_yaml(l_path)
        except (ValueError, yaml.YAMLError, OSError) as error:
            raise InputError(f'cannot parse {l_path}: {error}') from error

        if not isinstance(l_data, dict):
            raise InputError(f'{l_path} does not contain a mapping at top level')
        return l_data


class Writer(object):
    '''Class for writing data to json, yaml, csv, hdf5.'''

    def __init__(self, args=None):
        if args is not None:
            self._log = phimax.common.log.logger(__name__, args.loglevel, args.quiet, args.logfile)
        else:
            self._log = phimax.common.log.logger(__name__)

    @staticmethod
    def dumps_json(obj) -> str:
        '''
        Serialise obj with fixed layout: insertion ordered keys, two space indent, trailing
        newline. Non-finite floats are rejected, callers encode them beforehand.
        '''
        return json.dumps(obj, indent=2, separators=(',', ': '), allow_nan=False) + '\n'

    def write_json(self, obj, filename: typing.Optional[Path] = None):
        '''Write json, to stdout if filename is None, compress file with gzip if filename ends with .gz.'''

        if filename is None:
            sys.stdout.write(Writer.dumps_json(obj))
            return

        self._log.debug('Writing %s', filename)
        with _open_text(filename, 'w') as f_json:
            f_json.write(Writer.dumps_json(obj))

    def write_yaml(self, obj, filename: Path, default_flow_style=False):
        '''Write yaml, compress file with gzip if filename ends with .gz.'''

        self._log.debug('Writing %s', filename)
        with _open_text(filename, 'w') as f_yaml:
            yaml.dump(
                data=obj,
                stream=f_yaml,
                Dumper=SafeDumper,
                default_flow_style=default_flow_style
            )

    def write_csv(self, table: pandas.DataFrame, filename: typing.Optional[Path] = None):
        '''
        Write a table as csv with headers and 17 significant digits, to stdout if filename is
        None.
        '''

        l_text = table.to_csv(index=False, float_format='%.17g', lineterminator='\n')
        if filename is None:
            sys.stdout.write(l_text)
            return

        self._log.debug('Writing %s', filename)
        with _open_text(filename, 'w') as f_csv:
            f_csv.write(l_text)

    def write_hdf5(self, object_dict: dict, hdf5_file: str, hdf5_base_path: str, **kwargs):
        r'''
        Write an object to a specific path into an open file, identified by fileid

        :param hdf5_file: The file name
        :param hdf5_base_path: Destination path in HDF5 structure, will be created if not existent.
        :param object_dict: Object(s) to be stored in a named dictionary structure
            ([name] -> {'value': str|int|float|list|numpy, 'attr': dict})
        :param \*\*kwargs: Optional arguments passed to create_dataset
        '''

        self._log.debug('Writing %s', hdf5_file)

        if not isinstance(object_dict, dict):
            raise TypeError('objectdict is not a dictionary')

        with h5py.File(hdf5_file, mode='a') as f_hdf5:

            l_group = f_hdf5[hdf5_base_path] \
                if hdf5_base_path in f_hdf5 else f_hdf5.create_group(hdf5_base_path)

            for i_path, i_object_value in Writer._flatten_object_dict(object_dict).items():

                l_kwargs = dict(kwargs)
                # scalars can't be chunked or filtered
                if isinstance(
                        i_object_value.get('value'),
                        (str, int, float, numpy.str_, numpy.integer, numpy.floating)):
                    for i_key in ('compression', 'compression_opts', 'fletcher32', 'chunks'):
                        l_kwargs.pop(i_key, None)

                if i_path in l_group:
                    self._log.debug('removing previous path %s', i_path)
                    del l_group[i_path]

                if i_object_value.get('value') is not None \
                        and i_object_value.get('attr') is not None:
                    l_value = i_object_value.get('value')
                    if isinstance(l_value, (str, numpy.str_)):
                        l_data = str(l_value)
                    elif isinstance(l_value, (list, tuple)) and l_value \
                            and all(isinstance(i_v, str) for i_v in l_value):
                        l_data = numpy.asarray(l_value, dtype=h5py.string_dtype())
                    else:
                        l_data = numpy.asarray(l_value)
                    try:
                        l_group.create_dataset(
                            name=i_path,
                            data=l_data,
                            **l_kwargs
                        ).attrs.update(
                            i_object_value.get('attr')
                            if isinstance(i_object_value.get('attr'), dict) else {}
                        )
                    except TypeError as error:
                        self._log.error(
                            'error writing %s: %s (%s), error was: %s',
                            i_path,
                            l_value,
                            type(l_value),
                            error
                        )
                        raise TypeError(error)

    @staticmethod
    def _flatten_object_dict(dictionary: dict) -> dict:
        '''
        Flatten dictionary and apply a '/'-separated key (path) structure for HDF5 writing,
        except where a sub-dictionary has a key named 'value', which marks a leaf.

        :param dictionary: dictionary
        :return: dictionary with flattened structure
        '''
        def items():
            '''
            Expand dictionary.

            :return: (key, value) pairs
            '''
            for i_k, i_v in dictionary.items():
                if isinstance(i_v, dict) and 'value' not in i_v:
                    for i_sk, i_sv in Writer._flatten_object_dict(i_v).items():
                        yield f'{i_k}/{i_sk}', i_sv
                else:
                    yield i_k, i_v
        return dict(items())
