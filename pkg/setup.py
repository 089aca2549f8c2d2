# -*- coding: utf-8 -*-
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
'''setup.py'''
from setuptools import find_packages
from setuptools import setup

from phimax import __version__ as VERSION

NAME = 'phimax'
DESCRIPTION = 'Abstract convexity toolkit: Phi-subdifferentials, intersection property and minimax certificates'

setup(
    name=NAME,
    version=VERSION,
    description=DESCRIPTION,
    long_description=open('readme.md').read(),
    long_description_content_type='text/markdown',
    # Get strings from http://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        'Programming Language :: Python',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3 :: Only',
        'Topic :: Scientific/Engineering :: Mathematics',
        'License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)'
    ],
    keywords='abstract convexity subdifferential minimax intersection property',
    author='the phimax developers',
    license='LGPL',
    packages=find_packages(exclude=['examples', 'examples.*', 'tests', 'tests.*']),
    package_data={'phimax': ['resources/problems/*.yaml']},
    include_package_data=True,
    zip_safe=False,
    python_requires='>=3.8',
    tests_require=['pytest', 'hypothesis'],
    command_options={
        'build_sphinx': {
            'project': ('setup.py', DESCRIPTION),
            'version': ('setup.py', VERSION),
            'release': ('setup.py', VERSION),
        }
    },
    install_requires=tuple(
        filter(
            lambda r: r and r.find('git+http') == -1, (r.strip() for r in open('requirements.txt').readlines())
        )
    ),
    entry_points={
        'console_scripts': ['phimax=phimax.__main__:main']
    }
)
