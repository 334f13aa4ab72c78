#!/usr/bin/env python
# -*- coding: utf-8 -*-
import os

import setuptools

name = 'ObsLin'
version = '0.1.0'
description = (
    "ObsLin is a Python package designing observers of discrete-time "
    "nonlinear systems by exact linearization."
)
with open("README.rst", "r") as readme:
    long_description = readme.read()
keywords = (
    "observer nonlinear discrete-time linearization state estimation "
    "neural network physics-informed levenberg-marquardt power series "
    "control library python"
)
license = 'LGPL v3'
doc_build_dir = 'doc/build'
doc_source_dir = 'doc/source'

cmdclass = {}
command_options = {}
# 'build_doc' option
try:
    from sphinx.setup_command import BuildDoc

    if not os.path.exists(doc_build_dir):
        os.mkdir(doc_build_dir)
    cmdclass.update({'build_doc': BuildDoc})
    command_options.update(
        {
            'build_doc': {
                'version': ('setup.py', version),
                'release': ('setup.py', version),
                'source_dir': ('setup.py', doc_source_dir),
                'build_dir': ('setup.py', doc_build_dir),
                'builder': ('setup.py', 'html'),
            }
        }
    )
except Exception:
    print(
        "No Sphinx module found. You have to install Sphinx "
        "to be able to generate the documentation."
    )

setuptools.setup(
    name=name,
    version=version,
    description=description,
    long_description=long_description,
    long_description_content_type="text/x-rst",
    keywords=keywords,
    packages=['obslin', 'obslin.tests'],
    python_requires='>=3.7',
    install_requires=['numpy>=1.22', 'scipy>=1.7', 'lark>=1.0'],
    entry_points={'console_scripts': ['obslin = obslin.cli:main']},
    license=license,
    cmdclass=cmdclass,
    command_options=command_options,
    classifiers=[
        "Intended Audience :: Science/Research",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: Implementation :: CPython",
        "License :: OSI Approved :: GNU Library or Lesser General Public License (LGPL)",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Software Development :: Libraries :: Python Modules",
    ],
)
