#! /usr/bin/env python
# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""Module setup."""

import glob
import io
from setuptools import setup


with io.open("README.md", "r", encoding="utf-8") as readme_file:
    readme = readme_file.read()

setup_args = {
    "name": "cfhelium",
    "description": "cfhelium: correction-function solver for heliumlike ions",
    "long_description": readme,
    "long_description_content_type": "text/markdown",
    "license": "BSD",
    "author": "the cfhelium developers",
    "packages": ["cfhelium", "cfhelium.data", "cfhelium.tests"],
    "package_data": {"cfhelium": ["data/*.json"]},
    "scripts": glob.glob("scripts/*"),
    "include_package_data": True,
    "install_requires": [
        "astropy",
        "numpy",
        "pandas",
        "scipy",
        "setuptools_scm",
        "tabulate",
    ],
    "extras_require": {
        "dev": [
            "pytest",
            "pre-commit",
        ],
    },
    "classifiers": [
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Physics",
    ],
}

if __name__ == "__main__":
    setup(**setup_args)
