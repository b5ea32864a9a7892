#! /usr/bin/env python
# -*- mode: python; coding: utf-8 -*-
# Copyright 2026 the cfhelium developers
# Licensed under the 2-clause BSD license.

"""
Correction-function energies, curves and surface samples of heliumlike ions.

Examples
--------
cfhelium.py solve --ion He --state singlet --case fixed-z
cfhelium.py table --ions He,Li --output-dir results
cfhelium.py demo --z 1
cfhelium.py sample -n 3 -p 1 --count 5 --seed 7

"""

import sys

from cfhelium import cf_cli

if __name__ == "__main__":
    sys.exit(cf_cli.main())
