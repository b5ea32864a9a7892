# -*- mode: python; coding: utf-8 -*-
# Copyright (c) 2020 Radio Astronomy Software Group
# Licensed under the 2-clause BSD License

"""Define branch_scheme for versioning."""


def branch_scheme(version):  # pragma: nocover
    """
    Local version scheme that adds the branch name for absolute reproducibility.

    Release tags and detached builds get a date stamp, the default branches get the
    node hash and any other branch also gets its name appended.
    """
    if version.exact or version.node is None:
        return version.format_choice("", "+d{time:{time_format}}", time_format="%Y%m%d")
    if version.branch in ("main", "master"):
        return version.format_choice("+{node}", "+{node}.dirty")
    return version.format_choice("+{node}.{branch}", "+{node}.{branch}.dirty")
