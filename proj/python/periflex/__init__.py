"""Flexibility analysis of periodic gain graphs in the plane.

Thin wrapper over the compiled `_periflex` module. Document-level functions
take and return JSON strings; see the project README for the schemas.
"""

from _periflex import (  # noqa: F401
    analyze,
    classify,
    colourings,
    construct,
    coset_line,
    hnf,
    sample,
    sample_csv,
    subgroup_contains,
    switch_vertex,
    verify,
    __version__,
)

__all__ = [
    "analyze",
    "classify",
    "colourings",
    "construct",
    "coset_line",
    "hnf",
    "sample",
    "sample_csv",
    "subgroup_contains",
    "switch_vertex",
    "verify",
]
