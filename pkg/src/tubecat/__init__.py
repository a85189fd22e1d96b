"""Toolkit for the bounded derived category of a rank-p tube.

Closed-form graded homs, simple-minded collections and their classification,
mutation, bounded exchange-graph exploration and Ext-quivers, with an
explicit-matrix oracle cross-validating every formula.
"""

from .core import TubeObject, tau, top, soc, factors, hom_dim, ext1_dim, fundamental_sequences
from .derived import StalkObject, stalk, shift, tau_derived, graded_hom, euler_form, k0_class

__all__ = [
    "TubeObject",
    "StalkObject",
    "stalk",
    "tau",
    "top",
    "soc",
    "factors",
    "hom_dim",
    "ext1_dim",
    "fundamental_sequences",
    "shift",
    "tau_derived",
    "graded_hom",
    "euler_form",
    "k0_class",
]
