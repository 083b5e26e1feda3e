"""Exact lattice toolkit: polarizations, L(M,N,k) constructions, certified
minimum norms, and the rank-72 norm-6 decision search.

The heavy lifting lives in the C++ extension module ``latpol._core``; this
package re-exports its public names.
"""

from latpol._core import (  # noqa: F401
    Lattice,
    LmnResult,
    PolarizationPair,
    PolicyRefusal,
    build_lmn,
    classify,
    enumerate_short,
    identify_root_system,
    make_standard,
    min_norm,
    offender_search_sampled,
    preset,
    standard_pair,
)

__all__ = [
    "Lattice",
    "LmnResult",
    "PolarizationPair",
    "PolicyRefusal",
    "build_lmn",
    "classify",
    "enumerate_short",
    "identify_root_system",
    "make_standard",
    "min_norm",
    "offender_search_sampled",
    "preset",
    "standard_pair",
]
