"""Sampling disjoint k-subsets with shared entanglement.

Thin python surface over the C++ core: exact Kneser-graph spectra,
epsilon-approximate low-rank truncation plans, seeded measurement
simulation, and classical resource baselines.
"""

from ._qsampler import (  # noqa: F401
    __version__,
    b_matrix,
    binomial,
    chi_matrix,
    classical_samples,
    count_disjoint_pairs,
    disjoint,
    distribution,
    draw_samples,
    eigenbasis,
    gap_row,
    plan,
    rank_subset,
    spectrum,
    truncated_state,
    tvd,
    unrank_subset,
    verify_suite,
    violation_mass,
)

__all__ = [
    "__version__",
    "b_matrix",
    "binomial",
    "chi_matrix",
    "classical_samples",
    "count_disjoint_pairs",
    "disjoint",
    "distribution",
    "draw_samples",
    "eigenbasis",
    "gap_row",
    "plan",
    "rank_subset",
    "spectrum",
    "truncated_state",
    "tvd",
    "unrank_subset",
    "verify_suite",
    "violation_mass",
]
