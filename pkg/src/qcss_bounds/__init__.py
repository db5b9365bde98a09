"""Correlation lower bounds for quasi-complementary sequence sets.

Welch bound, generalized Levenshtein bound (GLB) under several weight
families, the frequency-domain view of the GLB quadratic form, and a
brute-force sequence lab for checking the bounds against explicit sets.
"""
from .bounds import (
    BoundKind,
    BoundResult,
    glb,
    glb_chebyshev,
    glb_cosine_asymptotic,
    glb_cosine_exact,
    glb_simplified,
    glb_sine,
    glb_sine_asymptotic,
    glb_sine_best,
    glb_step,
    glb_step_best,
    k_bar,
    welch_bound,
)
from .circulant import ConsistencyError, QcssParams, Spectrum, spectrum_closed_form
from .optimizer import classify_case, local_min_check, solve_problem1
from .seqlab import SequenceSet, golay_pcss, random_qcss, tolerances, verify_bounds
from .weights import (
    chebyshev_weights,
    cosine_weights,
    sine_weights,
    step_weights,
    uniform_weights,
    validate_simplex,
)

__version__ = "0.1.0"

__all__ = [
    "BoundKind",
    "BoundResult",
    "ConsistencyError",
    "QcssParams",
    "SequenceSet",
    "Spectrum",
    "chebyshev_weights",
    "classify_case",
    "cosine_weights",
    "glb",
    "glb_chebyshev",
    "glb_cosine_asymptotic",
    "glb_cosine_exact",
    "glb_simplified",
    "glb_sine",
    "glb_sine_asymptotic",
    "glb_sine_best",
    "glb_step",
    "glb_step_best",
    "golay_pcss",
    "k_bar",
    "local_min_check",
    "random_qcss",
    "sine_weights",
    "solve_problem1",
    "spectrum_closed_form",
    "step_weights",
    "tolerances",
    "uniform_weights",
    "validate_simplex",
    "verify_bounds",
    "welch_bound",
]
