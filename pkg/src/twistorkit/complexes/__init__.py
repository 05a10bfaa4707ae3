"""Filtered complexes of bundles, spectral sequences, cones and gluing."""
from .filtered import (
    Complex,
    FilteredComplex,
    FilteredMap,
    HReport,
    MtcReport,
    cohomology_sheaves,
    cone,
    direct_sum,
    shift,
    simplicial_total,
    validate_mtc,
)
from .generate import koszul, mts_in_degree, pure_shift, random_mtc
from .patch import ChartCohomology, ChartComplex, PatchResult, chart_cohomology, cone_prime, patch, patch_chain
from .spectral import SpectralEntry, SpectralPage, SpectralSequence, degeneration_check, spectral_sequence

__all__ = [
    "Complex", "FilteredComplex", "FilteredMap", "HReport", "MtcReport", "cohomology_sheaves",
    "cone", "direct_sum", "shift", "simplicial_total", "validate_mtc",
    "koszul", "mts_in_degree", "pure_shift", "random_mtc",
    "ChartCohomology", "ChartComplex", "PatchResult", "chart_cohomology", "cone_prime", "patch", "patch_chain",
    "SpectralEntry", "SpectralPage", "SpectralSequence", "degeneration_check", "spectral_sequence",
]
