"""Vector bundles on P^1 in split normal form, Birkhoff splitting, and the chart engine."""
from .birkhoff import BirkhoffSplitting, TransitionBundle, birkhoff_split
from .core import O, BundleMap, DirectSum, SplitBundle, block_map, direct_sum_map, stack_maps_cols, stack_maps_rows
from .ops import (
    CokernelReport,
    Cohomology,
    ImageReport,
    cohomology,
    cokernel,
    dual,
    dual_map,
    ext1_basis,
    ext1_dim,
    factor_through_injection,
    factor_through_surjection,
    hom_space,
    image_contained,
    image_saturation,
    is_strict_injection,
    is_strict_surjection,
    kernel,
    rank_of_map,
    same_subbundle,
    tensor,
    tensor_map,
    twist,
    twist_map,
    zero_bundle,
)

__all__ = [
    "BirkhoffSplitting", "TransitionBundle", "birkhoff_split",
    "O", "BundleMap", "DirectSum", "SplitBundle", "block_map", "direct_sum_map",
    "stack_maps_cols", "stack_maps_rows",
    "CokernelReport", "Cohomology", "ImageReport", "cohomology", "cokernel", "dual", "dual_map",
    "ext1_basis", "ext1_dim", "factor_through_injection", "factor_through_surjection",
    "hom_space", "image_saturation", "is_strict_injection", "is_strict_surjection", "kernel",
    "rank_of_map", "same_subbundle", "image_contained", "zero_bundle", "tensor", "tensor_map", "twist", "twist_map",
]
