"""Exact certificates and exponential lower bounds for counting square-free
words whose letters are drawn from adversarially chosen lists."""

from .bounds import (
    GrowthBound,
    check_beta_four,
    check_beta_main,
    estimate_lambda_size,
    growth_bound,
    search_beta,
)
from .errors import InputError, ResourceGuardError, SqfreeError, VerificationError
from .graph import TransitionGraph, build_graph, min_list_sum
from .lambda_set import WALK_START, LambdaSet, build_lambda, classify, step, walk_step
from .oracle import (
    GrowthChecker,
    WeightedCount,
    adversary_min_count,
    brute_lambda,
    check_weighted_growth,
    count_squarefree,
)
from .weights import (
    Certificate,
    compute_alpha,
    iterate,
    renormalize,
    run_fixed_point,
    verify_certificate,
)
from .words import find_square, is_minimal_square, normalize

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "GrowthBound",
    "GrowthChecker",
    "InputError",
    "LambdaSet",
    "ResourceGuardError",
    "SqfreeError",
    "TransitionGraph",
    "VerificationError",
    "WeightedCount",
    "adversary_min_count",
    "brute_lambda",
    "build_graph",
    "build_lambda",
    "check_beta_four",
    "check_beta_main",
    "check_weighted_growth",
    "classify",
    "compute_alpha",
    "count_squarefree",
    "estimate_lambda_size",
    "find_square",
    "growth_bound",
    "is_minimal_square",
    "iterate",
    "min_list_sum",
    "normalize",
    "renormalize",
    "run_fixed_point",
    "search_beta",
    "step",
    "verify_certificate",
    "walk_step",
    "WALK_START",
]
