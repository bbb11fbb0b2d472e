"""Exact toolkit for homogeneous algebraic branching programs, strength and slice rank."""

from .abp import Abp, Edge, evaluate_abp, expand, naive_abp_from_polynomial, validate
from .algebra import GF, QQ, ExactMatrix, MismatchError, field_from_tag, rank, rref, solve_linear
from .bounds import (
    BoundInput,
    BoundReport,
    kumar_abp_lb,
    p_family_report,
    power_sum_report,
    restricted_strength_lb,
    shioda_report,
    strength_lb_sing,
)
from .chain import IdealChain, check_inclusion, extract_chain, synthesize_abp
from .checks import Check
from .decomp import (
    StrengthDecomposition,
    p_restricted_decomposition,
    s_hat_slice_decomposition,
    shioda_slice_decomposition,
    slice_from_subspace,
    subspace_from_slice,
    swap_factors,
    verify,
)
from .families import describe, figure1_abp, make_P, make_power_sum, make_S, make_S_hat
from .poly import LinearForm, Polynomial, pencil_coefficients, polar_pairing
from .singular import pure_power_reduce, sing_generators, verify_claimed_sing
from .subspace import (
    BudgetExceeded,
    LinearSubspace,
    build_chart_systems,
    contains_check,
    exhaustive_search,
    gaussian_binomial,
    propagation_refute,
    search_through_point,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
