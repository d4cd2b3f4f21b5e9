"""Principal blocks of category O for rational Cherednik algebras of G(r,1,n)."""
from .block import build_labeling, enumerate_block, st_pair, tight_check
from .characters import GradedDimension, g2_dim_formula, graded_dimension, monomial_basis_count, oblomkov_yun_check
from .combinatorics import Params, RPartition, syt_count
from .decomposition import bgg_resolution, conjecture_check, graded_dec_matrix, inverse_dec_matrix, quivers
from .graph import build_gamma, fundamental_submodules, lowest_degree_isotype
from .oracle import attach_lattice, intersection_lattice, isotype_oracle

__all__ = [
    "GradedDimension",
    "Params",
    "RPartition",
    "attach_lattice",
    "bgg_resolution",
    "build_gamma",
    "build_labeling",
    "conjecture_check",
    "enumerate_block",
    "fundamental_submodules",
    "g2_dim_formula",
    "graded_dec_matrix",
    "graded_dimension",
    "intersection_lattice",
    "inverse_dec_matrix",
    "isotype_oracle",
    "lowest_degree_isotype",
    "monomial_basis_count",
    "oblomkov_yun_check",
    "quivers",
    "st_pair",
    "syt_count",
    "tight_check",
]
