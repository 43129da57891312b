"""Monomial bases of so(2n+1)-modules from weighted Dyck-path polytopes."""

from .gtbij import GTPattern, enumerate_gt, f_map, g_map, validate_gt
from .kernel import SpanBasis, fmt_rational, parse_rational, rank, solve_in_span, span_insert
from .patterns import (
    Triangle,
    dyck_paths,
    enumerate_pi,
    grad_of,
    in_pi,
    m_bound,
    polytope_h_rep,
    s_sum,
)
from .pbw import Word, is_arranged, ll_less, ord_word, pbw_normalize, prec, structure_constants
from .repbuild import (
    RepModule,
    apply_word,
    exterior_power,
    irreducible_module,
    spin_rep,
    tensor,
    vector_rep,
)
from .rootsys import DominantWeight, cells, root_of_cell, weight_from_fundamental, weyl_dim
from .verify import (
    BasisPolicy,
    Certificate,
    conjecture_scan,
    degeneration_basis_check,
    graded_dims,
    minkowski_decompose,
    monomials_for,
    straighten,
    verify_basis,
)

__version__ = "0.1.0"
