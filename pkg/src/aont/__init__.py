"""Binary all-or-nothing transforms: GF(2) matrices, submatrix densities,
density bounds, constructions, search, and a working codec."""

from .bounds import bound, build_qp, gamma, r1_max, r2_upper_basic, r2_upper_qp, solve_simplex_qp
from .constructions import (
    FieldMatrix,
    cauchy_matrix,
    cyclotomic_matrix,
    cyclotomy_context,
    doubled_matrix,
    is_linear_t_aont,
    jsi_matrix,
    lehmer_matrix,
    meq_matrix,
    pg3_matrix,
)
from .density import count_invertible, count_invertible_2_fast, density
from .designs import Design, incidence_matrix, verify_bibd
from .errors import AontError, DataError
from .field import FiniteField
from .gf2 import BinaryMatrix, Gf2Poly, SubmatrixIndex, invert, is_invertible, rank
from .search import SearchConfig, run_search
from .transform import AontArray, AontCodec, aont_to_array, verify_t_aont_array

__version__ = "0.1.0"

__all__ = [
    "bound",
    "build_qp",
    "gamma",
    "r1_max",
    "r2_upper_basic",
    "r2_upper_qp",
    "solve_simplex_qp",
    "FieldMatrix",
    "cauchy_matrix",
    "cyclotomic_matrix",
    "cyclotomy_context",
    "doubled_matrix",
    "is_linear_t_aont",
    "jsi_matrix",
    "lehmer_matrix",
    "meq_matrix",
    "pg3_matrix",
    "count_invertible",
    "count_invertible_2_fast",
    "density",
    "Design",
    "incidence_matrix",
    "verify_bibd",
    "AontError",
    "DataError",
    "FiniteField",
    "BinaryMatrix",
    "Gf2Poly",
    "SubmatrixIndex",
    "invert",
    "is_invertible",
    "rank",
    "SearchConfig",
    "run_search",
    "AontArray",
    "AontCodec",
    "aont_to_array",
    "verify_t_aont_array",
]
