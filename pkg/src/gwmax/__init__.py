"""Maximal diagonal symmetry groups of quasihomogeneous polynomials."""

__version__ = "0.1.0"

from .errors import GwmaxError
from .gmax import (
    GmaxResult,
    brute_force_gmax,
    gmax_smith,
    gmax_submatrix,
    is_member,
    weight_group_order,
)
from .kernels import BACKEND
from .polynomial import (
    ExponentMatrix,
    Polynomial,
    WeightSystem,
    build_wn,
    check_admissible,
    classify_invertible,
    enumerate_monomials,
    exponent_matrix,
    parse,
    weights,
)
from .qz_group import (
    FiniteSubgroup,
    GroupElement,
    canonicalize,
    element_order,
    generate,
    intersect,
    order,
)
from .snf import SmithDecomposition, smith_normal_form, verify
