"""Exact algebra over the Gaussian rationals."""

from .scalars import Gauss, ZERO, ONE, I, parse_scalar, format_scalar, coerce
from .linalg import (
    Subspace, canonical_subspace, subspace_intersect, psd_check, positive_definite,
    charpoly, det, rref, nullspace, solve, is_hermitian, vec,
)
from .staralg import StarAlgebra, central_blocks, block_ideal, NotCStarAlgebra, UnsupportedInstance
