"""Exact-arithmetic toolkit for ADHM data on the projective line and
the associated framed perverse instantons on projective 3-space."""

from .adhm import (
    AdhmDatum,
    ConstantDatum,
    GroupElement,
    MomentValue,
    P1Point,
    UnstableLocus,
    act,
    chern,
    du_decompose,
    evaluate,
    is_adhm,
    is_costable,
    is_fj_costable,
    is_fj_regular,
    is_fj_semistable,
    is_fj_stable,
    is_regular,
    is_stable,
    moment_map,
    reachable_subspace,
    try_polystable_split,
    unobservable_subspace,
    unstable_locus,
)
from .linalg import Matrix, Subspace, closure
from .poly import Poly, gcd_univariate
from .polymatrix import PolyMatrix
from .scalars import Scalar, parse_scalar, rat

__version__ = "0.1.0"

__all__ = [
    "AdhmDatum", "ConstantDatum", "GroupElement", "MomentValue", "P1Point",
    "UnstableLocus", "act", "chern", "du_decompose", "evaluate", "is_adhm",
    "is_costable", "is_fj_costable", "is_fj_regular", "is_fj_semistable",
    "is_fj_stable", "is_regular", "is_stable", "moment_map",
    "reachable_subspace", "try_polystable_split", "unobservable_subspace",
    "unstable_locus", "Matrix", "Subspace", "closure", "Poly",
    "gcd_univariate", "PolyMatrix", "Scalar", "parse_scalar", "rat",
    "__version__",
]
