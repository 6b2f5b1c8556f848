"""Elliptic curves through their 4-point branch sets on the Riemann sphere."""

from .errors import (
    ConcyclicInput,
    DegenerateAlpha,
    DegenerateInput,
    DomainError,
    FourPointsError,
    InvariantViolation,
    NonConvergence,
    ParseError,
    VerificationFailure,
)
from .forms import (
    Edwards,
    Hesse,
    Jacobi,
    Legendre,
    Symmetric,
    Weierstrass,
    branch_points,
    convert,
    hesse_from_lambda,
    hesse_phi,
    is_isomorphic,
    symmetric_parameter_from_lambda,
    weierstrass_from_points,
)
from .invariants import are_equivalent, j_chain, j_invariant, j_of_points, verify_branching
from .moebius import (
    FourPoints,
    MoebiusMap,
    canonicalize,
    cross_ratio,
    cross_ratio_orbit,
    klein_involutions,
    map_from_triple,
)
from .numerics import INF, RHO, CardanoBranch, Polynomial, discriminant, hesse_roots, solve_poly
from .shape import apex_from_angles, circumcircle, cross_ratio_geometric, shape_of, shape_svg

__version__ = "0.1.0"
