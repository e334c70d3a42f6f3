"""Exact polyharmonic function toolkit for the 3-dimensional model geometries.

Symbolic tension (Laplace-Beltrami) and conformality operators over exact
Gaussian-rational term algebras on sol, nil, sl2, the hyperbolic disc, the
punctured sphere, the line and their products; generators for the explicit
harmonic and polyharmonic families; and a metric-derived finite-difference
oracle that cross-validates every symbolic operator rule.
"""

from .algebra import AtomSet, Expr, Term
from .errors import ClosureError, DomainError, ParseError, UsageError
from .families import (
    AnsatzSystem,
    FAMILIES,
    FamilyDescriptor,
    generate_kernel,
    log_biharmonic,
    nil_biharmonic12,
    nil_harmonic,
    product_r_harmonic,
    separable_product,
    sl2_biharmonic6,
    sl2_harmonic,
    sol_axis_family,
    sol_h2h3,
    sol_mixed_harmonic,
    sol_tower,
    sol_tower_literal,
)
from .geometries import (
    Geometry,
    ProductGeometry,
    VerificationReport,
    by_id,
    classify,
    disc_times_line,
    hyperbolic_disc,
    iterated_tension,
    line,
    nil,
    product,
    product_tension_binomial,
    punctured_sphere,
    sl2,
    sol,
    sphere_times_line,
)
from .linalg import ExactMatrix, nullspace, rank, rref, solve
from .oracle import OracleConfig, ResidualReport, cross_validate, fd_tension, metric_at
from .parser import parse, parse_scalar
from .rationals import GaussianRational, Rational

__version__ = "0.1.0"
