"""Exact invariants of plane curve singularities: relative Newton polygons,
Newton-Puiseux roots, polar branches and quotients, and gradient exponents."""

from .errors import *  # noqa: F401,F403
from .invariants import (
    InvariantReport,
    QuotientSet,
    degree_bounds,
    ell_of_arc,
    gradient_exponent_complex,
    gradient_exponent_real,
    intersection_multiplicity,
    numeric_exponent_estimate,
    polar_quotients,
)
from .newton import NewtonDiagram, NewtonDot, NewtonEdge, ell_heights, polygon_edges, relative_diagram, substitute
from .numbers import INF, ApproxField, GaussRat, approx_field
from .parser import format_arc, format_poly, format_series, parse_arc, parse_poly
from .poly import BivarPoly
from .puiseux import (
    Branch,
    BranchSet,
    GenericConstant,
    GenericSampler,
    approximation,
    expand_roots,
    mini_regularize,
    polar_branches,
    real_polar_branches,
    slide,
    slide_to_stability,
)
from .series import PuiseuxSeries, contact_order, series_order
from .sqf import squarefree_decompose_x

__version__ = "0.1.0"
