"""Exact Cech-Dolbeault calculus with numeric cycle integration.

The symbolic layer (scalars, forms, cochains, kernels) is exact: rational
functions of a formal circle constant over Gaussian rationals, Wirtinger
polynomial coefficients with designated quadratic denominators, and the
identities of the calculus hold on the nose.  The numeric layer
(cycles, quadrature, cutoffs, hyperfunction pairings) evaluates compiled
forms over deterministic tensor-product charts.
"""

from .cech import (
    Cochain,
    Covering,
    Domain,
    cech_delta,
    check_relative,
    coordinate_covering,
    cup,
    cup_relative,
    del_total,
    domain_check,
    is_cocycle,
    pair_covering,
    pair_components,
    relative_pair,
    vartheta,
)
from .context import complex_space, real_space
from .cycles import (
    Ball,
    Cutoff,
    NegatedBoundaryOfBall,
    QuadratureSpec,
    RealSphere,
    Shell,
    Sphere,
    Torus,
    globalize_two_set,
    integrate,
    integrate_relative_pair,
    stokes_pairing_check,
    transfer_check,
)
from .forms import (
    Coefficient,
    Form,
    bidegree_component,
    dbar,
    del_,
    eval_numeric,
    form_eq,
    substitute,
    wedge,
)
from .hyper import (
    HyperformRep,
    d_hyper,
    delta_form,
    delta_function,
    embed_analytic,
    mult_analytic,
    one_as_hyperfunction,
    pair,
    pair_on_ball,
    partial_x,
    restrict,
)
from .kernels import (
    MultiIndex,
    angular_form,
    bm_zero,
    bochner_martinelli,
    cauchy,
    cauchy_zero,
    correspondence_piece,
    make_Phi,
    make_Phi_i,
    make_Phibar_Istar,
    verify_correspondence,
)
from .parser import parse_form
from .poly import Polynomial
from .scalars import Scalar

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
