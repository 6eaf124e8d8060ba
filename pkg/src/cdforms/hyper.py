"""Hyperfunctions and hyperforms as relative Dolbeault pairs.

A p-hyperform is a pair (xi1, xi01): a (p,n)-form near the real locus and
a (p,n-1)-form off it, with xi1 = dbar(xi01) on the overlap.  All symbolic
work uses the usual complex orientation; the hyperfunction orientation
convention enters only as the documented sign (-1)^(n(n+1)/2) applied by
the pairing, so the sign lives in exactly one place.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .context import complex_space, real_space, NORM_X, NORM_Z_MINUS_ZBAR
from .cycles import QuadratureSpec, integrate_relative_pair
from .forms import Form, form_eq
from .kernels import angular_form, bm_zero, bochner_martinelli, make_Phi
from .poly import Polynomial
from .scalars import I, ONE, Scalar

FULL_DOMAIN = "Rn"
PUNCTURED_DOMAIN = "Rn-minus-origin"
_REFINES = {FULL_DOMAIN: {FULL_DOMAIN}, PUNCTURED_DOMAIN: {FULL_DOMAIN, PUNCTURED_DOMAIN}}


class SupportError(ValueError):
    pass


@dataclass(frozen=True)
class HyperformRep:
    """Representative pair of a p-hyperform on an open subset of R^n."""

    n: int
    p: int
    xi1: Form
    xi01: Form
    support: str = "general"  # "origin" for compact support at the origin
    domain: str = FULL_DOMAIN

    def __post_init__(self):
        if not form_eq(self.xi1, self.xi01.dbar()):
            raise ValueError(
                "pair violates the cocycle condition xi1 = dbar(xi01)"
            )

    @property
    def ctx(self):
        return complex_space(self.n)

    def components(self):
        return self.xi1, self.xi01

    def map_components(self, fn, **changes):
        return replace(self, xi1=fn(self.xi1), xi01=fn(self.xi01), **changes)


def _orientation_sign(n):
    return Scalar.from_int(-1 if (n * (n + 1) // 2) % 2 else 1)


def delta_function(n):
    """The hyperfunction supported at the origin whose pairing with h * Phi
    evaluates h at 0: represented by (0, -(-1)^(n(n+1)/2) * bm_zero)."""
    ctx = complex_space(n)
    xi01 = bm_zero(n).scale(-_orientation_sign(n))
    return HyperformRep(n, 0, Form.zero(ctx), xi01, support="origin")


def delta_form(n):
    """The n-hyperform analogue, represented through the full
    Bochner-Martinelli kernel."""
    ctx = complex_space(n)
    xi01 = bochner_martinelli(n).scale(-_orientation_sign(n))
    return HyperformRep(n, n, Form.zero(ctx), xi01, support="origin")


def _real_to_complex_rules(n):
    ctx = complex_space(n)
    rules = {}
    half_over_i = (ONE / (Scalar.from_int(2) * I))
    for i in range(1, n + 1):
        diff = ctx.poly_var(f"z{i}") - ctx.poly_var(f"zbar{i}")
        rules[f"x{i}"] = diff.scale(half_over_i)
    return rules


def one_component(n):
    """(0, n-1)-component of the angular form pulled through
    y = (z - zbar)/(2i); the building block of 1 as a hyperfunction."""
    psi = angular_form(n)
    ctx = complex_space(n)
    pulled = psi.substitute(
        _real_to_complex_rules(n),
        target_ctx=ctx,
        quad_rules={NORM_X: (Scalar.rational(1, 2), NORM_Z_MINUS_ZBAR)},
    )
    return pulled.bidegree_component(0, n - 1)


def one_as_hyperfunction(n):
    """1 as a hyperfunction: the pair (0, -psi_n^(0,n-1))."""
    comp = one_component(n)
    return HyperformRep(n, 0, Form.zero(complex_space(n)), -comp)


def one_component_closed_form(n):
    """The same component written directly:
    i^n C_n sum_i (-1)^i (z_i - zbar_i) dzbar_1 ^ .. (i-th omitted) .. ^ dzbar_n
    over |z - zbar|^n, with C_n the angular constant."""
    from .kernels import angular_constant

    ctx = complex_space(n)
    c = angular_constant(n) * I**n
    half = n % 2
    quad_power = (n + half) // 2
    out = Form.zero(ctx)
    for i in range(1, n + 1):
        sign_c = c if i % 2 == 0 else -c
        num = (ctx.poly_var(f"z{i}") - ctx.poly_var(f"zbar{i}")).scale(sign_c)
        if half:
            num = num * ctx.poly_var(ctx.sqrt_index[NORM_Z_MINUS_ZBAR])
        from .forms import Coefficient

        coef = Coefficient(
            ctx,
            num,
            den_quads=tuple(
                quad_power if name == NORM_Z_MINUS_ZBAR else 0
                for name in ctx.quad_names
            ),
        )
        piece = Form.from_coefficient(coef)
        for j in range(1, n + 1):
            if j != i:
                piece = piece.wedge(Form.differential(ctx, n + j - 1))
        out = out + piece
    return out


def _complexify(obj, n):
    """Polynomial data on R^n to its holomorphic extension on C^n."""
    ctx = complex_space(n)
    if isinstance(obj, Polynomial):
        obj = Form.from_poly(real_space(n), obj)
    if obj.ctx is ctx:
        return obj
    _require_polynomial(obj)
    rules = {f"x{i}": ctx.poly_var(f"z{i}") for i in range(1, n + 1)}
    return obj.substitute(rules, target_ctx=ctx)


def _require_polynomial(form):
    for mono, coef in form.terms.items():
        if any(coef.den_mono) or any(coef.den_quads):
            raise ValueError("only polynomial data complexifies exactly")
        for name in form.ctx.quad_names:
            if coef.num.max_exponent(form.ctx.sqrt_index[name]):
                raise ValueError("only polynomial data complexifies exactly")


def embed_analytic(omega, n=None):
    """Embed a polynomial p-form on R^n as a p-hyperform: wedge the
    complexification against the 1-representative."""
    if n is None:
        n = omega.ctx.n
    tilde = _complexify(omega, n)
    deg = tilde.bidegree()
    if deg is None or deg[1] != 0:
        raise ValueError("embedding expects a homogeneous real form")
    comp = one_component(n)
    return HyperformRep(
        n, deg[0], Form.zero(complex_space(n)), -(comp.wedge(tilde))
    )


def mult_analytic(f, u):
    """Multiply by the holomorphic extension of a polynomial, on both
    components."""
    tilde = _complexify(f, u.n)
    if tilde.total_degree() != 0:
        raise ValueError("multiplier must be a function, not a form")
    return u.map_components(lambda xi: tilde.wedge(xi))


def partial_x(i, u):
    """Partial derivative along the i-th real direction: differentiate the
    coefficient functions of both components by z_i."""
    if not 1 <= i <= u.n:
        raise ValueError("direction out of range")
    return u.map_components(lambda xi: xi.diff_coefficients(i - 1))


def d_hyper(u):
    """Exterior differential of hyperforms: (-1)^n (del xi1, -del xi01)."""
    if u.p >= u.n:
        raise ValueError("already of top form degree")
    sign = Scalar.from_int(-1 if u.n % 2 else 1)
    return replace(
        u,
        p=u.p + 1,
        xi1=u.xi1.del_().scale(sign),
        xi01=u.xi01.del_().scale(-sign),
    )


def restrict(u, subdomain):
    """Restriction is re-tagging for rational-type representatives; moving
    to the punctured domain clears compact support at the origin."""
    if subdomain not in _REFINES:
        raise ValueError(f"unknown subdomain {subdomain!r}")
    if u.domain not in _REFINES[subdomain]:
        raise ValueError(f"{subdomain!r} does not refine {u.domain!r}")
    support = u.support
    if subdomain == PUNCTURED_DOMAIN:
        support = "general"
    return replace(u, domain=subdomain, support=support)


def pair_on_ball(u, eta, radius=1.0, spec=QuadratureSpec()):
    """Ball-honeycomb pairing in the hyperfunction orientation, without the
    compact-support precondition; callers asking for a true duality pairing
    should use pair()."""
    eta = _complexify(eta, u.n) if not isinstance(eta, Form) or eta.ctx is not u.ctx else eta
    res = integrate_relative_pair(
        u.xi1.wedge(eta) if not u.xi1.is_zero() else None,
        u.xi01.wedge(eta),
        u.n,
        radius=radius,
        spec=spec,
        orientation="hyperfunction",
    )
    return res


def pair(u, eta, radius=1.0, spec=QuadratureSpec()):
    """Duality pairing of a compactly supported hyperform against polynomial
    data: the relative-pair integral in the hyperfunction orientation."""
    if u.support != "origin":
        raise SupportError(
            "pairing requires a representative with compact support at the origin"
        )
    return pair_on_ball(u, eta, radius=radius, spec=spec)


def pairing_test_form(n, h):
    """h * Phi with h polynomial data (given on R^n or C^n)."""
    return _complexify(h, n).wedge(make_Phi(n))
