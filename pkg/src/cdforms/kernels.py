"""The named kernel forms and the exact correspondence verification.

Everything here is exact: the Bochner-Martinelli form, the n-variable
Cauchy form, the angular form on R^l, and the cochain of homotopy pieces
whose total differential carries the Bochner-Martinelli class to the
signed Cauchy class on the coordinate covering of C^n minus the origin.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .cech import Cochain, cech_delta, coordinate_covering
from .context import NORM_X, NORM_Z, complex_space, real_space
from .forms import Coefficient, Form, form_eq
from .poly import Polynomial
from .reports import CheckRecord, exact_record
from .scalars import ONE, PI, Scalar, TWO_PI_I, factorial


@dataclass(frozen=True)
class MultiIndex:
    """Strictly increasing tuple I in {1..n} with its complement data."""

    n: int
    entries: tuple

    def __post_init__(self):
        if not self.entries:
            raise ValueError("multi-index must be nonempty")
        if list(self.entries) != sorted(set(self.entries)):
            raise ValueError("multi-index must be strictly increasing")
        if self.entries[0] < 1 or self.entries[-1] > self.n:
            raise ValueError("multi-index entries out of range")

    @property
    def complement(self):
        inside = set(self.entries)
        return tuple(j for j in range(1, self.n + 1) if j not in inside)

    @property
    def complement_weight(self):
        return sum(self.complement)

    @property
    def p(self):
        return len(self.entries) - 1

    @property
    def q(self):
        return self.n - len(self.entries) - 1

    @property
    def sign_exponent(self):
        """|I*| + q(n+p-1)/2; integral because q + (n+p-1) = 2n-3 is odd."""
        prod = self.q * (self.n + self.p - 1)
        if prod % 2:
            raise ValueError("sign exponent is not an integer")
        return self.complement_weight + prod // 2


def bm_constant(n):
    """(-1)^(n(n-1)/2) (n-1)! / (2 pi i)^n."""
    sign = Scalar.from_int(-1) ** ((n * (n - 1) // 2) % 2)
    return sign * factorial(n - 1) / (TWO_PI_I**n)


def angular_constant(l):
    if l % 2 == 0:
        k = l // 2
        return factorial(k - 1) / (Scalar.from_int(2) * PI**k)
    k = (l - 1) // 2
    return factorial(2 * k) / (
        Scalar.from_int(2**l) * PI**k * factorial(k)
    )


def make_Phi(n):
    """dz_1 ^ ... ^ dz_n."""
    ctx = complex_space(n)
    out = Form.from_scalar(ctx, ONE)
    for i in range(n):
        out = out.wedge(Form.differential(ctx, i))
    return out


def make_Phi_i(n, i):
    """(-1)^(i-1) z_i dz_1 ^ ... ^ (dz_i omitted) ^ ... ^ dz_n."""
    if not 1 <= i <= n:
        raise ValueError("index out of range")
    ctx = complex_space(n)
    sign = ONE if (i - 1) % 2 == 0 else -ONE
    out = Form.from_poly(ctx, ctx.poly_var(f"z{i}").scale(sign))
    for j in range(1, n + 1):
        if j != i:
            out = out.wedge(Form.differential(ctx, j - 1))
    return out


def make_Phibar_Istar(n, index):
    """sum_mu (-1)^mu zbar_{j_mu} dzbar_{j_0} ^ ... (mu-th omitted) ... ^ dzbar_{j_q}
    over the complement (j_0, ..., j_q) of the multi-index."""
    if not isinstance(index, MultiIndex):
        index = MultiIndex(n, tuple(index))
    ctx = complex_space(n)
    comp = index.complement
    out = Form.zero(ctx)
    for mu, j in enumerate(comp):
        sign = ONE if mu % 2 == 0 else -ONE
        piece = Form.from_poly(ctx, ctx.poly_var(f"zbar{j}").scale(sign))
        for other in comp:
            if other != j:
                piece = piece.wedge(Form.differential(ctx, n + other - 1))
        out = out + piece
    return out


def _bm_sum(n):
    ctx = complex_space(n)
    out = Form.zero(ctx)
    for i in range(1, n + 1):
        sign = ONE if (i - 1) % 2 == 0 else -ONE
        piece = Form.from_poly(ctx, ctx.poly_var(f"zbar{i}").scale(sign))
        for j in range(1, n + 1):
            if j != i:
                piece = piece.wedge(Form.differential(ctx, n + j - 1))
        out = out + piece
    return out


def _over_norm_power(ctx, form, power):
    quad = tuple(power if name == NORM_Z else 0 for name in ctx.quad_names)
    inv = Form.from_coefficient(
        Coefficient(ctx, ctx.poly_one(), den_quads=quad)
    )
    return inv.wedge(form)


def bm_zero(n):
    """(0, n-1)-component kernel: C_n * sum conj(Phi_i) / |z|^(2n).

    The exponent is 2n, forced by dbar-closedness and by the identity
    bm_zero ^ Phi = bochner_martinelli; for n = 1 it reduces to the
    familiar |z|^2."""
    ctx = complex_space(n)
    form = _over_norm_power(ctx, _bm_sum(n).scale(bm_constant(n)), n)
    assert form.dbar().is_zero()
    return form


def bochner_martinelli(n):
    """The dbar-closed (n, n-1) kernel with unit sphere integral."""
    ctx = complex_space(n)
    form = _over_norm_power(
        ctx, _bm_sum(n).scale(bm_constant(n)).wedge(make_Phi(n)), n
    )
    assert form.dbar().is_zero()
    return form


def cauchy_zero(n):
    """(1/(2 pi i))^n / (z_1 ... z_n)."""
    ctx = complex_space(n)
    den = tuple(1 if j < n else 0 for j in range(ctx.nbase))
    coef = Coefficient(
        ctx, ctx.poly_const((ONE / TWO_PI_I) ** n), den_mono=den
    )
    return Form.from_coefficient(coef)


def cauchy(n):
    """The n-variable Cauchy form, a Cech cocycle on the coordinate covering."""
    return cauchy_zero(n).wedge(make_Phi(n))


def angular_form(l):
    """Closed (l-1)-form on R^l minus the origin with unit sphere integral:
    C_l * sum_i Phi_i(x) / |x|^l.  Odd l goes through the formal square
    root of NormX."""
    if l < 1:
        raise ValueError("dimension must be positive")
    ctx = real_space(l)
    c = angular_constant(l)
    half = l % 2
    quad_power = (l + half) // 2
    out = Form.zero(ctx)
    for i in range(1, l + 1):
        sign_c = c if (i - 1) % 2 == 0 else -c
        num = ctx.poly_var(f"x{i}").scale(sign_c)
        if half:
            num = num * ctx.poly_var(ctx.sqrt_index[NORM_X])
        coef = Coefficient(
            ctx,
            num,
            den_quads=tuple(
                quad_power if name == NORM_X else 0 for name in ctx.quad_names
            ),
        )
        piece = Form.from_coefficient(coef)
        for j in range(1, l + 1):
            if j != i:
                piece = piece.wedge(Form.differential(ctx, j - 1))
        out = out + piece
    assert out.d().is_zero()
    return out


def correspondence_piece(n, p, index):
    """(-1)^eps * q! C_n/(n-1)! * Phibar_{I*} ^ Phi / (z_I |z|^(2(q+1))),
    the Cech-degree-p piece of the homotopy cochain at the multi-index I."""
    if n < 2:
        raise ValueError("needs at least two variables")
    if not 0 <= p <= n - 2:
        raise ValueError("piece degree out of range")
    if not isinstance(index, MultiIndex):
        index = MultiIndex(n, tuple(index))
    if len(index.entries) != p + 1:
        raise ValueError("multi-index length must be p + 1")
    ctx = complex_space(n)
    q = index.q
    sign = Scalar.from_int(-1) ** (index.sign_exponent % 2)
    c = sign * factorial(q) * bm_constant(n) / factorial(n - 1)
    den = [0] * ctx.nbase
    for i in index.entries:
        den[i - 1] = 1
    coef = Coefficient(
        ctx,
        ctx.poly_const(c),
        den_mono=tuple(den),
        den_quads=tuple(
            q + 1 if name == NORM_Z else 0 for name in ctx.quad_names
        ),
    )
    return Form.from_coefficient(coef).wedge(
        make_Phibar_Istar(n, index).wedge(make_Phi(n))
    )


def correspondence_cochain(n):
    """The homotopy cochain on the coordinate covering, assembled over all
    strictly increasing multi-indices (alternating extension elsewhere)."""
    ctx = complex_space(n)
    cov = coordinate_covering(n)
    chi = Cochain(cov, ctx, n, n - 2)
    for p in range(n - 1):
        for simplex in cov.simplices(p):
            index = MultiIndex(n, tuple(v + 1 for v in simplex))
            chi.set(p, simplex, correspondence_piece(n, p, index))
    return chi


def verify_correspondence(n):
    """Exact check that the Bochner-Martinelli class equals the signed
    Cauchy class on the coordinate covering.

    For n >= 2 the three identities are verified: dbar chi^0 reproduces the
    Bochner-Martinelli form on every covering member, the mixed terms
    telescope to zero in intermediate degrees, and the Cech boundary of the
    top piece is the signed Cauchy form.  Simplices are checked in
    lexicographic order and a failure names the identity, the simplex and
    the residual form."""
    records = []
    if n == 1:
        start = time.perf_counter()
        beta = bochner_martinelli(1)
        kappa = cauchy(1)
        ok = form_eq(beta, kappa)
        records.append(
            exact_record(
                "bochner-martinelli equals cauchy (n=1)",
                ok,
                residual=str(beta - kappa),
                runtime=time.perf_counter() - start,
            )
        )
        return records

    ctx = complex_space(n)
    cov = coordinate_covering(n)
    beta = bochner_martinelli(n)
    kappa = cauchy(n)
    chi = correspondence_cochain(n)
    corr_sign = Scalar.from_int(-1) ** ((n * (n - 1) // 2) % 2)

    # (i) dbar chi^0 = beta_n on every W_r
    start = time.perf_counter()
    failures = []
    for simplex in cov.simplices(0):
        residual = chi.get(0, simplex).dbar() - beta
        if not residual.is_zero():
            failures.append((simplex, residual))
    records.append(
        exact_record(
            "dbar of the degree-0 piece reproduces the Bochner-Martinelli form",
            not failures,
            residual="; ".join(
                f"simplex {s}: {r}" for s, r in failures
            ),
            runtime=time.perf_counter() - start,
        )
    )

    # (ii) delta chi^(p-1) + (-1)^p dbar chi^p = 0 for 1 <= p <= n-2
    start = time.perf_counter()
    if n == 2:
        records.append(
            exact_record(
                "intermediate telescoping identity",
                True,
                vacuous=True,
                runtime=time.perf_counter() - start,
            )
        )
    else:
        delta_chi = cech_delta(chi)
        failures = []
        for p in range(1, n - 1):
            sign = Scalar.from_int(-1) ** (p % 2)
            for simplex in cov.simplices(p):
                residual = delta_chi.get(p, simplex) + chi.get(
                    p, simplex
                ).dbar().scale(sign)
                if not residual.is_zero():
                    failures.append((p, simplex, residual))
        records.append(
            exact_record(
                "intermediate telescoping identity",
                not failures,
                residual="; ".join(
                    f"degree {p}, simplex {s}: {r}" for p, s, r in failures
                ),
                runtime=time.perf_counter() - start,
            )
        )

    # (iii) delta chi^(n-2) = -(-1)^(n(n-1)/2) kappa_n on the full simplex
    start = time.perf_counter()
    top = tuple(range(n))
    target = kappa.scale(-corr_sign)
    residual = cech_delta(chi).get(n - 1, top) - target
    records.append(
        exact_record(
            "cech boundary of the top piece equals the signed cauchy form",
            residual.is_zero(),
            residual=f"simplex {top}: {residual}",
            runtime=time.perf_counter() - start,
        )
    )
    return records
