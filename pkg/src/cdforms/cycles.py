"""Cycles and deterministic tensor-product quadrature.

Spheres use polyspherical charts: one periodic phase angle per complex
coordinate (offset trapezoid nodes, spectrally accurate for smooth
integrands) and Gauss-Legendre nodes on the polar angles.  Tori use the
product of phase angles, oriented so the phases in coordinate order form a
positive frame.  Balls and shells add a Gauss-Legendre radial factor to
the sphere chart.

Each chart's orientation against the usual orientation of C^n (where
(x1, y1, ..., xn, yn) is positive) is determined once at a generic
parameter point by an outward-normal-first determinant and folded into the
quadrature weight, so integrals come out in the stated orientation.
Accumulation is chunked with a fixed chunk size and fixed summation
order, which makes every reported value reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .cech import Cochain, is_cocycle, pair_covering
from .context import complex_space
from .forms import Form
from .numeric import NumericForm, wirtinger_dbar_residual


class QuadratureBudgetError(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class QuadratureSpec:
    nodes_periodic: int = 64
    nodes_polar: int = 32
    nodes_radial: int = 32
    tol: float = 1e-8
    doubling: bool = False
    pole_tol: float = 1e-9
    chunk: int = 1 << 16
    max_nodes: int = 20_000_000

    def doubled(self):
        return replace(
            self,
            nodes_periodic=2 * self.nodes_periodic,
            nodes_polar=2 * self.nodes_polar,
            nodes_radial=2 * self.nodes_radial,
            doubling=False,
        )


@dataclass(frozen=True)
class IntegrationResult:
    value: complex
    error_estimate: float | None = None


def hyperfunction_orientation_sign(n):
    """Sign relating the ordering (y1..yn, x1..xn) to (x1, y1, ..., xn, yn)."""
    return -1 if (n * (n + 1) // 2) % 2 else 1


def _orientation_factor(orientation, n):
    if orientation == "usual":
        return 1
    if orientation == "hyperfunction":
        return hyperfunction_orientation_sign(n)
    if orientation in (1, -1):
        return orientation
    raise ValueError(f"unknown orientation {orientation!r}")


def _periodic_nodes(count):
    h = 2 * math.pi / count
    return (np.arange(count) + 0.5) * h, np.full(count, h)


def _gauss_nodes(count, lo, hi):
    x, w = np.polynomial.legendre.leggauss(count)
    mid = 0.5 * (hi + lo)
    rad = 0.5 * (hi - lo)
    return mid + rad * x, rad * w


def _moduli_chart(l, angles):
    """Moduli of the polyspherical chart: l nonnegative coordinates built
    from l-1 angles, with their derivative arrays per angle."""
    m = angles.shape[0]
    prefix = np.ones((m, l))  # prefix[:, k] = prod_{j<k} sin(angle_j)
    for k in range(1, l):
        prefix[:, k] = prefix[:, k - 1] * np.sin(angles[:, k - 1])
    moduli = np.empty((m, l))
    for i in range(l - 1):
        moduli[:, i] = prefix[:, i] * np.cos(angles[:, i])
    moduli[:, l - 1] = prefix[:, l - 1]

    derivatives = []
    for j in range(l - 1):
        dm = np.zeros((m, l))
        sin_j = np.sin(angles[:, j])
        cos_j = np.cos(angles[:, j])
        for i in range(l):
            if i < j:
                continue
            if i == j and i < l - 1:
                dm[:, i] = -prefix[:, i] * sin_j
            elif i > j:
                dm[:, i] = moduli[:, i] * cos_j / sin_j
        derivatives.append(dm)
    return moduli, derivatives


def _sphere_chart(n, polar, phases):
    """Unit-sphere points and tangents from polar angles (m, n-1) and
    phases (m, n); returns (U, dU) with dU indexed by parameter."""
    moduli, dmoduli = _moduli_chart(n, polar)
    phase = np.exp(1j * phases)
    U = moduli * phase
    tangents = [dm * phase for dm in dmoduli]
    for i in range(n):  # phase parameters
        t = np.zeros_like(U)
        t[:, i] = 1j * U[:, i]
        tangents.append(t)
    return U, tangents


def _embed_real(vectors):
    """Complex tangent vectors to the usual real coordinates (x1,y1,...)."""
    cols = []
    for v in vectors:
        col = np.empty(2 * len(v))
        col[0::2] = v.real
        col[1::2] = v.imag
        cols.append(col)
    return np.array(cols).T


class _Chart:
    orientation = "usual"

    def orientation_factor(self):
        return self.chart_sign() * _orientation_factor(self.orientation, self.n)

    def node_count(self, spec):
        return int(np.prod([len(axis[0]) for axis in self.axes(spec)]))

    def node_chunks(self, spec):
        axes = self.axes(spec)
        nodes = [a[0] for a in axes]
        weights = [a[1] for a in axes]
        grids = np.meshgrid(*nodes, indexing="ij")
        wgrids = np.meshgrid(*weights, indexing="ij")
        params = np.stack([g.ravel() for g in grids], axis=-1)
        w = np.ones(params.shape[0])
        for g in wgrids:
            w = w * g.ravel()
        total = params.shape[0]
        for start in range(0, total, spec.chunk):
            sl = slice(start, min(start + spec.chunk, total))
            Z, frames = self.evaluate(params[sl])
            yield w[sl], Z, frames

    def chart_sign(self):
        params = np.array([[0.31 + 0.17 * j for j in range(self.param_count())]])
        Z, frames = self.evaluate(params)
        tangents = [frames[0, c, :] for c in range(frames.shape[1])]
        mat = self._orientation_matrix(Z[0], tangents)
        det = np.linalg.det(mat)
        return 1 if det > 0 else -1


@dataclass(frozen=True)
class Sphere(_Chart):
    """Usually oriented (2n-1)-sphere: the boundary of the ball carrying the
    usual orientation of C^n, outward normal first."""

    radius: float
    n: int
    center: tuple = None
    orientation: object = "usual"

    @property
    def dim(self):
        return 2 * self.n - 1

    def param_count(self):
        return 2 * self.n - 1

    def axes(self, spec):
        axes = []
        for _ in range(self.n - 1):
            axes.append(_gauss_nodes(spec.nodes_polar, 0.0, math.pi / 2))
        for _ in range(self.n):
            axes.append(_periodic_nodes(spec.nodes_periodic))
        return axes

    def evaluate(self, params):
        n = self.n
        polar = params[:, : n - 1]
        phases = params[:, n - 1 :]
        U, dU = _sphere_chart(n, polar, phases)
        Z = self.radius * U
        if self.center is not None:
            Z = Z + np.asarray(self.center, dtype=complex)
        frames = np.stack([self.radius * t for t in dU], axis=1)
        return Z, frames

    def _orientation_matrix(self, point, tangents):
        center = (
            np.zeros(self.n, dtype=complex)
            if self.center is None
            else np.asarray(self.center, dtype=complex)
        )
        outward = (point - center) / self.radius
        return _embed_real([outward] + tangents)


@dataclass(frozen=True)
class RealSphere(_Chart):
    """Usually oriented (l-1)-sphere in R^l: outward normal first against
    the identity orientation.  Standard spherical chart, Gauss-Legendre on
    the first l-2 angles and an offset periodic grid on the last."""

    radius: float
    l: int
    orientation: object = "usual"

    @property
    def n(self):
        return self.l

    @property
    def dim(self):
        return self.l - 1

    def param_count(self):
        return self.l - 1

    def axes(self, spec):
        axes = []
        for _ in range(self.l - 2):
            axes.append(_gauss_nodes(spec.nodes_polar, 0.0, math.pi))
        axes.append(_periodic_nodes(spec.nodes_periodic))
        return axes

    def evaluate(self, params):
        moduli, dmoduli = _moduli_chart(self.l, params)
        X = self.radius * moduli
        frames = np.stack([self.radius * dm for dm in dmoduli], axis=1)
        return X.astype(complex), frames.astype(complex)

    def _orientation_matrix(self, point, tangents):
        outward = point.real / self.radius
        return np.array([outward] + [t.real for t in tangents]).T


@dataclass(frozen=True)
class Torus(_Chart):
    """|z_i| = eps_i, oriented so the phase angles in coordinate order form
    a positive frame."""

    radii: tuple
    orientation: object = "usual"

    @property
    def n(self):
        return len(self.radii)

    @property
    def dim(self):
        return self.n

    def param_count(self):
        return self.n

    def axes(self, spec):
        return [_periodic_nodes(spec.nodes_periodic) for _ in range(self.n)]

    def evaluate(self, params):
        radii = np.asarray(self.radii)
        Z = radii * np.exp(1j * params)
        m, n = params.shape
        frames = np.zeros((m, n, n), dtype=complex)
        for i in range(n):
            frames[:, i, i] = 1j * Z[:, i]
        return Z, frames

    def chart_sign(self):
        return 1


@dataclass(frozen=True)
class Shell(_Chart):
    """Radial interval times the sphere chart; inner radius 0 gives the ball."""

    inner: float
    outer: float
    n: int
    orientation: object = "usual"

    @property
    def dim(self):
        return 2 * self.n

    def param_count(self):
        return 2 * self.n

    def axes(self, spec):
        axes = [_gauss_nodes(spec.nodes_radial, self.inner, self.outer)]
        for _ in range(self.n - 1):
            axes.append(_gauss_nodes(spec.nodes_polar, 0.0, math.pi / 2))
        for _ in range(self.n):
            axes.append(_periodic_nodes(spec.nodes_periodic))
        return axes

    def evaluate(self, params):
        n = self.n
        r = params[:, 0]
        polar = params[:, 1:n]
        phases = params[:, n:]
        U, dU = _sphere_chart(n, polar, phases)
        Z = r[:, None] * U
        frames = [U] + [r[:, None] * t for t in dU]
        return Z, np.stack(frames, axis=1)

    def _orientation_matrix(self, point, tangents):
        return _embed_real(tangents)


def Ball(radius, n, orientation="usual"):
    return Shell(0.0, radius, n, orientation)


@dataclass(frozen=True)
class NegatedBoundaryOfBall(_Chart):
    """R01 = -(boundary of the ball): the sphere with reversed orientation."""

    radius: float
    n: int
    orientation: object = "usual"

    @property
    def dim(self):
        return 2 * self.n - 1

    def _sphere(self):
        return Sphere(self.radius, self.n, orientation=self.orientation)

    def param_count(self):
        return self._sphere().param_count()

    def axes(self, spec):
        return self._sphere().axes(spec)

    def evaluate(self, params):
        return self._sphere().evaluate(params)

    def _orientation_matrix(self, point, tangents):
        return self._sphere()._orientation_matrix(point, tangents)

    def orientation_factor(self):
        return -self._sphere().orientation_factor()


def _as_numeric(obj, spec):
    if isinstance(obj, NumericForm):
        return obj
    return NumericForm.from_symbolic(obj, spec.pole_tol)


def integrate(obj, cycle, spec=QuadratureSpec()):
    """Tensor-product quadrature of the pulled-back top form over the cycle."""
    nf = _as_numeric(obj, spec)
    degree = nf.total_degree()
    if degree != cycle.dim:
        raise DegreeMismatch(
            f"form of degree {degree} cannot be integrated over a "
            f"{cycle.dim}-dimensional cycle"
        )
    count = cycle.node_count(spec)
    if count > spec.max_nodes:
        raise QuadratureBudgetError(
            f"{count} quadrature nodes exceed the budget of {spec.max_nodes}; "
            "reduce --nodes for this dimension"
        )
    value = _accumulate(nf, cycle, spec) * cycle.orientation_factor()
    if not spec.doubling:
        return IntegrationResult(value)
    fine = _accumulate(nf, cycle, spec.doubled()) * cycle.orientation_factor()
    return IntegrationResult(fine, abs(fine - value))


def _accumulate(nf, cycle, spec):
    partials = []
    for w, Z, frames in cycle.node_chunks(spec):
        partials.append(complex(np.sum(w * nf.eval_batch(Z, frames))))
    return sum(partials)


def integrate_relative_pair(
    xi1, xi01, n, radius=1.0, spec=QuadratureSpec(), orientation="usual"
):
    """Integral of a relative two-set pair over the ball honeycomb:
    the ball piece plus the negated-boundary piece, in the stated ambient
    orientation."""
    factor = _orientation_factor(orientation, n)
    total = 0j
    err = 0.0
    if xi1 is not None and not xi1.is_zero():
        res = integrate(xi1, Ball(radius, n), spec)
        total += res.value
        err += res.error_estimate or 0.0
    if xi01 is not None and not xi01.is_zero():
        res = integrate(xi01, NegatedBoundaryOfBall(radius, n), spec)
        total += res.value
        err += res.error_estimate or 0.0
    return IntegrationResult(factor * total, err if spec.doubling else None)


# -- smooth cutoffs -------------------------------------------------------------


def _splice(t):
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def _splice_d(t):
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos]) / t[pos] ** 2
    return out


@dataclass(frozen=True)
class Cutoff:
    """C-infinity radial bump: 1 for r <= r0, 0 for r >= r1, with the
    exponential-splice profile in between.  Numeric only; never enters the
    symbolic layer."""

    r0: float
    r1: float

    def __post_init__(self):
        if not 0 < self.r0 < self.r1:
            raise ValueError("cutoff needs 0 < r0 < r1")

    def value(self, r):
        r = np.asarray(r, dtype=float)
        u = (self.r1 - r) / (self.r1 - self.r0)
        f = _splice(u)
        g = _splice(1.0 - u)
        return f / (f + g)

    def dvalue(self, r):
        r = np.asarray(r, dtype=float)
        width = self.r1 - self.r0
        u = (self.r1 - r) / width
        f = _splice(u)
        g = _splice(1.0 - u)
        fp = _splice_d(u)
        gp = _splice_d(1.0 - u)
        s_prime = (fp * g + f * gp) / (f + g) ** 2
        return -s_prime / width

    # -- as numeric forms -------------------------------------------------

    def _radius_of(self, ctx):
        from .context import NORM_Z

        return ctx.sqrt_index[NORM_Z]

    def scalar_fn(self, ctx):
        idx = self._radius_of(ctx)

        def fn(values):
            return self.value(values[idx].real).astype(complex)

        return fn

    def complement_fn(self, ctx):
        idx = self._radius_of(ctx)

        def fn(values):
            return (1.0 - self.value(values[idx].real)).astype(complex)

        return fn

    def dbar_numeric(self, ctx):
        """dbar of the cutoff through r = |z|: the (0,1)-form with
        components rho'(r) z_i / (2r) on dzbar_i."""
        idx = self._radius_of(ctx)
        terms = []
        for i in range(ctx.n):
            def fn(values, _i=i):
                r = values[idx].real
                return self.dvalue(r) * values[_i] / (2.0 * r)

            terms.append((fn, (ctx.n + i,)))
        return NumericForm(ctx, terms)


@dataclass(frozen=True)
class PartitionPair:
    """Numeric partition of unity {rho1, rho2} for the partition cup
    product: value functions over the batch variable arrays plus dbar(rho1)
    as an evaluable (0,1)-form."""

    rho1: object
    rho2: object
    dbar_rho1: NumericForm

    @staticmethod
    def trivial(ctx):
        """rho1 = 1, rho2 = 0: the second closed set is the whole space."""
        from .numeric import constant_fn

        return PartitionPair(
            constant_fn(1.0), constant_fn(0.0), NumericForm.zero(ctx)
        )

    @staticmethod
    def coordinate_split(ctx, power=1):
        """Partition subordinate to {z1 != 0} and {z2 != 0} on C^2 minus the
        origin: |z1|^(2k) / (|z1|^(2k) + |z2|^(2k)) and its complement.
        Smooth off the origin; vanishing to order 2k kills the coordinate
        poles of the factors it multiplies."""
        if ctx.n != 2:
            raise ValueError("the coordinate split is a two-variable partition")
        k = power

        def moduli(values):
            a = (values[0] * np.conj(values[0])).real ** k
            b = (values[1] * np.conj(values[1])).real ** k
            return a, b

        def rho1(values):
            a, b = moduli(values)
            return (a / (a + b)).astype(complex)

        def rho2(values):
            a, b = moduli(values)
            return (b / (a + b)).astype(complex)

        def comp1(values):
            a, b = moduli(values)
            base = (values[0] * np.conj(values[0])).real
            return k * base ** (k - 1) * values[0] * b / (a + b) ** 2

        def comp2(values):
            a, b = moduli(values)
            base = (values[1] * np.conj(values[1])).real
            return -a * k * base ** (k - 1) * values[1] / (a + b) ** 2

        dbar = NumericForm(ctx, [(comp1, (ctx.n,)), (comp2, (ctx.n + 1,))])
        return PartitionPair(rho1, rho2, dbar)


# -- named verification routines ----------------------------------------------------


@dataclass(frozen=True)
class ComparisonResult:
    lhs: complex
    rhs: complex
    lhs_error: float | None = None
    rhs_error: float | None = None

    @property
    def difference(self):
        return abs(self.lhs - self.rhs)


def transfer_check(n, h, spec=QuadratureSpec(), radius=1.0):
    """Both sides of the sphere/torus transfer identity for the pair
    (h * bochner_martinelli, signed h * cauchy); each side independently
    computes the same local residue."""
    from .kernels import bochner_martinelli, cauchy

    if n not in (1, 2, 3):
        raise ValueError("transfer check supports n in {1, 2, 3}")
    hform = h if isinstance(h, Form) else Form.from_poly(complex_space(n), h)
    sign = 1 if (n * (n - 1) // 2) % 2 == 0 else -1
    lhs = integrate(hform.wedge(bochner_martinelli(n)), Sphere(radius, n), spec)
    gamma = hform.wedge(cauchy(n)).scale(_sign_scalar(sign))
    rhs = integrate(gamma, Torus((radius,) * n), spec)
    return ComparisonResult(
        lhs.value,
        sign * rhs.value,
        lhs.error_estimate,
        rhs.error_estimate,
    )


def _sign_scalar(sign):
    from .scalars import Scalar

    return Scalar.from_int(sign)


def stokes_pairing_check(
    n, theta, eta, cutoff, spec=QuadratureSpec(), inner_radius=None
):
    """Both sides of the Stokes identity behind the duality pairing:
    the cutoff-annulus integral of theta ^ eta ^ dbar(rho1) against the
    negated-boundary integral of theta ^ eta.

    The inner ball must sit strictly inside {rho1 = 1} so the cutoff is
    constant on it and the support of dbar(rho1) stays in the outer piece."""
    if inner_radius is None:
        inner_radius = 0.5 * cutoff.r0
    if not inner_radius < cutoff.r0:
        raise ValueError("inner ball must sit inside the cutoff plateau")
    ctx = complex_space(n)
    theta_eta = _as_numeric(theta, spec).wedge(_as_numeric(eta, spec))
    product = theta_eta.wedge(cutoff.dbar_numeric(ctx))
    lhs = integrate(product, Shell(cutoff.r0, cutoff.r1, n), spec)
    boundary = integrate(theta_eta, NegatedBoundaryOfBall(inner_radius, n), spec)
    return ComparisonResult(
        lhs.value, -boundary.value, lhs.error_estimate, boundary.error_estimate
    )


def globalize_two_set(xi0, xi1, xi01, cutoff, spec=QuadratureSpec(), samples=100, seed=7):
    """Patch a two-set cocycle (xi0, xi1, xi01) into one global evaluable
    form rho0*xi0 + rho1*xi1 - dbar(rho0) ^ xi01, where rho1 is the radial
    cutoff around the distinguished closed set.

    Returns the numeric form and check results: the exact cocycle
    condition, and the sampled finite-difference residual of dbar on the
    result."""
    ctx = xi1.ctx
    n = ctx.n
    cov = pair_covering()
    cochain = Cochain(cov, ctx, *_pair_bidegree(xi0, xi1, xi01))
    cochain.set(0, (0,), xi0)
    cochain.set(0, (1,), xi1)
    cochain.set(1, (0, 1), xi01)
    cocycle_ok = is_cocycle(cochain)

    rho1 = cutoff.scalar_fn(ctx)
    rho0 = cutoff.complement_fn(ctx)
    omega = NumericForm.from_symbolic(xi0, spec.pole_tol).mul_scalar_fn(rho0)
    omega = omega + NumericForm.from_symbolic(xi1, spec.pole_tol).mul_scalar_fn(rho1)
    # dbar(rho0) = -dbar(rho1)
    omega = omega + cutoff.dbar_numeric(ctx).wedge(
        NumericForm.from_symbolic(xi01, spec.pole_tol)
    )

    rng = np.random.default_rng(seed)
    radii = rng.uniform(0.5 * cutoff.r0, 1.2 * cutoff.r1, samples)
    directions = rng.normal(size=(samples, n)) + 1j * rng.normal(size=(samples, n))
    norms = np.sqrt(np.sum(np.abs(directions) ** 2, axis=1))
    Z = directions * (radii / norms)[:, None]
    residual = wirtinger_dbar_residual(omega, Z)
    return omega, cocycle_ok, residual


def _pair_bidegree(xi0, xi1, xi01):
    for f in (xi0, xi1):
        deg = f.bidegree()
        if deg is not None and not f.is_zero():
            return deg
    deg = xi01.bidegree()
    if deg is None:
        raise ValueError("cannot infer the cocycle bidegree")
    return deg[0], deg[1] + 1
