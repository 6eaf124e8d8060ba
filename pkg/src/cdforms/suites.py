"""Named verification suites with pinned tolerances.

These drive both the command line (`report --all` and the individual
subcommands) and the acceptance tests.  Tolerances are fixed here, next to
the checks they govern; node counts are chosen per dimension so every
suite finishes in seconds except the five-sphere, which stays under two
minutes with a large margin.
"""

from __future__ import annotations

import time

from .context import complex_space
from .cycles import (
    Cutoff,
    QuadratureSpec,
    RealSphere,
    Sphere,
    Torus,
    integrate,
    stokes_pairing_check,
    transfer_check,
)
from .forms import Coefficient, Form
from .hyper import (
    delta_form,
    delta_function,
    mult_analytic,
    pair,
    pairing_test_form,
)
from .kernels import (
    angular_form,
    bm_zero,
    bochner_martinelli,
    cauchy,
    make_Phi,
    verify_correspondence,
)
from .parser import parse_form
from .poly import Polynomial
from .properties import property_suite
from .reports import CheckRecord, error_record, numeric_record
from .scalars import ONE, TWO_PI_I

BM_SPHERE_TOL = {1: 1e-8, 2: 1e-8, 3: 1e-4}
CAUCHY_TORUS_TOL = 1e-12
ANGULAR_TOL = 1e-8
TRANSFER_TOL = 1e-7
PAIRING_TOL = 1e-7
STOKES_TOL = 1e-5

_SPHERE_SPEC = {
    1: QuadratureSpec(nodes_periodic=64, nodes_polar=32, doubling=True),
    2: QuadratureSpec(nodes_periodic=32, nodes_polar=24, doubling=True),
    3: QuadratureSpec(nodes_periodic=12, nodes_polar=10, doubling=True),
}
_PAIR_SPEC = {
    1: QuadratureSpec(nodes_periodic=64, nodes_polar=32),
    2: QuadratureSpec(nodes_periodic=32, nodes_polar=24),
}


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def _guarded(name, fn):
    try:
        record, elapsed = _timed(fn)
        record.runtime = elapsed
        return record
    except Exception as exc:  # surfaces as a failed record, never a crash
        return error_record(name, exc)


def correspondence_records(ns=(1, 2, 3)):
    records = []
    for n in ns:
        for r in verify_correspondence(n):
            r.name = f"n={n}: {r.name}"
            records.append(r)
    return records


def kernel_normalization_records(ns=(1, 2, 3)):
    records = []
    for n in ns:
        spec = _SPHERE_SPEC[n]

        def sphere_check(n=n, spec=spec):
            res = integrate(bochner_martinelli(n), Sphere(1.0, n), spec)
            return numeric_record(
                f"sphere integral of the Bochner-Martinelli kernel (n={n})",
                res.value,
                1.0,
                BM_SPHERE_TOL[n],
                error_estimate=res.error_estimate,
            )

        records.append(_guarded(f"bm normalization n={n}", sphere_check))

        def torus_check(n=n):
            res = integrate(
                cauchy(n),
                Torus((1.0,) * n),
                QuadratureSpec(nodes_periodic=32, doubling=True),
            )
            return numeric_record(
                f"torus integral of the Cauchy kernel (n={n})",
                res.value,
                1.0,
                CAUCHY_TORUS_TOL,
                error_estimate=res.error_estimate,
            )

        records.append(_guarded(f"cauchy normalization n={n}", torus_check))
    return records


def angular_normalization_records(ls=(2, 3, 4)):
    records = []
    for l in ls:

        def check(l=l):
            res = integrate(
                angular_form(l),
                RealSphere(1.0, l),
                QuadratureSpec(nodes_periodic=32, nodes_polar=24, doubling=True),
            )
            return numeric_record(
                f"sphere integral of the angular form (l={l})",
                res.value,
                1.0,
                ANGULAR_TOL,
                error_estimate=res.error_estimate,
            )

        records.append(_guarded(f"angular normalization l={l}", check))
    return records


def _transfer_cases(n):
    ctx = complex_space(n)
    cases = [("1", ctx.poly_one(), 1.0), ("z1", ctx.poly_var("z1"), 0.0)]
    if n >= 2:
        cases.append(("z1*z2", ctx.poly_var("z1") * ctx.poly_var("z2"), 0.0))
    cases.append(("3 + z1^2", ctx.poly_const(_int(3)) + ctx.poly_var("z1") ** 2, 3.0))
    return cases


def _int(k):
    from .scalars import Scalar

    return Scalar.from_int(k)


def transfer_records(ns=(1, 2)):
    records = []
    for n in ns:
        for label, h, h0 in _transfer_cases(n):

            def check(n=n, label=label, h=h, h0=h0):
                res = transfer_check(n, h, _PAIR_SPEC[n])
                rec = numeric_record(
                    f"transfer identity n={n}, h = {label}",
                    res.lhs,
                    res.rhs,
                    TRANSFER_TOL,
                    error_estimate=res.lhs_error,
                )
                if rec.ok and abs(res.lhs - h0) > TRANSFER_TOL:
                    rec.status = "fail"
                    rec.detail += f"; sides agree but differ from h(0) = {h0}"
                return rec

            records.append(_guarded(f"transfer n={n} {label}", check))
    return records


def _pairing_cases(n):
    ctx = complex_space(n)
    cases = [
        ("1", ctx.poly_one(), 1.0),
        ("5", ctx.poly_const(_int(5)), 5.0),
        ("3 + x1^2", ctx.poly_const(_int(3)) + ctx.poly_var("z1") ** 2, 3.0),
        ("x1^3", ctx.poly_var("z1") ** 3, 0.0),
    ]
    if n >= 2:
        cases.append(
            (
                "x1^2*x2^2",
                ctx.poly_var("z1") ** 2 * ctx.poly_var("z2") ** 2,
                0.0,
            )
        )
        cases.append(("x1*x2", ctx.poly_var("z1") * ctx.poly_var("z2"), 0.0))
    return cases


def pairing_records(ns=(1, 2)):
    records = []
    for n in ns:
        ctx = complex_space(n)
        spec = _PAIR_SPEC[n]
        for label, h, h0 in _pairing_cases(n):

            def delta_check(n=n, label=label, h=h, h0=h0, spec=spec):
                value = pair(
                    delta_function(n),
                    pairing_test_form(n, Form.from_poly(complex_space(n), h)),
                    spec=spec,
                ).value
                return numeric_record(
                    f"<delta, h Phi> = h(0) at n={n}, h = {label}",
                    value,
                    h0,
                    PAIRING_TOL,
                )

            records.append(_guarded(f"delta pairing n={n} {label}", delta_check))

            def form_check(n=n, label=label, h=h, h0=h0, spec=spec):
                value = pair(
                    delta_form(n), Form.from_poly(complex_space(n), h), spec=spec
                ).value
                return numeric_record(
                    f"<delta-form, h> = h(0) at n={n}, h = {label}",
                    value,
                    h0,
                    PAIRING_TOL,
                )

            records.append(_guarded(f"delta-form pairing n={n} {label}", form_check))

        def annihilation_check(n=n, spec=spec):
            from .context import real_space

            u = mult_analytic(real_space(n).poly_var("x1"), delta_function(n))
            h = complex_space(n).poly_const(_int(2)) + complex_space(n).poly_var(
                "z1"
            )
            value = pair(
                u,
                pairing_test_form(n, Form.from_poly(complex_space(n), h)),
                spec=spec,
            ).value
            return numeric_record(
                f"<x1 * delta, h Phi> = 0 at n={n}",
                value,
                0.0,
                PAIRING_TOL,
            )

        records.append(_guarded(f"x1*delta pairing n={n}", annihilation_check))
    return records


def stokes_records(ns=(1, 2)):
    records = []
    cutoff = Cutoff(1.0, 2.0)
    for n in ns:

        def check(n=n):
            if n == 1:
                ctx = complex_space(1)
                theta = Form.from_coefficient(
                    Coefficient(
                        ctx, ctx.poly_const(ONE / TWO_PI_I), den_mono=(1, 0)
                    )
                )
                eta = Form.differential(ctx, 0)
                spec = QuadratureSpec(nodes_periodic=64, nodes_radial=48)
            else:
                theta = bm_zero(n)
                eta = make_Phi(n)
                spec = QuadratureSpec(
                    nodes_periodic=24, nodes_polar=16, nodes_radial=32
                )
            res = stokes_pairing_check(n, theta, eta, cutoff, spec)
            return numeric_record(
                f"stokes pairing identity (n={n})",
                res.lhs,
                res.rhs,
                STOKES_TOL,
            )

        records.append(_guarded(f"stokes n={n}", check))
    return records


def full_report_records(seed=0):
    records = []
    records.extend(correspondence_records())
    records.extend(property_suite(2, seed))
    records.extend(kernel_normalization_records())
    records.extend(angular_normalization_records())
    records.extend(transfer_records())
    records.extend(pairing_records())
    records.extend(stokes_records())
    return records
