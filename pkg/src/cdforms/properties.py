"""Randomized exact identity checks with reproducible seeds.

Every identity here holds on the nose in exact arithmetic, so the checks
carry zero tolerance: a check passes only when the residual is the zero
form.  Coefficients are random integer polynomials of small degree.
"""

from __future__ import annotations

import random
import time

from .cech import (
    Cochain,
    cech_delta,
    check_relative,
    coordinate_covering,
    cup,
    cup_relative,
    del_total,
    pair_covering,
    relative_pair,
    vartheta,
)
from .context import complex_space, real_space
from .forms import Form
from .hyper import HyperformRep, d_hyper, partial_x
from .reports import exact_record
from .scalars import Scalar


def random_poly(rng, ctx, max_degree=3, max_terms=3):
    poly = ctx.poly_zero()
    for _ in range(rng.randint(1, max_terms)):
        mono = [0] * ctx.nvars
        for _ in range(rng.randint(0, max_degree)):
            mono[rng.randrange(ctx.nbase)] += 1
        poly = poly + ctx.poly_const(Scalar.from_int(rng.randint(-3, 3))).mul_monomial(
            tuple(mono)
        )
    return poly


def random_form(rng, ctx, p, q, max_degree=3):
    """Random (p, q)-form with polynomial coefficients."""
    n = ctx.n
    if p > n or q > n:
        return Form.zero(ctx)
    out = Form.zero(ctx)
    for _ in range(rng.randint(1, 2)):
        hol = sorted(rng.sample(range(n), p))
        anti = sorted(rng.sample(range(n, 2 * n), q))
        piece = Form.from_poly(ctx, random_poly(rng, ctx, max_degree))
        for fid in hol + anti:
            piece = piece.wedge(Form.differential(ctx, fid))
        out = out + piece
    return out


def random_cochain(rng, cov, ctx, p, q):
    c = Cochain(cov, ctx, p, q)
    for q1 in range(min(q, cov.size - 1) + 1):
        if q - q1 > ctx.n:
            continue
        for simplex in cov.simplices(q1):
            if rng.random() < 0.8:
                c.set(q1, simplex, random_form(rng, ctx, p, q - q1))
    return c


def random_relative_cochain(rng, ctx, p, q):
    cov = pair_covering()
    xi1 = random_form(rng, ctx, p, q)
    xi01 = random_form(rng, ctx, p, q - 1)
    return relative_pair(ctx, xi1, xi01, covering=cov, p=p, q=q)


def _check(records, name, fn):
    start = time.perf_counter()
    failure = ""
    ok = True
    try:
        fn()
    except AssertionError as exc:
        ok = False
        failure = str(exc)
    records.append(
        exact_record(name, ok, residual=failure, runtime=time.perf_counter() - start)
    )


def property_suite(n=2, seed=0, trials=3):
    """The exact identity suite at complex dimension n."""
    rng = random.Random(seed)
    ctx = complex_space(n)
    cov = coordinate_covering(n)
    records = []

    def forms(p, q):
        return [random_form(rng, ctx, p, q) for _ in range(trials)]

    def assert_zero(form, label):
        assert form.is_zero(), f"{label}: residual {form}"

    def check_differentials():
        for a in forms(rng.randint(0, n), rng.randint(0, n - 1)):
            assert_zero(a.dbar().dbar(), "dbar twice")
            assert_zero(a.del_().del_(), "del twice")
            assert_zero(
                a.del_().dbar() + a.dbar().del_(), "del dbar + dbar del"
            )

    _check(records, "dbar and del square to zero and anticommute", check_differentials)

    def check_wedge():
        for _ in range(trials):
            pa, qa = rng.randint(0, n), rng.randint(0, n)
            pb, qb = rng.randint(0, n), rng.randint(0, n)
            a = random_form(rng, ctx, pa, qa)
            b = random_form(rng, ctx, pb, qb)
            sign = Scalar.from_int(-1 if ((pa + qa) * (pb + qb)) % 2 else 1)
            assert_zero(
                a.wedge(b) - b.wedge(a).scale(sign), "graded commutativity"
            )
            sign_a = Scalar.from_int(-1 if (pa + qa) % 2 else 1)
            assert_zero(
                a.wedge(b).dbar()
                - a.dbar().wedge(b)
                - a.wedge(b.dbar()).scale(sign_a),
                "dbar Leibniz",
            )

    _check(records, "wedge graded commutativity and dbar Leibniz", check_wedge)

    def check_components():
        for _ in range(trials):
            a = Form.zero(ctx)
            for _ in range(3):
                a = a + random_form(rng, ctx, rng.randint(0, n), rng.randint(0, n))
            total = Form.zero(ctx)
            for p in range(n + 1):
                for q in range(n + 1):
                    total = total + a.bidegree_component(p, q)
            assert_zero(a - total, "bidegree components sum")

    _check(records, "bidegree components sum to the form", check_components)

    def check_cech():
        for _ in range(trials):
            p, q = rng.randint(0, n), rng.randint(1, n)
            c = random_cochain(rng, cov, ctx, p, q)
            assert_zero_cochain(cech_delta(cech_delta(c)), "cech coboundary twice")
            assert_zero_cochain(vartheta(vartheta(c)), "total differential twice")
            assert_zero_cochain(
                del_total(vartheta(c)) - vartheta(del_total(c)),
                "del against the total differential",
            )

    def assert_zero_cochain(c, label):
        assert c.is_zero(), f"{label}: nonzero at " + "; ".join(
            f"degree {q1} simplex {s}: {f}" for q1, s, f in c.items()
        )

    _check(
        records,
        "cech coboundary and total differential square to zero, del commutes",
        check_cech,
    )

    def check_cup():
        for _ in range(trials):
            x = random_cochain(rng, cov, ctx, rng.randint(0, 1), rng.randint(0, 1))
            y = random_cochain(rng, cov, ctx, rng.randint(0, 1), rng.randint(0, 1))
            sign = Scalar.from_int(-1 if (x.p + x.q) % 2 else 1)
            lhs = vartheta(cup(x, y))
            rhs = cup(vartheta(x), y) + cup(x, vartheta(y)).scale(sign)
            assert_zero_cochain(lhs - rhs, "cup Leibniz")
            z = random_cochain(rng, cov, ctx, 0, rng.randint(0, 1))
            assert_zero_cochain(
                cup(cup(x, y), z) - cup(x, cup(y, z)), "cup associativity"
            )
            unit = Cochain(cov, ctx, 0, 0)
            for simplex in cov.simplices(0):
                unit.set(0, simplex, Form.from_scalar(ctx, Scalar.from_int(1)))
            assert_zero_cochain(cup(x, unit) - x, "cup unit")

    _check(records, "cup Leibniz, associativity and unit", check_cup)

    def check_relative_preservation():
        for _ in range(trials):
            p = rng.randint(0, n - 1)
            x = random_relative_cochain(rng, ctx, p, rng.randint(1, n))
            assert check_relative(x), "input not relative"
            assert check_relative(vartheta(x)), "vartheta broke relativity"
            assert check_relative(del_total(x)), "del broke relativity"
            eta = random_form(rng, ctx, rng.randint(0, n - p), 0)
            if not eta.is_zero():
                assert check_relative(cup_relative(x, eta)), (
                    "relative cup broke relativity"
                )

    _check(
        records,
        "relative condition preserved by the differentials and the pairing",
        check_relative_preservation,
    )

    def check_hyper():
        for _ in range(trials):
            xi01 = random_form(rng, ctx, 0, n - 1)
            u = HyperformRep(n, 0, xi01.dbar(), xi01)
            if n >= 2:
                dd = d_hyper(d_hyper(u))
                assert dd.xi1.is_zero() and dd.xi01.is_zero(), (
                    "hyperform differential twice is nonzero"
                )
            a = partial_x(1, partial_x(min(2, n), u))
            b = partial_x(min(2, n), partial_x(1, u))
            assert (a.xi1 - b.xi1).is_zero() and (a.xi01 - b.xi01).is_zero(), (
                "partial derivatives do not commute"
            )

    _check(
        records,
        "hyperform differential squares to zero and partials commute",
        check_hyper,
    )

    def check_real_calculus():
        rctx = real_space(max(n, 2))
        for _ in range(trials):
            a = Form.from_poly(rctx, random_poly(rng, rctx))
            for fid in sorted(rng.sample(range(rctx.n), rng.randint(0, rctx.n - 1))):
                a = a.wedge(Form.differential(rctx, fid))
            assert a.d().d().is_zero(), f"real d twice: {a.d().d()}"

    _check(records, "real exterior differential squares to zero", check_real_calculus)

    return records
