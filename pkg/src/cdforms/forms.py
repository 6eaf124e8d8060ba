"""Exact exterior calculus: (p,q)-forms on C^n and q-forms on R^l.

A coefficient is P / (M * prod Q^k) with P a polynomial that may involve
the formal square roots of designated quadratics, M a monomial in the base
variables and k nonnegative integer powers of the quadratics.  Half-integer
quadratic powers are encoded by a sqrt generator in the numerator, e.g.
Q^(-3/2) = sqrt(Q)/Q^2.  This class of coefficients is closed under the
quotient and chain rules and makes equality decidable by cross-multiplying
and testing the numerator difference for identical zero; no multivariate
GCD is ever required.  General rational coefficients are rejected.
"""

from __future__ import annotations

import numpy as np

from .poly import Polynomial
from .scalars import ONE, Scalar

HALF = Scalar.rational(1, 2)


class ContextMismatch(ValueError):
    pass


class PoleProximityError(ValueError):
    """A quadrature/evaluation point came too close to a denominator zero."""

    def __init__(self, factor, magnitude):
        self.factor = factor
        self.magnitude = magnitude
        super().__init__(f"pole proximity: |{factor}| = {magnitude:.3e}")


class NonMonomialDenominator(ValueError):
    pass


class Coefficient:
    __slots__ = ("ctx", "num", "den_mono", "den_quads")

    def __init__(self, ctx, num, den_mono=None, den_quads=None, prune=True):
        self.ctx = ctx
        if den_mono is None:
            den_mono = (0,) * ctx.nbase
        if den_quads is None:
            den_quads = (0,) * len(ctx.quad_names)
        if prune:
            num = ctx.reduce(num)
            if num.is_zero():
                den_mono = (0,) * ctx.nbase
                den_quads = (0,) * len(ctx.quad_names)
            else:
                den_mono, num = self._cancel_monomial(num, den_mono)
        self.num = num
        self.den_mono = tuple(den_mono)
        self.den_quads = tuple(den_quads)

    @staticmethod
    def _cancel_monomial(num, den_mono):
        shift = []
        for j, e in enumerate(den_mono):
            shift.append(min(e, num.min_exponent(j)) if e else 0)
        if not any(shift):
            return tuple(den_mono), num
        den = tuple(e - s for e, s in zip(den_mono, shift))
        down = tuple(-s for s in shift) + (0,) * (num.nvars - len(shift))
        return den, num.mul_monomial(down)

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, Polynomial.zero(ctx.nvars), prune=False)

    @classmethod
    def from_scalar(cls, ctx, scalar):
        return cls(ctx, ctx.poly_const(scalar), prune=False)

    @classmethod
    def from_poly(cls, ctx, poly):
        return cls(ctx, poly)

    def is_zero(self):
        return self.num.is_zero()

    # -- ring operations ---------------------------------------------------

    def _align(self, other):
        den_mono = tuple(max(a, b) for a, b in zip(self.den_mono, other.den_mono))
        den_quads = tuple(max(a, b) for a, b in zip(self.den_quads, other.den_quads))
        return den_mono, den_quads

    def _lift(self, den_mono, den_quads):
        pad = (0,) * (self.ctx.nvars - len(den_mono))
        mono = tuple(a - b for a, b in zip(den_mono, self.den_mono)) + pad
        num = self.num.mul_monomial(mono)
        for j, name in enumerate(self.ctx.quad_names):
            d = den_quads[j] - self.den_quads[j]
            if d:
                num = num * self.ctx.quad_power(name, d)
        return num

    def __add__(self, other):
        den_mono, den_quads = self._align(other)
        num = self._lift(den_mono, den_quads) + other._lift(den_mono, den_quads)
        return Coefficient(self.ctx, num, den_mono, den_quads)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Coefficient(
            self.ctx, -self.num, self.den_mono, self.den_quads, prune=False
        )

    def __mul__(self, other):
        return Coefficient(
            self.ctx,
            self.num * other.num,
            tuple(a + b for a, b in zip(self.den_mono, other.den_mono)),
            tuple(a + b for a, b in zip(self.den_quads, other.den_quads)),
        )

    def scale(self, scalar):
        return Coefficient(
            self.ctx, self.num.scale(scalar), self.den_mono, self.den_quads
        )

    def mul_poly(self, poly):
        return Coefficient(
            self.ctx, self.num * poly, self.den_mono, self.den_quads
        )

    def __eq__(self, other):
        return (self - other).is_zero()

    # -- differentiation ------------------------------------------------------

    def diff(self, var):
        """Partial derivative with respect to base variable `var`, with the
        quotient rule on the denominator monomial and the chain rule
        d(Q^(e/2)) = (e/2) Q^(e/2-1) dQ on quadratic powers."""
        ctx = self.ctx
        out = Coefficient(ctx, self.num.diff(var), self.den_mono, self.den_quads)
        for j, name in enumerate(ctx.quad_names):
            dq = ctx.quad_expansions[name].diff(var)
            if dq.is_zero():
                continue
            bumped = tuple(
                k + 1 if i == j else k for i, k in enumerate(self.den_quads)
            )
            s_idx = ctx.sqrt_index[name]
            ds = self.num.coefficient_of(s_idx, 1)
            if not ds.is_zero():
                # d sqrt(Q) = sqrt(Q) dQ / (2Q)
                out = out + Coefficient(
                    ctx,
                    (ds * Polynomial.variable(ctx.nvars, s_idx) * dq).scale(HALF),
                    self.den_mono,
                    bumped,
                )
            k = self.den_quads[j]
            if k:
                out = out + Coefficient(
                    ctx,
                    (self.num * dq).scale(Scalar.from_int(-k)),
                    self.den_mono,
                    bumped,
                )
        e = self.den_mono[var] if var < ctx.nbase else 0
        if e:
            bumped_mono = tuple(
                m + 1 if i == var else m for i, m in enumerate(self.den_mono)
            )
            out = out + Coefficient(
                ctx,
                self.num.scale(Scalar.from_int(-e)),
                bumped_mono,
                self.den_quads,
            )
        return out

    # -- evaluation ---------------------------------------------------------------

    def eval_factors(self, values, pole_tol):
        """Numeric value, checking every denominator factor against pole_tol.

        `values` may hold scalars or numpy arrays (batch mode)."""
        ctx = self.ctx
        den = None
        for j, e in enumerate(self.den_mono):
            if not e:
                continue
            v = values[j]
            if np.any(np.abs(v) < pole_tol):
                raise PoleProximityError(
                    ctx.var_name(j), float(np.min(np.abs(v)))
                )
            f = v**e
            den = f if den is None else den * f
        for j, k in enumerate(self.den_quads):
            if not k:
                continue
            name = ctx.quad_names[j]
            q = values[ctx.sqrt_index[name]] ** 2
            if np.any(np.abs(q) < pole_tol):
                raise PoleProximityError(name, float(np.min(np.abs(q))))
            f = q**k
            den = f if den is None else den * f
        num = self.num.eval_batch(values) if _is_batch(values) else self.num.eval(values)
        return num if den is None else num / den

    # -- printing --------------------------------------------------------------------

    def __str__(self):
        names = [self.ctx.var_name(j) for j in range(self.ctx.nvars)]
        s = self.num.to_str(names)
        den_parts = []
        for j, e in enumerate(self.den_mono):
            if e == 1:
                den_parts.append(names[j])
            elif e:
                den_parts.append(f"{names[j]}^{e}")
        for j, k in enumerate(self.den_quads):
            if k == 1:
                den_parts.append(self.ctx.quad_names[j])
            elif k:
                den_parts.append(f"{self.ctx.quad_names[j]}^{k}")
        if den_parts:
            if " + " in s:
                s = f"({s})"
            s = s + "/(" + "*".join(den_parts) + ")"
        return s

    __repr__ = __str__


def _is_batch(values):
    return len(values) > 0 and hasattr(values[0], "shape")


def merge_with_sign(a, b):
    """Merge two strictly increasing id tuples; (None, 0) if they collide."""
    out = []
    i = j = 0
    sign = 1
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None, 0
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            if (len(a) - i) & 1:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), sign


class Form:
    """Exterior polynomial: canonical strictly-increasing basis monomials with
    Coefficient entries; zero coefficients are pruned."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None, prune=True):
        self.ctx = ctx
        if terms is None:
            self.terms = {}
        elif prune:
            self.terms = {m: c for m, c in terms.items() if not c.is_zero()}
        else:
            self.terms = terms

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(ctx):
        return Form(ctx, {}, prune=False)

    @staticmethod
    def from_scalar(ctx, scalar):
        return Form(ctx, {(): Coefficient.from_scalar(ctx, scalar)})

    @staticmethod
    def from_poly(ctx, poly):
        return Form(ctx, {(): Coefficient.from_poly(ctx, poly)})

    @staticmethod
    def from_coefficient(coef, mono=()):
        return Form(coef.ctx, {tuple(mono): coef})

    @staticmethod
    def differential(ctx, fid):
        return Form(ctx, {(fid,): Coefficient.from_scalar(ctx, ONE)})

    # -- linear structure ---------------------------------------------------

    def _check(self, other):
        if self.ctx is not other.ctx:
            raise ContextMismatch("forms live in different variable contexts")

    def __add__(self, other):
        self._check(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                res.pop(m, None)
            else:
                res[m] = s
        return Form(self.ctx, res, prune=False)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Form(
            self.ctx, {m: -c for m, c in self.terms.items()}, prune=False
        )

    def scale(self, scalar):
        return Form(self.ctx, {m: c.scale(scalar) for m, c in self.terms.items()})

    def mul_poly(self, poly):
        return Form(self.ctx, {m: c.mul_poly(poly) for m, c in self.terms.items()})

    # -- exterior product ------------------------------------------------------

    def wedge(self, other):
        self._check(other)
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m, sign = merge_with_sign(m1, m2)
                if m is None:
                    continue
                c = c1 * c2
                if sign < 0:
                    c = -c
                s = res.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    res.pop(m, None)
                else:
                    res[m] = s
        return Form(self.ctx, res, prune=False)

    def __xor__(self, other):
        return self.wedge(other)

    # -- differentials ------------------------------------------------------------

    def _exterior_derivative(self, var_ids):
        res = Form.zero(self.ctx)
        acc = {}
        for var in var_ids:
            for mono, coef in self.terms.items():
                dc = coef.diff(var)
                if dc.is_zero():
                    continue
                m, sign = merge_with_sign((var,), mono)
                if m is None:
                    continue
                if sign < 0:
                    dc = -dc
                s = acc.get(m)
                s = dc if s is None else s + dc
                acc[m] = s
        res = Form(self.ctx, acc)
        return res

    def dbar(self):
        """Antiholomorphic differential: d/d(zbar_i) on coefficients, dzbar_i
        wedged on the left."""
        if self.ctx.kind != "complex":
            raise ValueError("dbar needs a complex context")
        n = self.ctx.n
        return self._exterior_derivative(range(n, 2 * n))

    def del_(self):
        """Holomorphic differential."""
        if self.ctx.kind != "complex":
            raise ValueError("del needs a complex context")
        return self._exterior_derivative(range(self.ctx.n))

    def d(self):
        if self.ctx.kind == "complex":
            return self._exterior_derivative(range(2 * self.ctx.n))
        return self._exterior_derivative(range(self.ctx.n))

    def diff_coefficients(self, var):
        """Coefficientwise partial derivative; the exterior part is untouched."""
        return Form(self.ctx, {m: c.diff(var) for m, c in self.terms.items()})

    # -- grading --------------------------------------------------------------------

    def bidegree_of_mono(self, mono):
        p = sum(1 for fid in mono if self.ctx.is_holomorphic_form(fid))
        return (p, len(mono) - p)

    def bidegree_component(self, p, q):
        return Form(
            self.ctx,
            {
                m: c
                for m, c in self.terms.items()
                if self.bidegree_of_mono(m) == (p, q)
            },
            prune=False,
        )

    def bidegree(self):
        """(p, q) when homogeneous, else None."""
        degs = {self.bidegree_of_mono(m) for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def total_degree(self):
        degs = {len(m) for m in self.terms}
        if not degs:
            return 0
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return form_eq(self, other)

    # -- substitution ------------------------------------------------------------------

    def substitute(self, var_rules, target_ctx=None, quad_rules=None):
        """Apply variable -> polynomial rules (and their differentials).

        var_rules maps base-variable names or indices of this context to
        Polynomials in the target context; unmapped variables go to the
        like-named target variable.  quad_rules maps a designated quadratic
        name to (c, target_name) meaning Q -> c^2 * Q_target; the rule is
        validated against the substituted expansion.  Variables appearing in
        denominator monomials must be sent to monomials.
        """
        src = self.ctx
        tgt = target_ctx if target_ctx is not None else src
        rules = {}
        for key, img in (var_rules or {}).items():
            idx = key if isinstance(key, int) else src.var_index(key)
            rules[idx] = img
        images = [None] * src.nvars
        for j in range(src.nbase):
            if j in rules:
                images[j] = rules[j]
            else:
                name = src.base_names[j]
                if name not in tgt.base_names:
                    raise ValueError(
                        f"no rule for {name} and no matching target variable"
                    )
                images[j] = tgt.poly_var(name)
        quad_map = self._resolve_quads(tgt, images, quad_rules or {})
        for name in src.quad_names:
            c, tname = quad_map[name]
            images[src.sqrt_index[name]] = tgt.poly_var(
                tgt.sqrt_index[tname]
            ).scale(c)

        d_images = []
        for j in range(src.nbase):
            df = Form.zero(tgt)
            for w in range(tgt.nbase):
                dpoly = images[j].diff(w)
                if not dpoly.is_zero():
                    df = df + Form(
                        tgt, {(w,): Coefficient.from_poly(tgt, dpoly)}
                    )
            d_images.append(df)

        out = Form.zero(tgt)
        for mono, coef in self.terms.items():
            piece = Form.from_coefficient(
                self._substitute_coefficient(coef, tgt, images, quad_map)
            )
            for fid in mono:
                piece = piece.wedge(d_images[fid])
            out = out + piece
        return out

    def _resolve_quads(self, tgt, images, quad_rules):
        src = self.ctx
        quad_map = {}
        used = set()
        for mono, coef in self.terms.items():
            for j, k in enumerate(coef.den_quads):
                if k:
                    used.add(src.quad_names[j])
            for name in src.quad_names:
                if coef.num.max_exponent(src.sqrt_index[name]):
                    used.add(name)
        base_images = list(images[: src.nbase]) + [
            tgt.poly_zero() for _ in src.quad_names
        ]
        for name in src.quad_names:
            if name in quad_rules:
                c, tname = quad_rules[name]
            elif name in tgt.quad_names:
                c, tname = ONE, name
            else:
                c, tname = None, None
            if name not in used:
                # unused quadratics only need a placeholder sqrt image
                quad_map[name] = (c if c is not None else ONE, tname or tgt.quad_names[0])
                continue
            if tname is None:
                raise ValueError(f"substitution rule required for quadratic {name}")
            substituted = src.quad_expansions[name].substitute(base_images)
            expected = tgt.quad_expansions[tname].scale(c * c)
            if not (substituted - expected).is_zero():
                raise ValueError(
                    f"substitution does not carry {name} to "
                    f"({c})^2 * {tname}; adjust quad_rules"
                )
            if c.is_zero() or expected.is_zero():
                raise ValueError(
                    f"substitution sends designated quadratic {name} to zero"
                )
            quad_map[name] = (c, tname)
        return quad_map

    def _substitute_coefficient(self, coef, tgt, images, quad_map):
        src = self.ctx
        num = coef.num.substitute(images)
        scale = ONE
        den_mono = [0] * tgt.nbase
        for j, e in enumerate(coef.den_mono):
            if not e:
                continue
            img = images[j]
            if len(img.terms) != 1:
                raise NonMonomialDenominator(
                    f"variable {src.var_name(j)} appears in a denominator but "
                    "its substitution rule is not a monomial"
                )
            (mono, c), = img.terms.items()
            scale = scale * c.inverse() ** e
            for w in range(tgt.nbase):
                den_mono[w] += mono[w] * e
            if any(mono[tgt.nbase:]):
                raise NonMonomialDenominator(
                    "denominator rule may not involve sqrt generators"
                )
        den_quads = [0] * len(tgt.quad_names)
        for j, k in enumerate(coef.den_quads):
            if not k:
                continue
            c, tname = quad_map[src.quad_names[j]]
            scale = scale * c.inverse() ** (2 * k)
            den_quads[tgt.quad_names.index(tname)] += k
        return Coefficient(
            tgt, num.scale(scale), tuple(den_mono), tuple(den_quads)
        )

    # -- numeric evaluation -------------------------------------------------------------

    def variable_values(self, point):
        """Assemble the full value vector (with conjugates and square roots)."""
        ctx = self.ctx
        values = [0j] * ctx.nvars
        if ctx.kind == "complex":
            for i in range(ctx.n):
                values[i] = complex(point[i])
                values[ctx.n + i] = complex(point[i]).conjugate()
        else:
            for i in range(ctx.n):
                values[i] = complex(point[i])
        for name in ctx.quad_names:
            q = ctx.quad_expansions[name].eval(values)
            values[ctx.sqrt_index[name]] = np.sqrt(abs(q.real))
        return values

    def eval_numeric(self, point, frame, pole_tol=1e-9):
        """Evaluate at a point against tangent vectors.

        The form must be homogeneous of total degree len(frame); the exterior
        part contracts with the frame through the alternating determinant.
        """
        values = self.variable_values(point)
        total = 0j
        for mono, coef in self.terms.items():
            if len(mono) != len(frame):
                raise ValueError(
                    f"degree mismatch: monomial degree {len(mono)}, "
                    f"frame length {len(frame)}"
                )
            total += coef.eval_factors(values, pole_tol) * _frame_det(
                self.ctx, mono, frame
            )
        return total

    # -- printing ----------------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            body = "^".join(self.ctx.form_name(fid) for fid in mono)
            cs = str(c)
            if body:
                parts.append(f"({cs}) {body}")
            else:
                parts.append(f"({cs})")
        return " + ".join(parts)

    __repr__ = __str__


def _frame_det(ctx, mono, frame):
    k = len(mono)
    if k == 0:
        return 1.0 + 0j
    mat = np.empty((k, k), dtype=complex)
    for r, fid in enumerate(mono):
        for col, vec in enumerate(frame):
            if ctx.kind == "complex" and fid >= ctx.n:
                mat[r, col] = complex(vec[fid - ctx.n]).conjugate()
            else:
                mat[r, col] = complex(vec[fid])
    if k == 1:
        return mat[0, 0]
    return complex(np.linalg.det(mat))


# -- module-level operation names -------------------------------------------


def wedge(a, b):
    return a.wedge(b)


def dbar(a):
    return a.dbar()


def del_(a):
    return a.del_()


def bidegree_component(a, p, q):
    return a.bidegree_component(p, q)


def substitute(a, var_rules, target_ctx=None, quad_rules=None):
    return a.substitute(var_rules, target_ctx, quad_rules)


def form_eq(a, b):
    if a.ctx is not b.ctx:
        raise ContextMismatch("cannot compare forms from different contexts")
    return (a - b).is_zero()


def eval_numeric(a, point, frame, pole_tol=1e-9):
    return a.eval_numeric(point, frame, pole_tol)
