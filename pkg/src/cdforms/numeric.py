"""Evaluable forms: numeric coefficients attached to exterior monomials.

Symbolic forms compile to this representation for quadrature; smooth
cutoffs and partition-of-unity products, which have no exact rational
form, live here natively.  The exterior monomial structure is shared with
the symbolic layer, so wedges keep their combinatorial meaning and the
frame contraction is a batched alternating determinant.
"""

from __future__ import annotations

import numpy as np

from .forms import merge_with_sign


def batch_values(ctx, Z):
    """Full variable-value arrays (conjugates and quadratic square roots)
    for a batch of points Z with shape (m, n)."""
    m = Z.shape[0]
    values = [None] * ctx.nvars
    if ctx.kind == "complex":
        for i in range(ctx.n):
            values[i] = Z[:, i]
            values[ctx.n + i] = np.conj(Z[:, i])
    else:
        for i in range(ctx.n):
            values[i] = Z[:, i].astype(complex)
    for name in ctx.quad_names:
        q = ctx.quad_expansions[name].eval_batch(values[: ctx.nbase] + [None] * len(ctx.quad_names))
        values[ctx.sqrt_index[name]] = np.sqrt(np.abs(q.real))
    return values


class NumericForm:
    """List of (coefficient function, exterior monomial) pairs.

    Coefficient functions take the batch_values list and return an array
    of complex values; duplicate monomials are allowed and simply sum."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = list(terms)

    @staticmethod
    def from_symbolic(form, pole_tol=1e-9):
        terms = []
        for mono, coef in form.terms.items():
            terms.append((_coefficient_fn(coef, pole_tol), mono))
        return NumericForm(form.ctx, terms)

    @staticmethod
    def zero(ctx):
        return NumericForm(ctx, [])

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        degs = {len(m) for _, m in self.terms}
        if not degs:
            return 0
        if len(degs) == 1:
            return degs.pop()
        return None

    # -- algebra -----------------------------------------------------------

    def __add__(self, other):
        return NumericForm(self.ctx, self.terms + other.terms)

    def __neg__(self):
        return self.scale(-1.0)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return NumericForm(
            self.ctx,
            [(_scaled(fn, factor), mono) for fn, mono in self.terms],
        )

    def mul_scalar_fn(self, scalar_fn):
        """Multiply by a numeric function of the point (a 0-form)."""
        return NumericForm(
            self.ctx,
            [(_product(scalar_fn, fn), mono) for fn, mono in self.terms],
        )

    def wedge(self, other):
        terms = []
        for f1, m1 in self.terms:
            for f2, m2 in other.terms:
                mono, sign = merge_with_sign(m1, m2)
                if mono is None:
                    continue
                fn = _product(f1, f2)
                if sign < 0:
                    fn = _scaled(fn, -1.0)
                terms.append((fn, mono))
        return NumericForm(self.ctx, terms)

    # -- evaluation -----------------------------------------------------------

    def coefficients_at(self, Z):
        """Summed coefficient arrays keyed by exterior monomial."""
        values = batch_values(self.ctx, Z)
        out = {}
        for fn, mono in self.terms:
            arr = fn(values)
            if mono in out:
                out[mono] = out[mono] + arr
            else:
                out[mono] = arr
        return out

    def eval_batch(self, Z, frames):
        """Contract against per-point frames of shape (m, k, n)."""
        values = batch_values(self.ctx, Z)
        total = np.zeros(Z.shape[0], dtype=complex)
        for fn, mono in self.terms:
            total += fn(values) * _frame_det_batch(self.ctx, mono, frames)
        return total

    def eval_at(self, point, frame):
        Z = np.asarray([point], dtype=complex)
        frames = np.asarray([frame], dtype=complex)
        return complex(self.eval_batch(Z, frames)[0])


def _coefficient_fn(coef, pole_tol):
    def fn(values):
        return coef.eval_factors(values, pole_tol)

    return fn


def _scaled(fn, factor):
    def scaled(values):
        return fn(values) * factor

    return scaled


def _product(f1, f2):
    def prod(values):
        return f1(values) * f2(values)

    return prod


def constant_fn(value):
    def fn(values):
        base = values[0]
        return np.full(base.shape, value, dtype=complex)

    return fn


def _frame_det_batch(ctx, mono, frames):
    m = frames.shape[0]
    k = len(mono)
    if k == 0:
        return np.ones(m, dtype=complex)
    mat = np.empty((m, k, k), dtype=complex)
    for r, fid in enumerate(mono):
        if ctx.kind == "complex" and fid >= ctx.n:
            mat[:, r, :] = np.conj(frames[:, :, fid - ctx.n])
        else:
            mat[:, r, :] = frames[:, :, fid]
    if k == 1:
        return mat[:, 0, 0]
    return np.linalg.det(mat)


def wirtinger_dbar_residual(nform, Z, step=3e-5):
    """Max pointwise residual of dbar applied to a numeric form, with the
    coefficient derivatives taken by central differences in each real
    coordinate (d/dzbar = (d/dx + i d/dy) / 2)."""
    ctx = nform.ctx
    n = ctx.n
    residual = {}
    for i in range(n):
        shifts = {}
        for axis, delta in (("x", step), ("y", step * 1j)):
            zp = Z.copy()
            zp[:, i] += delta
            zm = Z.copy()
            zm[:, i] -= delta
            shifts[axis] = (nform.coefficients_at(zp), nform.coefficients_at(zm))
        monos = set(shifts["x"][0])
        for mono in monos:
            dx = (shifts["x"][0][mono] - shifts["x"][1][mono]) / (2 * step)
            dy = (shifts["y"][0][mono] - shifts["y"][1][mono]) / (2 * step)
            dbar_c = 0.5 * (dx + 1j * dy)
            target, sign = merge_with_sign((n + i,), mono)
            if target is None:
                continue
            piece = dbar_c if sign > 0 else -dbar_c
            if target in residual:
                residual[target] = residual[target] + piece
            else:
                residual[target] = piece
    if not residual:
        return 0.0
    return float(max(np.max(np.abs(arr)) for arr in residual.values()))
