"""Multivariate polynomials over the exact Scalar field.

Terms are stored sparsely as a dict from exponent tuples to Scalars; zero
coefficients are never stored, so an empty dict is the zero polynomial and
structural equality is mathematical equality.
"""

from __future__ import annotations

from .scalars import Scalar, ONE


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None, prune=True):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif prune:
            self.terms = {m: c for m, c in terms.items() if not c.is_zero()}
        else:
            self.terms = terms

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(nvars):
        return Polynomial(nvars, {}, prune=False)

    @staticmethod
    def constant(nvars, scalar):
        if scalar.is_zero():
            return Polynomial.zero(nvars)
        return Polynomial(nvars, {(0,) * nvars: scalar}, prune=False)

    @staticmethod
    def variable(nvars, index, exponent=1):
        mono = tuple(exponent if j == index else 0 for j in range(nvars))
        return Polynomial(nvars, {mono: ONE}, prune=False)

    @staticmethod
    def monomial(nvars, mono, scalar=ONE):
        if scalar.is_zero():
            return Polynomial.zero(nvars)
        return Polynomial(nvars, {tuple(mono): scalar}, prune=False)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                res.pop(m, None)
            else:
                res[m] = s
        return Polynomial(self.nvars, res, prune=False)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Polynomial(
            self.nvars, {m: -c for m, c in self.terms.items()}, prune=False
        )

    def __mul__(self, other):
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                s = res.get(m)
                res[m] = c if s is None else s + c
        return Polynomial(self.nvars, res)

    def scale(self, scalar):
        if scalar.is_zero():
            return Polynomial.zero(self.nvars)
        return Polynomial(
            self.nvars, {m: c * scalar for m, c in self.terms.items()}, prune=False
        )

    def mul_monomial(self, mono, scalar=ONE):
        if scalar.is_zero():
            return Polynomial.zero(self.nvars)
        return Polynomial(
            self.nvars,
            {
                tuple(a + b for a, b in zip(m, mono)): c * scalar
                for m, c in self.terms.items()
            },
            prune=False,
        )

    def __pow__(self, k):
        assert k >= 0
        out = Polynomial.constant(self.nvars, ONE)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- calculus ---------------------------------------------------------

    def diff(self, index):
        res = {}
        for m, c in self.terms.items():
            e = m[index]
            if e == 0:
                continue
            dm = tuple(v - 1 if j == index else v for j, v in enumerate(m))
            res[dm] = c * Scalar.from_int(e)
        return Polynomial(self.nvars, res, prune=False)

    def substitute(self, images):
        """Replace variable j by the polynomial images[j] (all same target ring)."""
        if not self.terms:
            return Polynomial.zero(images[0].nvars if images else self.nvars)
        target_nvars = images[0].nvars
        out = Polynomial.zero(target_nvars)
        for m, c in self.terms.items():
            term = Polynomial.constant(target_nvars, c)
            for j, e in enumerate(m):
                if e:
                    term = term * images[j] ** e
            out = out + term
        return out

    # -- queries ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def max_exponent(self, index):
        if not self.terms:
            return 0
        return max(m[index] for m in self.terms)

    def min_exponent(self, index):
        """Smallest power of variable `index` over all terms (0 for the zero poly)."""
        if not self.terms:
            return 0
        return min(m[index] for m in self.terms)

    def coefficient_of(self, index, exponent):
        """Polynomial coefficient of variable[index]**exponent (variable removed)."""
        res = {}
        for m, c in self.terms.items():
            if m[index] == exponent:
                res[tuple(v if j != index else 0 for j, v in enumerate(m))] = c
        return Polynomial(self.nvars, res, prune=False)

    # -- evaluation -----------------------------------------------------------

    def eval(self, values):
        total = 0j
        for m, c in self.terms.items():
            v = c.evalf()
            for j, e in enumerate(m):
                if e:
                    v = v * values[j] ** e
            total += v
        return total

    def eval_batch(self, values):
        """Vectorized evaluation; `values` is a sequence of numpy arrays."""
        import numpy as np

        total = None
        for m, c in self.terms.items():
            v = None
            for j, e in enumerate(m):
                if e:
                    f = values[j] ** e
                    v = f if v is None else v * f
            term = c.evalf() if v is None else c.evalf() * v
            total = term if total is None else total + term
        if total is None:
            return np.zeros(len(values[0]) if len(values) else 0, dtype=complex)
        if not hasattr(total, "shape"):
            total = np.full(values[0].shape, total, dtype=complex)
        return total

    # -- printing ----------------------------------------------------------------

    def to_str(self, names):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            factors = []
            for j, e in enumerate(m):
                if e == 1:
                    factors.append(names[j])
                elif e:
                    factors.append(f"{names[j]}^{e}")
            body = "*".join(factors)
            cs = str(c)
            if body:
                parts.append(body if c.is_one() else f"{cs}*{body}")
            else:
                parts.append(cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {len(self.terms)} terms)"
