"""Variable contexts for exterior calculus on C^n and R^l.

Holomorphic z_i and antiholomorphic zbar_i are independent commuting
polynomial variables (Wirtinger formalism); conjugation is imposed only at
numeric evaluation.  Each context also carries designated positive
quadratics (NormZ, NormZminusZbar, NormX) together with a formal square
root generator per quadratic, reduced by s^2 -> Q.  Their polynomial
expansions are fixed at construction and never rewritten.
"""

from __future__ import annotations

from functools import lru_cache

from .poly import Polynomial
from .scalars import ONE, Scalar

NORM_Z = "NormZ"
NORM_X = "NormX"
NORM_Z_MINUS_ZBAR = "NormZminusZbar"

# zero locus tags used by the covering domain checks
ORIGIN = "origin"
REAL_LOCUS = "real-locus"

_VANISHES_ON = {NORM_Z: ORIGIN, NORM_X: ORIGIN, NORM_Z_MINUS_ZBAR: REAL_LOCUS}


class VariableContext:
    """Fixed variable layout: base variables first, then one sqrt generator
    per designated quadratic.  Differential ids coincide with base variable
    indices (sqrt generators carry no differential of their own)."""

    __slots__ = (
        "kind",
        "n",
        "base_names",
        "quad_names",
        "nvars",
        "quad_expansions",
        "sqrt_index",
        "form_names",
        "_power_cache",
    )

    def __init__(self, kind, n, base_names, quads, form_names):
        self.kind = kind
        self.n = n
        self.base_names = tuple(base_names)
        self.quad_names = tuple(name for name, _ in quads)
        self.nvars = len(self.base_names) + len(self.quad_names)
        self.sqrt_index = {
            name: len(self.base_names) + j for j, name in enumerate(self.quad_names)
        }
        self.quad_expansions = {}
        for name, build in quads:
            self.quad_expansions[name] = build(self.nvars)
        self.form_names = tuple(form_names)
        self._power_cache = {}

    def quad_power(self, name, k):
        """Cached k-th power of a designated quadratic's expansion."""
        key = (name, k)
        cached = self._power_cache.get(key)
        if cached is None:
            cached = self.quad_expansions[name] ** k
            self._power_cache[key] = cached
        return cached

    # -- variable bookkeeping ---------------------------------------------

    @property
    def nbase(self):
        return len(self.base_names)

    def var_index(self, name):
        try:
            return self.base_names.index(name)
        except ValueError:
            return self.sqrt_index[name]

    def var_name(self, index):
        if index < self.nbase:
            return self.base_names[index]
        return "sqrt(%s)" % self.quad_names[index - self.nbase]

    def is_holomorphic_var(self, index):
        return self.kind == "complex" and index < self.n

    def is_antiholomorphic_var(self, index):
        return self.kind == "complex" and self.n <= index < 2 * self.n

    def quad_of_sqrt(self, index):
        return self.quad_names[index - self.nbase]

    def vanishing_tag(self, quad_name):
        return _VANISHES_ON.get(quad_name)

    # -- differential ids ---------------------------------------------------

    @property
    def nforms(self):
        return len(self.form_names)

    def form_name(self, fid):
        return self.form_names[fid]

    def is_holomorphic_form(self, fid):
        return self.kind == "complex" and fid < self.n

    # -- polynomial helpers ----------------------------------------------------

    def poly_zero(self):
        return Polynomial.zero(self.nvars)

    def poly_const(self, scalar):
        return Polynomial.constant(self.nvars, scalar)

    def poly_one(self):
        return Polynomial.constant(self.nvars, ONE)

    def poly_var(self, name_or_index, exponent=1):
        idx = (
            name_or_index
            if isinstance(name_or_index, int)
            else self.var_index(name_or_index)
        )
        return Polynomial.variable(self.nvars, idx, exponent)

    def reduce(self, poly):
        """Rewrite even powers of every sqrt generator via s^2 = Q."""
        for name in self.quad_names:
            s = self.sqrt_index[name]
            if poly.max_exponent(s) < 2:
                continue
            res = Polynomial.zero(self.nvars)
            for m, c in poly.terms.items():
                e = m[s]
                if e < 2:
                    res = res + Polynomial.monomial(self.nvars, m, c)
                    continue
                base = tuple(v if j != s else e % 2 for j, v in enumerate(m))
                res = res + self.quad_power(name, e // 2).mul_monomial(base, c)
            poly = res
        return poly

    def identity_images(self):
        return [Polynomial.variable(self.nvars, j) for j in range(self.nvars)]

    def __repr__(self):
        return f"VariableContext({self.kind}, n={self.n})"


def _sum_of(terms):
    def build(nvars):
        out = Polynomial.zero(nvars)
        for t in terms(nvars):
            out = out + t
        return out

    return build


@lru_cache(maxsize=None)
def complex_space(n):
    """C^n with variables z1..zn, zbar1..zbarn and quadratics
    NormZ = sum z_i*zbar_i and NormZminusZbar = sum -(z_i - zbar_i)^2."""
    base = tuple(f"z{i}" for i in range(1, n + 1)) + tuple(
        f"zbar{i}" for i in range(1, n + 1)
    )
    forms = tuple(f"dz{i}" for i in range(1, n + 1)) + tuple(
        f"dzbar{i}" for i in range(1, n + 1)
    )

    def norm_z(nvars):
        out = Polynomial.zero(nvars)
        for i in range(n):
            out = out + Polynomial.variable(nvars, i) * Polynomial.variable(
                nvars, n + i
            )
        return out

    def norm_z_minus_zbar(nvars):
        out = Polynomial.zero(nvars)
        minus_one = Scalar.from_int(-1)
        for i in range(n):
            d = Polynomial.variable(nvars, i) - Polynomial.variable(nvars, n + i)
            out = out + (d * d).scale(minus_one)
        return out

    return VariableContext(
        "complex",
        n,
        base,
        ((NORM_Z, norm_z), (NORM_Z_MINUS_ZBAR, norm_z_minus_zbar)),
        forms,
    )


@lru_cache(maxsize=None)
def real_space(l):
    """R^l with variables x1..xl and the quadratic NormX = sum x_i^2."""
    base = tuple(f"x{i}" for i in range(1, l + 1))
    forms = tuple(f"dx{i}" for i in range(1, l + 1))

    def norm_x(nvars):
        out = Polynomial.zero(nvars)
        for i in range(l):
            v = Polynomial.variable(nvars, i)
            out = out + v * v
        return out

    return VariableContext("real", l, base, ((NORM_X, norm_x),), forms)
