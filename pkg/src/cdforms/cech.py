"""Coverings, nerves and Cech-Dolbeault cochains.

Cochains are stored only on strictly increasing simplices and extended
alternately on lookup, so every coboundary sign is computed in one place.
Nerve membership for the standard coverings is decided symbolically: all
intersections of distinct coordinate sets are nonempty.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .context import ORIGIN
from .forms import Form
from .scalars import Scalar


@dataclass(frozen=True)
class Domain:
    kind: str
    index: int | None = None
    tag: str | None = None

    @staticmethod
    def all_space():
        return Domain("all")

    @staticmethod
    def coord_nonzero(i):
        return Domain("coord-nonzero", index=i)

    @staticmethod
    def complement_origin():
        return Domain("complement-closed", tag=ORIGIN)

    @staticmethod
    def complement_of(tag):
        return Domain("complement-closed", tag=tag)

    @staticmethod
    def neighborhood_of(tag):
        return Domain("neighborhood", tag=tag)

    def licenses_variable(self, coord_index):
        return self.kind == "coord-nonzero" and self.index == coord_index

    def licenses_locus(self, tag):
        """Does this domain syntactically exclude the given zero locus?"""
        if self.kind == "complement-closed" and self.tag == tag:
            return True
        if tag == ORIGIN and self.kind == "coord-nonzero":
            return True
        return False


@dataclass(frozen=True)
class Covering:
    domains: tuple
    primed: frozenset = frozenset()

    @property
    def size(self):
        return len(self.domains)

    def simplices(self, cech_degree):
        return list(combinations(range(self.size), cech_degree + 1))

    def all_primed(self, simplex):
        return all(v in self.primed for v in simplex)


def coordinate_covering(n):
    """W_i = {z_i != 0}, i = 1..n, covering C^n minus the origin."""
    return Covering(tuple(Domain.coord_nonzero(i) for i in range(1, n + 1)))


def pair_covering(tag=ORIGIN):
    """{V0, V1} with V0 the complement of the closed set and V1 a
    neighborhood of it; V0 is the primed member."""
    return Covering(
        (Domain.complement_of(tag), Domain.neighborhood_of(tag)),
        primed=frozenset({0}),
    )


def _perm_sign_and_sorted(simplex):
    order = sorted(range(len(simplex)), key=lambda k: simplex[k])
    sign = 1
    seen = list(order)
    for start in range(len(seen)):
        while seen[start] != start:
            j = seen[start]
            seen[start], seen[j] = seen[j], seen[start]
            sign = -sign
    return tuple(simplex[k] for k in order), sign


class Cochain:
    """Cochain of total degree q and form bidegree p: the piece at Cech
    degree q1 maps (q1+1)-simplices to (p, q - q1)-forms."""

    __slots__ = ("covering", "ctx", "p", "q", "pieces")

    def __init__(self, covering, ctx, p, q, pieces=None):
        self.covering = covering
        self.ctx = ctx
        self.p = p
        self.q = q
        self.pieces = {}
        if pieces:
            for q1, table in pieces.items():
                clean = {s: f for s, f in table.items() if not f.is_zero()}
                if clean:
                    self.pieces[q1] = clean

    @staticmethod
    def zero(covering, ctx, p, q):
        return Cochain(covering, ctx, p, q)

    def set(self, q1, simplex, form):
        simplex = tuple(simplex)
        if form.is_zero():
            table = self.pieces.get(q1)
            if table is not None:
                table.pop(simplex, None)
                if not table:
                    del self.pieces[q1]
            return
        self.pieces.setdefault(q1, {})[simplex] = form

    def get(self, q1, simplex):
        """Alternating extension: repeated indices give zero, permutations
        pick up the permutation sign."""
        table = self.pieces.get(q1)
        if not table:
            return Form.zero(self.ctx)
        if len(set(simplex)) != len(simplex):
            return Form.zero(self.ctx)
        key, sign = _perm_sign_and_sorted(tuple(simplex))
        form = table.get(key)
        if form is None:
            return Form.zero(self.ctx)
        return form if sign > 0 else -form

    def items(self):
        for q1 in sorted(self.pieces):
            for simplex in sorted(self.pieces[q1]):
                yield q1, simplex, self.pieces[q1][simplex]

    # -- linear structure -----------------------------------------------

    def _zip(self, other, op):
        res = Cochain(self.covering, self.ctx, self.p, self.q)
        keys = set()
        for q1, table in self.pieces.items():
            keys.update((q1, s) for s in table)
        for q1, table in other.pieces.items():
            keys.update((q1, s) for s in table)
        for q1, s in keys:
            res.set(q1, s, op(self.get(q1, s), other.get(q1, s)))
        return res

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return self.map_forms(lambda q1, s, f: -f)

    def scale(self, scalar):
        return self.map_forms(lambda q1, s, f: f.scale(scalar))

    def map_forms(self, fn, p=None, q=None):
        res = Cochain(
            self.covering,
            self.ctx,
            self.p if p is None else p,
            self.q if q is None else q,
        )
        for q1, simplex, form in self.items():
            res.set(q1, simplex, fn(q1, simplex, form))
        return res

    def is_zero(self):
        return not self.pieces

    def validate_bidegrees(self):
        for q1, simplex, form in self.items():
            want = (self.p, self.q - q1)
            got = form.bidegree()
            if got is not None and got != want:
                raise ValueError(
                    f"piece at Cech degree {q1}, simplex {simplex} has "
                    f"bidegree {got}, expected {want}"
                )
        return True


# -- differentials ------------------------------------------------------------


def cech_delta(c):
    """Alternating-sum coboundary, raising the Cech degree by one."""
    res = Cochain(c.covering, c.ctx, c.p, c.q + 1)
    for q1 in list(c.pieces):
        for simplex in c.covering.simplices(q1 + 1):
            total = Form.zero(c.ctx)
            for nu in range(len(simplex)):
                face = simplex[:nu] + simplex[nu + 1 :]
                val = c.get(q1, face)
                if val.is_zero():
                    continue
                total = total + (val if nu % 2 == 0 else -val)
            res.set(q1 + 1, simplex, total)
    return res


def vartheta(c):
    """Total differential: (vartheta c)^{q1} = delta c^{q1-1} + (-1)^{q1} dbar c^{q1}."""
    res = Cochain(c.covering, c.ctx, c.p, c.q + 1)
    delta = cech_delta(c)
    for q1, simplex, form in delta.items():
        res.set(q1, simplex, form)
    for q1 in list(c.pieces):
        sign = 1 if q1 % 2 == 0 else -1
        for simplex, form in c.pieces[q1].items():
            df = form.dbar()
            if df.is_zero():
                continue
            if sign < 0:
                df = -df
            res.set(q1, simplex, res.get(q1, simplex) + df)
    return res


def del_total(c):
    """Holomorphic differential of the total complex:
    (del c)^{q1} = (-1)^(q - q1) del c^{q1}.  Commutes with vartheta."""

    def fn(q1, simplex, form):
        df = form.del_()
        return df if (c.q - q1) % 2 == 0 else -df

    return c.map_forms(fn, p=c.p + 1)


# -- products ------------------------------------------------------------------


def cup(x, y):
    """Cup product with the sign (-1)^((p+q-nu)(r-nu)); bilinear, associative,
    and Leibniz against vartheta."""
    if x.covering is not y.covering and x.covering != y.covering:
        raise ValueError("cup factors live on different coverings")
    res = Cochain(x.covering, x.ctx, x.p + y.p, x.q + y.q)
    deg_x = x.p + x.q
    max_x = max(x.pieces, default=-1)
    max_y = max(y.pieces, default=-1)
    if max_x < 0 or max_y < 0:
        return res
    for r in range(max_x + max_y + 1):
        for simplex in x.covering.simplices(r):
            total = Form.zero(x.ctx)
            for nu in range(r + 1):
                a = x.get(nu, simplex[: nu + 1])
                if a.is_zero():
                    continue
                b = y.get(r - nu, simplex[nu:])
                if b.is_zero():
                    continue
                term = a.wedge(b)
                if ((deg_x - nu) * (r - nu)) % 2:
                    term = -term
                total = total + term
            res.set(r, simplex, total)
    return res


def cup_relative(x, eta):
    """Pair a relative two-set cochain (xi1, xi01) with a form on V1:
    the result is (xi1 ^ eta, xi01 ^ eta)."""
    xi1, xi01 = pair_components(x)
    deg = eta.bidegree()
    if deg is None:
        raise ValueError("second factor must be homogeneous")
    return relative_pair(
        x.ctx,
        xi1.wedge(eta),
        xi01.wedge(eta),
        covering=x.covering,
        p=x.p + deg[0],
        q=x.q + deg[1],
    )


# -- predicates ------------------------------------------------------------------


def is_cocycle(c):
    return vartheta(c).is_zero()


def check_relative(c):
    """The stored form must vanish on every simplex with all vertices primed."""
    for q1, simplex, form in c.items():
        if c.covering.all_primed(simplex) and not form.is_zero():
            return False
    return True


@dataclass
class DomainIssue:
    cech_degree: int
    simplex: tuple
    factor: str
    message: str


@dataclass
class DomainCheckResult:
    ok: bool
    issues: list

    def __bool__(self):
        return self.ok


def domain_check(c):
    """Conservative pole licensing: a denominator factor is accepted only
    when some vertex of the simplex syntactically guarantees invertibility
    (CoordNonzero(i) licenses z_i poles; a domain excluding a zero locus
    licenses the quadratics vanishing only there).  Anything else is
    reported as unverifiable, never silently accepted."""
    issues = []
    for q1, simplex, form in c.items():
        domains = [c.covering.domains[v] for v in simplex]
        for mono, coef in form.terms.items():
            for j, e in enumerate(coef.den_mono):
                if not e:
                    continue
                name = c.ctx.var_name(j)
                coord = _coordinate_of(c.ctx, j)
                if coord is not None and any(
                    d.licenses_variable(coord) for d in domains
                ):
                    continue
                issues.append(
                    DomainIssue(
                        q1,
                        simplex,
                        name,
                        f"unverifiable: pole in {name} on simplex {simplex} "
                        "is not licensed by any covering member",
                    )
                )
            for j, k in enumerate(coef.den_quads):
                if not k:
                    continue
                qname = c.ctx.quad_names[j]
                tag = c.ctx.vanishing_tag(qname)
                if tag is not None and any(d.licenses_locus(tag) for d in domains):
                    continue
                issues.append(
                    DomainIssue(
                        q1,
                        simplex,
                        qname,
                        f"unverifiable: pole in {qname} on simplex {simplex} "
                        "is not licensed by any covering member",
                    )
                )
    return DomainCheckResult(not issues, issues)


def _coordinate_of(ctx, var_index):
    """1-based coordinate index whose vanishing kills this variable, if any."""
    if ctx.kind == "complex":
        if var_index < ctx.n:
            return var_index + 1
        if var_index < 2 * ctx.n:
            return var_index - ctx.n + 1
    elif var_index < ctx.n:
        return var_index + 1
    return None


# -- two-set relative pairs ---------------------------------------------------------


def relative_pair(ctx, xi1, xi01, covering=None, p=None, q=None):
    """Relative cochain (xi1, xi01) on the two-set covering {V0, V1} with
    V0 primed: xi1 sits on V1, xi01 on the overlap."""
    if covering is None:
        covering = pair_covering()
    if p is None or q is None:
        deg = xi1.bidegree()
        if deg is None:
            deg01 = xi01.bidegree()
            if deg01 is None:
                raise ValueError("cannot infer the bidegree of the pair")
            deg = (deg01[0], deg01[1] + 1)
        p, q = deg
    c = Cochain(covering, ctx, p, q)
    c.set(0, (1,), xi1)
    c.set(1, (0, 1), xi01)
    return c


def pair_components(c):
    return c.get(0, (1,)), c.get(1, (0, 1))


def cup_partition(x, y, rho, pole_tol=1e-9):
    """Partition-of-unity cup product of two relative two-set cochains,
    as evaluable numeric forms:

        (xi1 ^ eta1,
         rho1 xi01 ^ eta1
         + (-1)^(p+q) (rho2 xi1 ^ eta01 - dbar(rho1) ^ xi01 ^ eta01))

    with (p, q) the bidegree of the first factor.  rho supplies the numeric
    partition (rho1, rho2, dbar rho1); with rho1 = 1 and rho2 = 0 this
    reduces to the relative cup against a globally defined second factor.
    Evaluation-only: the cutoffs never enter the symbolic layer."""
    from .numeric import NumericForm

    xi1, xi01 = pair_components(x)
    eta1, eta01 = pair_components(y)

    def lift(f):
        return NumericForm.from_symbolic(f, pole_tol)

    sign = 1.0 if (x.p + x.q) % 2 == 0 else -1.0
    first = lift(xi1).wedge(lift(eta1))
    second = lift(xi01).wedge(lift(eta1)).mul_scalar_fn(rho.rho1)
    second = second + lift(xi1).wedge(lift(eta01)).mul_scalar_fn(rho.rho2).scale(sign)
    second = second - rho.dbar_rho1.wedge(lift(xi01)).wedge(lift(eta01)).scale(sign)
    return first, second


def vartheta_pair(xi1, xi01):
    """Two-set relative differential (dbar xi1, xi1 - dbar xi01)."""
    return xi1.dbar(), xi1 - xi01.dbar()


def del_pair(xi1, xi01, q):
    """Holomorphic differential of a relative (p,q) pair:
    (-1)^q (del xi1, -del xi01)."""
    sign = Scalar.from_int(1 if q % 2 == 0 else -1)
    return xi1.del_().scale(sign), xi01.del_().scale(-sign)
