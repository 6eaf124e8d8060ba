"""Expression language for the command line.

Grammar:
    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '^') factor)*
    factor := INT | 'i' | 'pi' | variable | differential
            | kernel '(' INT (',' INT)* ')' | '(' expr ')' | '-' factor

'^' is the wedge between form-valued factors and the integer power between
a scalar-valued factor and an integer literal; the two readings are
disambiguated after elaboration.  In a complex context the real symbols
x<k>/dx<k> elaborate to their holomorphic extensions z<k>/dz<k>.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .context import complex_space, real_space
from .forms import Form
from .scalars import I, PI, Scalar


class ParseError(ValueError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} (at position {position})")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*^(),]))"
)

KERNELS = {"beta", "beta0", "kappa", "kappa0", "psi", "Phi", "chi", "delta"}


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", pos)
        if m.group("int"):
            tokens.append(Token("int", m.group("int"), m.start("int")))
        elif m.group("name"):
            tokens.append(Token("name", m.group("name"), m.start("name")))
        else:
            tokens.append(Token("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Const:
    name: str  # "i" | "pi"


@dataclass(frozen=True)
class Symbol:
    family: str  # z | zbar | x | dz | dzbar | dx
    index: int
    pos: int


@dataclass(frozen=True)
class Kernel:
    name: str
    args: tuple
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * ^
    left: object
    right: object


_SYMBOL_RE = re.compile(r"^(dzbar|zbar|dz|dx|z|x)(\d+)$")


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, op):
        tok = self.advance()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected {op!r}", tok.pos)
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*^":
            op = self.advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return Neg(self.factor())
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        if tok.kind == "int":
            self.advance()
            return Num(int(tok.text))
        if tok.kind == "name":
            self.advance()
            return self.name_factor(tok)
        raise ParseError(f"unexpected token {tok.text!r}", tok.pos)

    def name_factor(self, tok):
        if tok.text in ("i", "pi"):
            return Const(tok.text)
        if tok.text in KERNELS:
            self.expect_op("(")
            args = [self.int_arg()]
            while self.peek().kind == "op" and self.peek().text == ",":
                self.advance()
                args.append(self.int_arg())
            self.expect_op(")")
            return Kernel(tok.text, tuple(args), tok.pos)
        m = _SYMBOL_RE.match(tok.text)
        if m:
            return Symbol(m.group(1), int(m.group(2)), tok.pos)
        raise ParseError(f"unknown identifier {tok.text!r}", tok.pos)

    def int_arg(self):
        tok = self.advance()
        neg = False
        if tok.kind == "op" and tok.text == "-":
            neg = True
            tok = self.advance()
        if tok.kind != "int":
            raise ParseError("expected an integer argument", tok.pos)
        v = int(tok.text)
        return -v if neg else v


def parse(text):
    return _Parser(tokenize(text)).parse()


# -- elaboration ------------------------------------------------------------------


class DimensionError(ValueError):
    pass


def _int_literal(node):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Neg):
        inner = _int_literal(node.operand)
        if inner is not None:
            return -inner
    return None


def elaborate(node, n, space="complex"):
    """Turn an AST into a Form in the declared context."""
    ctx = complex_space(n) if space == "complex" else real_space(n)
    return _Elaborator(ctx, n, space).run(node)


class _Elaborator:
    def __init__(self, ctx, n, space):
        self.ctx = ctx
        self.n = n
        self.space = space

    def run(self, node):
        if isinstance(node, Num):
            return Form.from_scalar(self.ctx, Scalar.from_int(node.value))
        if isinstance(node, Const):
            return Form.from_scalar(self.ctx, I if node.name == "i" else PI)
        if isinstance(node, Neg):
            return -self.run(node.operand)
        if isinstance(node, Symbol):
            return self.symbol(node)
        if isinstance(node, Kernel):
            return self.kernel(node)
        if isinstance(node, BinOp):
            if node.op == "+":
                return self.run(node.left) + self.run(node.right)
            if node.op == "-":
                return self.run(node.left) - self.run(node.right)
            if node.op == "*":
                return self.run(node.left).wedge(self.run(node.right))
            return self.power_or_wedge(node)
        raise TypeError(f"unknown AST node {node!r}")

    def power_or_wedge(self, node):
        exponent = _int_literal(node.right)
        left = self.run(node.left)
        if exponent is not None and left.total_degree() == 0:
            return self.power(left, exponent, node)
        return left.wedge(self.run(node.right))

    def power(self, base, exponent, node):
        if exponent >= 0:
            out = Form.from_scalar(self.ctx, Scalar.from_int(1))
            for _ in range(exponent):
                out = out.wedge(base)
            return out
        # negative powers only for constant scalars like pi^-2
        if list(base.terms) != [()]:
            raise ParseError(
                "negative powers are only defined for constant scalars",
                getattr(node.left, "pos", 0),
            )
        coef = base.terms[()]
        if any(coef.den_mono) or any(coef.den_quads) or coef.num.degree() > 0:
            raise ParseError(
                "negative powers are only defined for constant scalars",
                getattr(node.left, "pos", 0),
            )
        scalar = next(iter(coef.num.terms.values()))
        return Form.from_scalar(self.ctx, scalar ** exponent)

    def symbol(self, node):
        family, k = node.family, node.index
        if not 1 <= k <= self.n:
            raise DimensionError(
                f"index {k} outside the declared dimension {self.n}"
            )
        if self.space == "complex":
            # real symbols elaborate to their holomorphic extensions
            if family == "x":
                family = "z"
            elif family == "dx":
                family = "dz"
            if family in ("z", "zbar"):
                return Form.from_poly(self.ctx, self.ctx.poly_var(f"{family}{k}"))
            if family == "dz":
                return Form.differential(self.ctx, k - 1)
            if family == "dzbar":
                return Form.differential(self.ctx, self.n + k - 1)
            raise DimensionError(f"{family}{k} is not defined on C^n")
        if family == "x":
            return Form.from_poly(self.ctx, self.ctx.poly_var(f"x{k}"))
        if family == "dx":
            return Form.differential(self.ctx, k - 1)
        raise DimensionError(f"{family}{k} is not defined on R^l")

    def kernel(self, node):
        from . import hyper, kernels

        name, args = node.name, node.args
        if name == "psi":
            if self.space != "real":
                raise DimensionError(
                    "the angular form lives on R^l; use the real context"
                )
            if args != (self.n,):
                raise DimensionError(
                    f"psi argument must match the declared dimension {self.n}"
                )
            return kernels.angular_form(self.n)
        if self.space != "complex":
            raise DimensionError(f"{name} needs the complex context")
        if not args or args[0] != self.n:
            raise DimensionError(
                f"{name} argument must match the declared dimension {self.n}"
            )
        if name == "beta":
            return kernels.bochner_martinelli(self.n)
        if name == "beta0":
            return kernels.bm_zero(self.n)
        if name == "kappa":
            return kernels.cauchy(self.n)
        if name == "kappa0":
            return kernels.cauchy_zero(self.n)
        if name == "Phi":
            return kernels.make_Phi(self.n)
        if name == "delta":
            # the overlap component of the delta-function representative
            return hyper.delta_function(self.n).xi01
        if name == "chi":
            if len(args) < 3:
                raise ParseError("chi needs (n, p, i0, ...)", node.pos)
            p = args[1]
            index = tuple(args[2:])
            return kernels.correspondence_piece(self.n, p, index)
        raise ParseError(f"unknown kernel {name!r}", node.pos)


def parse_form(text, n, space="complex"):
    return elaborate(parse(text), n, space)
