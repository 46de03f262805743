"""Expression DSL over chart coordinates.

Grammar (whitespace-insensitive)::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | power
    power  := atom ('^' number)?
    atom   := number | ident | ident '(' expr ')' | '(' expr ')'

Recognized function idents: sin cos sinh cosh tanh exp log sqrt.  Any other
ident must be a chart coordinate.  Power exponents are numeric literals, so
jets stay closed form; general f^g is written exp(g*log(f)).

Evaluation propagates second-order forward jets (value, gradient, Hessian),
exact to floating-point rounding.  A plain value evaluator backed by ``math``
is kept separate so finite-difference oracles never touch jet arithmetic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import ArityError, DomainError, ExprSyntaxError, UnknownSymbolError

FUNCTIONS = ("sin", "cos", "sinh", "cosh", "tanh", "exp", "log", "sqrt")

BINARY_OPS = ("add", "sub", "mul", "div", "pow")


class Expr:
    """Immutable expression tree node."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_string(self)


@dataclass(frozen=True, slots=True)
class Constant(Expr):
    value: float


@dataclass(frozen=True, slots=True)
class Coord(Expr):
    name: str


@dataclass(frozen=True, slots=True)
class Unary(Expr):
    op: str  # "neg" or a FUNCTIONS member
    child: Expr


@dataclass(frozen=True, slots=True)
class Binary(Expr):
    op: str  # BINARY_OPS member; pow right child must be a Constant
    left: Expr
    right: Expr


# --------------------------------------------------------------------------
# Tokenizer / parser
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),])"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError(pos, f"a token (got {text[pos]!r})")
        kind = m.lastgroup
        tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, coords: Sequence[str]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.coords = set(coords)

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            raise ExprSyntaxError(pos, f"'{op}'")
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        kind, _, pos = self.peek()
        if kind != "eof":
            raise ExprSyntaxError(pos, "end of input")
        return e

    def expr(self) -> Expr:
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                rhs = self.term()
                node = Binary("add" if text == "+" else "sub", node, rhs)
            else:
                return node

    def term(self) -> Expr:
        node = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                rhs = self.factor()
                node = Binary("mul" if text == "*" else "div", node, rhs)
            else:
                return node

    def factor(self) -> Expr:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Unary("neg", self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            sign = 1.0
            kind, text, pos = self.peek()
            # Signed exponents are accepted (superset of the strict grammar)
            # so printed trees always re-parse.
            if kind == "op" and text == "-":
                self.advance()
                sign = -1.0
                kind, text, pos = self.peek()
            if kind != "num":
                raise ExprSyntaxError(pos, "a numeric exponent")
            self.advance()
            return Binary("pow", base, Constant(sign * float(text)))
        return base

    def atom(self) -> Expr:
        kind, text, pos = self.advance()
        if kind == "num":
            return Constant(float(text))
        if kind == "ident":
            nkind, ntext, _ = self.peek()
            if nkind == "op" and ntext == "(":
                if text not in FUNCTIONS:
                    raise UnknownSymbolError(text, pos)
                self.advance()
                k2, t2, _ = self.peek()
                if k2 == "op" and t2 == ")":
                    raise ArityError(text)
                arg = self.expr()
                k2, t2, p2 = self.peek()
                if k2 == "op" and t2 == ",":
                    raise ArityError(text)
                self.expect_op(")")
                return Unary(text, arg)
            if text in self.coords:
                return Coord(text)
            raise UnknownSymbolError(text, pos)
        if kind == "op" and text == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ExprSyntaxError(pos, "a number, identifier or '('")


def parse_expr(text: str, coords: Sequence[str]) -> Expr:
    """Parse ``text`` into an expression tree over the given coordinates."""
    if not coords:
        raise ValueError("coords must be nonempty")
    if len(set(coords)) != len(coords):
        raise ValueError("coordinate names must be distinct")
    for c in coords:
        if c in FUNCTIONS:
            raise ValueError(f"coordinate name {c!r} shadows a function")
    return _Parser(text, coords).parse()


# --------------------------------------------------------------------------
# Printing (round-trips through parse_expr with identical evaluation)
# --------------------------------------------------------------------------

_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2}
_OPCHAR = {"add": "+", "sub": "-", "mul": "*", "div": "/"}


def _prec(e: Expr) -> int:
    if isinstance(e, Constant):
        return 6 if e.value >= 0 else 3  # negative literal binds like unary minus
    if isinstance(e, Coord):
        return 6
    if isinstance(e, Unary):
        return 3 if e.op == "neg" else 5
    if e.op == "pow":
        return 4
    return _PREC[e.op]


def _fmt_number(v: float) -> str:
    return repr(float(v))


def to_string(e: Expr) -> str:
    """Print an expression; parse_expr(to_string(e)) evaluates identically."""
    if isinstance(e, Constant):
        return _fmt_number(e.value)
    if isinstance(e, Coord):
        return e.name
    if isinstance(e, Unary):
        child = to_string(e.child)
        if e.op == "neg":
            return f"-({child})" if _prec(e.child) < 3 else f"-{child}"
        return f"{e.op}({child})"
    if e.op == "pow":
        if not isinstance(e.right, Constant):
            raise ValueError("pow exponent must be a Constant")
        base = to_string(e.left)
        if _prec(e.left) < 5:
            base = f"({base})"
        return f"{base}^{_fmt_number(e.right.value)}"
    p = _PREC[e.op]
    ls = to_string(e.left)
    if _prec(e.left) < p:
        ls = f"({ls})"
    rs = to_string(e.right)
    if _prec(e.right) <= p:
        rs = f"({rs})"
    ch = _OPCHAR[e.op]
    if p == 1:
        return f"{ls} {ch} {rs}"
    return f"{ls}{ch}{rs}"


# --------------------------------------------------------------------------
# Second-order jets
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Jet2:
    """Value, gradient and (exactly symmetric) Hessian at a point."""

    value: float
    grad: np.ndarray
    hess: np.ndarray


def _safe_pow(u: float, a: float) -> float:
    try:
        return math.pow(u, a)
    except ValueError:
        if u == 0.0:
            raise DomainError(f"0^{a:g} is undefined") from None
        raise DomainError(f"({u:g})^{a:g} is undefined for a non-integer exponent") from None
    except OverflowError:
        raise DomainError(f"({u:g})^{a:g} overflows") from None


# value, first and second derivative for each unary function
def _tanh_d1(u):
    t = math.tanh(u)
    return 1.0 - t * t


def _tanh_d2(u):
    t = math.tanh(u)
    return -2.0 * t * (1.0 - t * t)


_UNARY = {
    "sin": (math.sin, math.cos, lambda u: -math.sin(u)),
    "cos": (math.cos, lambda u: -math.sin(u), lambda u: -math.cos(u)),
    "sinh": (math.sinh, math.cosh, math.sinh),
    "cosh": (math.cosh, math.sinh, math.cosh),
    "tanh": (math.tanh, _tanh_d1, _tanh_d2),
    "exp": (math.exp, math.exp, math.exp),
    "log": (math.log, lambda u: 1.0 / u, lambda u: -1.0 / (u * u)),
    "sqrt": (
        math.sqrt,
        lambda u: 0.5 / math.sqrt(u),
        lambda u: -0.25 / (u * math.sqrt(u)),
    ),
}


def _check_unary_domain(op: str, u: float) -> None:
    if op == "log" and u <= 0.0:
        raise DomainError(f"log of non-positive value {u:g}")
    if op == "sqrt" and u < 0.0:
        raise DomainError(f"sqrt of negative value {u:g}")
    if op == "sqrt" and u == 0.0:
        raise DomainError("sqrt jet is undefined at 0")


def eval_jet2(e: Expr, coords: Sequence[str], point) -> Jet2:
    """Evaluate the second-order jet of ``e`` at ``point``.

    ``coords`` fixes the gradient/Hessian axis order.  Raises DomainError on
    log/sqrt/div/pow guards and UnknownSymbolError for coordinates not in
    ``coords``.
    """
    x = np.asarray(point, dtype=float)
    d = len(coords)
    if x.shape != (d,):
        raise ValueError(f"point has shape {x.shape}, expected ({d},)")
    index = {name: i for i, name in enumerate(coords)}

    def rec(node: Expr) -> tuple[float, np.ndarray, np.ndarray]:
        if isinstance(node, Constant):
            return float(node.value), np.zeros(d), np.zeros((d, d))
        if isinstance(node, Coord):
            try:
                i = index[node.name]
            except KeyError:
                raise UnknownSymbolError(node.name) from None
            g = np.zeros(d)
            g[i] = 1.0
            return float(x[i]), g, np.zeros((d, d))
        if isinstance(node, Unary):
            v, g, h = rec(node.child)
            if node.op == "neg":
                return -v, -g, -h
            _check_unary_domain(node.op, v)
            f, d1, d2 = _UNARY[node.op]
            try:
                fv, a1, a2 = f(v), d1(v), d2(v)
            except OverflowError:
                raise DomainError(f"{node.op}({v:g}) overflows") from None
            outer = np.outer(g, g)
            return fv, a1 * g, a1 * h + a2 * outer
        v1, g1, h1 = rec(node.left)
        op = node.op
        if op == "pow":
            if not isinstance(node.right, Constant):
                raise ValueError("pow exponent must be a Constant")
            a = float(node.right.value)
            if a == 0.0:
                return 1.0, np.zeros(d), np.zeros((d, d))
            if a == 1.0:
                return v1, g1, h1
            val = _safe_pow(v1, a)
            c1 = a * _safe_pow(v1, a - 1.0)
            c2 = a * (a - 1.0) * _safe_pow(v1, a - 2.0)
            return val, c1 * g1, c1 * h1 + c2 * np.outer(g1, g1)
        v2, g2, h2 = rec(node.right)
        if op == "add":
            return v1 + v2, g1 + g2, h1 + h2
        if op == "sub":
            return v1 - v2, g1 - g2, h1 - h2
        if op == "mul":
            return (
                v1 * v2,
                v1 * g2 + v2 * g1,
                v1 * h2 + v2 * h1 + np.outer(g1, g2) + np.outer(g2, g1),
            )
        if op == "div":
            if v2 == 0.0:
                raise DomainError("division by zero")
            q = v1 / v2
            gq = (g1 - q * g2) / v2
            hq = (h1 - q * h2 - np.outer(gq, g2) - np.outer(g2, gq)) / v2
            return q, gq, hq
        raise ValueError(f"unknown binary op {op!r}")

    v, g, h = rec(e)
    return Jet2(v, g, h)


def eval_value(e: Expr, coords: Sequence[str], point) -> float:
    """Plain value evaluation via math.*; independent of jet arithmetic."""
    x = np.asarray(point, dtype=float)
    index = {name: i for i, name in enumerate(coords)}

    def rec(node: Expr) -> float:
        if isinstance(node, Constant):
            return float(node.value)
        if isinstance(node, Coord):
            try:
                return float(x[index[node.name]])
            except KeyError:
                raise UnknownSymbolError(node.name) from None
        if isinstance(node, Unary):
            v = rec(node.child)
            if node.op == "neg":
                return -v
            if node.op == "log" and v <= 0.0:
                raise DomainError(f"log of non-positive value {v:g}")
            if node.op == "sqrt" and v < 0.0:
                raise DomainError(f"sqrt of negative value {v:g}")
            fn = getattr(math, node.op)
            try:
                return fn(v)
            except OverflowError:
                raise DomainError(f"{node.op}({v:g}) overflows") from None
        v1 = rec(node.left)
        if node.op == "pow":
            return _safe_pow(v1, float(node.right.value))
        v2 = rec(node.right)
        if node.op == "add":
            return v1 + v2
        if node.op == "sub":
            return v1 - v2
        if node.op == "mul":
            return v1 * v2
        if v2 == 0.0:
            raise DomainError("division by zero")
        return v1 / v2

    return rec(e)


# --------------------------------------------------------------------------
# Symbolic derivative and substitution (internal plumbing for gradient
# fields and frozen potentials; no user-facing simplification)
# --------------------------------------------------------------------------


def _is_const(e: Expr, v: float | None = None) -> bool:
    return isinstance(e, Constant) and (v is None or e.value == v)


def _add(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    if isinstance(a, Constant) and isinstance(b, Constant):
        return Constant(a.value + b.value)
    return Binary("add", a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 0.0):
        return a
    if isinstance(a, Constant) and isinstance(b, Constant):
        return Constant(a.value - b.value)
    if _is_const(a, 0.0):
        return _neg(b)
    return Binary("sub", a, b)


def _neg(a: Expr) -> Expr:
    if isinstance(a, Constant):
        return Constant(-a.value)
    return Unary("neg", a)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return Constant(0.0)
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    if isinstance(a, Constant) and isinstance(b, Constant):
        return Constant(a.value * b.value)
    return Binary("mul", a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0.0):
        return Constant(0.0)
    if _is_const(b, 1.0):
        return a
    return Binary("div", a, b)


def _pow(a: Expr, c: float) -> Expr:
    if c == 0.0:
        return Constant(1.0)
    if c == 1.0:
        return a
    return Binary("pow", a, Constant(c))


def differentiate(e: Expr, name: str) -> Expr:
    """Exact symbolic derivative of ``e`` with respect to coordinate ``name``."""
    if isinstance(e, Constant):
        return Constant(0.0)
    if isinstance(e, Coord):
        return Constant(1.0 if e.name == name else 0.0)
    if isinstance(e, Unary):
        du = differentiate(e.child, name)
        u = e.child
        if e.op == "neg":
            return _neg(du)
        if e.op == "sin":
            return _mul(Unary("cos", u), du)
        if e.op == "cos":
            return _neg(_mul(Unary("sin", u), du))
        if e.op == "sinh":
            return _mul(Unary("cosh", u), du)
        if e.op == "cosh":
            return _mul(Unary("sinh", u), du)
        if e.op == "tanh":
            return _mul(_sub(Constant(1.0), _pow(Unary("tanh", u), 2.0)), du)
        if e.op == "exp":
            return _mul(Unary("exp", u), du)
        if e.op == "log":
            return _div(du, u)
        if e.op == "sqrt":
            return _div(du, _mul(Constant(2.0), Unary("sqrt", u)))
        raise ValueError(f"unknown unary op {e.op!r}")
    da = differentiate(e.left, name)
    if e.op == "pow":
        c = float(e.right.value)  # type: ignore[union-attr]
        return _mul(_mul(Constant(c), _pow(e.left, c - 1.0)), da)
    db = differentiate(e.right, name)
    if e.op == "add":
        return _add(da, db)
    if e.op == "sub":
        return _sub(da, db)
    if e.op == "mul":
        return _add(_mul(da, e.right), _mul(e.left, db))
    if e.op == "div":
        return _div(_sub(_mul(da, e.right), _mul(e.left, db)), _pow(e.right, 2.0))
    raise ValueError(f"unknown binary op {e.op!r}")


def substitute(e: Expr, values: dict[str, float]) -> Expr:
    """Replace coordinates by numeric constants (used to freeze factors)."""
    if isinstance(e, Constant):
        return e
    if isinstance(e, Coord):
        if e.name in values:
            return Constant(float(values[e.name]))
        return e
    if isinstance(e, Unary):
        return Unary(e.op, substitute(e.child, values))
    return Binary(e.op, substitute(e.left, values), substitute(e.right, values))


def free_coords(e: Expr) -> Iterator[str]:
    """Yield coordinate names appearing in ``e`` (with repeats)."""
    if isinstance(e, Coord):
        yield e.name
    elif isinstance(e, Unary):
        yield from free_coords(e.child)
    elif isinstance(e, Binary):
        yield from free_coords(e.left)
        yield from free_coords(e.right)
