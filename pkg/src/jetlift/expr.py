"""Expression trees: parsing, printing, exact differentiation, evaluation.

The grammar is deliberately small; identity checking elsewhere is done by
random-point evaluation, so simplification here is best-effort only
(constant folding and 0/1 absorption), never a proof of equality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DomainError,
    ExprError,
    ParseError,
    SingularPointError,
    UnknownIdentifierError,
)

#: denominators smaller than this in magnitude raise SingularPointError
SINGULAR_GUARD = 1e-6

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt")


@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class Const(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Unary(Expr):
    op: str  # neg | sin | cos | exp | log | sqrt
    arg: Expr


@dataclass(frozen=True)
class Binary(Expr):
    op: str  # add | sub | mul | div
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: Fraction


ZERO = Const(0.0)
ONE = Const(1.0)


def _is_const(e: Expr, v=None) -> bool:
    return isinstance(e, Const) and (v is None or e.value == v)


# ---------------------------------------------------------------------------
# smart constructors (constant folding, 0/1 absorption)

def const(v) -> Const:
    return Const(float(v))


def var(name: str) -> Var:
    return Var(name)


def add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return Binary("add", a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return neg(b)
    if a == b:
        return ZERO
    return Binary("sub", a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return ZERO
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    if _is_const(a, -1.0):
        return neg(b)
    if _is_const(b, -1.0):
        return neg(a)
    return Binary("mul", a, b)


def div(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 0.0):
        raise ExprError("division by the constant zero")
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value / b.value)
    if _is_const(a, 0.0):
        return ZERO
    if _is_const(b, 1.0):
        return a
    return Binary("div", a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Unary) and a.op == "neg":
        return a.arg
    return Unary("neg", a)


def powr(base: Expr, exponent: Fraction) -> Expr:
    exponent = Fraction(exponent)
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if isinstance(base, Const):
        try:
            return Const(base.value ** float(exponent))
        except (ValueError, OverflowError, ZeroDivisionError):
            pass
    return Pow(base, exponent)


def fn(name: str, arg: Expr) -> Expr:
    if name not in FUNCTIONS:
        raise ExprError(f"unknown function {name!r}")
    if isinstance(arg, Const):
        try:
            return Const(getattr(math, name)(arg.value))
        except ValueError:
            pass
    return Unary(name, arg)


# ---------------------------------------------------------------------------
# differentiation

def differentiate(e: Expr, name: str) -> Expr:
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == name else ZERO
    if isinstance(e, Unary):
        du = differentiate(e.arg, name)
        u = e.arg
        if e.op == "neg":
            return neg(du)
        if e.op == "sin":
            return mul(fn("cos", u), du)
        if e.op == "cos":
            return neg(mul(fn("sin", u), du))
        if e.op == "exp":
            return mul(fn("exp", u), du)
        if e.op == "log":
            return div(du, u)
        if e.op == "sqrt":
            return div(du, mul(Const(2.0), fn("sqrt", u)))
        raise ExprError(f"cannot differentiate {e.op!r}")
    if isinstance(e, Binary):
        da = differentiate(e.left, name)
        db = differentiate(e.right, name)
        a, b = e.left, e.right
        if e.op == "add":
            return add(da, db)
        if e.op == "sub":
            return sub(da, db)
        if e.op == "mul":
            return add(mul(da, b), mul(a, db))
        if e.op == "div":
            return div(sub(mul(da, b), mul(a, db)), powr(b, Fraction(2)))
        raise ExprError(f"cannot differentiate {e.op!r}")
    if isinstance(e, Pow):
        db = differentiate(e.base, name)
        r = e.exponent
        return mul(mul(Const(float(r)), powr(e.base, r - 1)), db)
    raise ExprError(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# evaluation

def evaluate(e: Expr, env: dict, guard: float = SINGULAR_GUARD) -> float:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Unary):
        u = evaluate(e.arg, env, guard)
        if e.op == "neg":
            return -u
        if e.op == "log":
            if u <= 0.0:
                raise DomainError(f"log of non-positive value {u}")
            return math.log(u)
        if e.op == "sqrt":
            if u < 0.0:
                raise DomainError(f"sqrt of negative value {u}")
            return math.sqrt(u)
        return getattr(math, e.op)(u)
    if isinstance(e, Binary):
        a = evaluate(e.left, env, guard)
        b = evaluate(e.right, env, guard)
        if e.op == "add":
            return a + b
        if e.op == "sub":
            return a - b
        if e.op == "mul":
            return a * b
        if abs(b) < guard:
            raise SingularPointError(f"denominator {b} below guard {guard}")
        return a / b
    if isinstance(e, Pow):
        b = evaluate(e.base, env, guard)
        r = e.exponent
        if r.denominator != 1 and b < 0.0:
            raise DomainError(f"fractional power of negative base {b}")
        if r < 0 and abs(b) < guard:
            raise SingularPointError(f"base {b} below guard for negative power")
        return b ** float(r)
    raise ExprError(f"unknown node {e!r}")


def variables(e: Expr) -> set:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Unary):
        return variables(e.arg)
    if isinstance(e, Binary):
        return variables(e.left) | variables(e.right)
    if isinstance(e, Pow):
        return variables(e.base)
    return set()


def substitute(e: Expr, mapping: dict) -> Expr:
    """Rebuild e with every variable replaced by mapping[name] (an Expr)."""
    if isinstance(e, Const):
        return e
    if isinstance(e, Var):
        return mapping[e.name]
    if isinstance(e, Unary):
        u = substitute(e.arg, mapping)
        return neg(u) if e.op == "neg" else fn(e.op, u)
    if isinstance(e, Binary):
        a = substitute(e.left, mapping)
        b = substitute(e.right, mapping)
        return {"add": add, "sub": sub, "mul": mul, "div": div}[e.op](a, b)
    if isinstance(e, Pow):
        return powr(substitute(e.base, mapping), e.exponent)
    raise ExprError(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# printing

def _fmt_number(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _fmt_exponent(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


# precedence levels: add/sub 1, mul/div 2, pow base 4, atom 5
def _render(e: Expr, ctx: int) -> str:
    if isinstance(e, Const):
        s = _fmt_number(e.value)
        # a leading '-' is a legal 'base', but must be shielded from '^'
        if e.value < 0 and ctx >= 4:
            return f"({s})"
        return s
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Unary):
        if e.op == "neg":
            inner = e.arg
            if isinstance(inner, (Binary, Pow)):
                s = f"-({_render(inner, 0)})"
            else:
                s = f"-{_render(inner, 4)}"
            return f"({s})" if ctx >= 4 else s
        return f"{e.op}({_render(e.arg, 0)})"
    if isinstance(e, Binary):
        if e.op in ("add", "sub"):
            sym = "+" if e.op == "add" else "-"
            s = f"{_render(e.left, 1)} {sym} {_render(e.right, 2)}"
            return f"({s})" if ctx >= 2 else s
        sym = "*" if e.op == "mul" else "/"
        # the left side of '/' needs ctx 3: a trailing '^k' there would
        # otherwise swallow the slash into a rational exponent on re-parse
        left_ctx = 3 if e.op == "div" else 2
        s = f"{_render(e.left, left_ctx)}{sym}{_render(e.right, 3)}"
        return f"({s})" if ctx >= 3 else s
    if isinstance(e, Pow):
        s = f"{_render(e.base, 4)}^{_fmt_exponent(e.exponent)}"
        return f"({s})" if ctx >= 3 else s
    raise ExprError(f"unknown node {e!r}")


def to_string(e: Expr) -> str:
    return _render(e, 0)


# ---------------------------------------------------------------------------
# parsing

class _Tokenizer:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        if self.pos >= len(self.src):
            return None
        return self.src[self.pos]

    def number(self) -> float:
        self.skip_ws()
        start = self.pos
        src = self.src
        while self.pos < len(src) and src[self.pos].isdigit():
            self.pos += 1
        if self.pos < len(src) and src[self.pos] == ".":
            self.pos += 1
            while self.pos < len(src) and src[self.pos].isdigit():
                self.pos += 1
        if self.pos < len(src) and src[self.pos] in "eE":
            mark = self.pos
            self.pos += 1
            if self.pos < len(src) and src[self.pos] in "+-":
                self.pos += 1
            if self.pos < len(src) and src[self.pos].isdigit():
                while self.pos < len(src) and src[self.pos].isdigit():
                    self.pos += 1
            else:
                self.pos = mark  # not an exponent, e.g. '2*exp(t)'
        if self.pos == start:
            raise ParseError("expected a number", start)
        return float(src[start:self.pos])

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", start)
        return int(self.src[start:self.pos])

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        src = self.src
        while self.pos < len(src) and (src[self.pos].isalnum() or src[self.pos] == "_"):
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an identifier", start)
        return src[start:self.pos]


class _Parser:
    def __init__(self, src: str, coords):
        self.tok = _Tokenizer(src)
        self.coords = set(coords)

    def parse(self) -> Expr:
        e = self.expr()
        self.tok.skip_ws()
        if self.tok.pos != len(self.tok.src):
            raise ParseError(
                f"unexpected input {self.tok.src[self.tok.pos]!r}", self.tok.pos)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.peek() in ("+", "-"):
            op = self.tok.peek()
            self.tok.pos += 1
            rhs = self.term()
            e = add(e, rhs) if op == "+" else sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.tok.peek() in ("*", "/"):
            op = self.tok.peek()
            self.tok.pos += 1
            rhs = self.factor()
            e = mul(e, rhs) if op == "*" else div(e, rhs)
        return e

    def factor(self) -> Expr:
        e = self.base()
        if self.tok.peek() == "^":
            self.tok.pos += 1
            e = powr(e, self.rational())
        return e

    def rational(self) -> Fraction:
        sign = 1
        if self.tok.peek() == "-":
            self.tok.pos += 1
            sign = -1
        pos = self.tok.pos
        ch = self.tok.peek()
        if ch is None or not ch.isdigit():
            raise ParseError("exponent must be a rational constant", pos)
        num = self.tok.integer()
        if self.tok.peek() == "/":
            self.tok.pos += 1
            den = self.tok.integer()
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def base(self) -> Expr:
        ch = self.tok.peek()
        if ch is None:
            raise ParseError("unexpected end of input", self.tok.pos)
        if ch == "-":
            self.tok.pos += 1
            return neg(self.base())
        if ch == "(":
            self.tok.pos += 1
            e = self.expr()
            if self.tok.peek() != ")":
                raise ParseError("expected ')'", self.tok.pos)
            self.tok.pos += 1
            return e
        if ch.isdigit() or ch == ".":
            return const(self.tok.number())
        if ch.isalpha():
            pos = self.tok.pos
            name = self.tok.ident()
            if name in FUNCTIONS:
                if self.tok.peek() != "(":
                    raise ParseError(f"expected '(' after {name!r}", self.tok.pos)
                self.tok.pos += 1
                arg = self.expr()
                if self.tok.peek() != ")":
                    raise ParseError("expected ')'", self.tok.pos)
                self.tok.pos += 1
                return fn(name, arg)
            if name not in self.coords:
                raise UnknownIdentifierError(f"unknown identifier {name!r}", pos)
            return var(name)
        raise ParseError(f"unexpected character {ch!r}", self.tok.pos)


def parse_expr(src: str, coords) -> Expr:
    """Parse src against the given coordinate names."""
    return _Parser(src, coords).parse()
