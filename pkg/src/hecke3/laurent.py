"""Sparse multivariate Laurent polynomials over CycloNum, and their parser.

A LaurentExpr is a canonical map from exponent tuples (negative entries
allowed) to nonzero CycloNum coefficients.  The expression grammar is:

    expr   := ("+"|"-")? term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := atom ("^" signed-integer)?
    atom   := rational | "E(" integer ")" | variable | "(" expr ")"

Whitespace is insignificant; variables match [a-z][a-z0-9]*; multiplication
is always explicit.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cyclo import CycloNum

MAX_VAR_EXPONENT = 64


class LaurentError(ValueError):
    """Malformed expression or unsupported operation."""


class ParseError(LaurentError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class SpecializationDomainError(LaurentError):
    """A substitution value outside the allowed domain (zero)."""


class LaurentExpr:
    """Canonical sparse Laurent polynomial in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], CycloNum] | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if not c.is_zero()}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def constant(nvars: int, value) -> LaurentExpr:
        c = value if isinstance(value, CycloNum) else CycloNum.from_rational(value)
        return LaurentExpr(nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(nvars: int, index: int, power: int = 1) -> LaurentExpr:
        exps = [0] * nvars
        exps[index] = power
        return LaurentExpr(nvars, {tuple(exps): CycloNum.one()})

    @staticmethod
    def monomial(nvars: int, coeff: CycloNum, exps: tuple[int, ...]) -> LaurentExpr:
        return LaurentExpr(nvars, {tuple(exps): coeff})

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentExpr)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- ring operations --------------------------------------------------

    def _coerce(self, other) -> LaurentExpr:
        if isinstance(other, LaurentExpr):
            if other.nvars != self.nvars:
                raise LaurentError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction, CycloNum)):
            return LaurentExpr.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other) -> LaurentExpr:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentExpr(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentExpr:
        return LaurentExpr(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> LaurentExpr:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentExpr:
        return (-self) + other

    def __mul__(self, other) -> LaurentExpr:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, ...], CycloNum] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                s = c1 * c2 if s is None else s + c1 * c2
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return LaurentExpr(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentExpr:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise LaurentError("negative power of a non-monomial expression")
            (e, c), = self.terms.items()
            inv = LaurentExpr(self.nvars, {tuple(-x for x in e): c.invert()})
            return inv ** (-k)
        out = LaurentExpr.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- evaluation ------------------------------------------------------

    def evaluate(self, values: tuple[CycloNum, ...]) -> CycloNum:
        """Exact substitution; every value must be nonzero."""
        if len(values) != self.nvars:
            raise LaurentError("wrong number of values")
        for v in values:
            if v.is_zero():
                raise SpecializationDomainError("zero value in specialization")
        total = CycloNum.zero()
        cache: list[dict[int, CycloNum]] = [dict() for _ in range(self.nvars)]

        def power(i: int, k: int) -> CycloNum:
            got = cache[i].get(k)
            if got is None:
                got = values[i] ** k
                cache[i][k] = got
            return got

        for exps, coeff in self.terms.items():
            term = coeff
            for i, k in enumerate(exps):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    # -- rendering ---------------------------------------------------------

    def render(self, variables: tuple[str, ...]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms):
            coeff = self.terms[exps]
            factors = []
            for name, k in zip(variables, exps):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            cs = str(coeff)
            if not factors:
                parts.append(cs if _is_single(cs) else f"({cs})")
                continue
            body = "*".join(factors)
            if coeff.is_one():
                parts.append(body)
            elif (-coeff).is_one():
                parts.append("-" + body)
            elif _is_single(cs):
                parts.append(f"{cs}*{body}")
            else:
                parts.append(f"({cs})*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self) -> str:
        names = tuple(f"x{i}" for i in range(self.nvars))
        return f"LaurentExpr({self.render(names)})"


def _is_single(rendered: str) -> bool:
    """Whether a rendered cyclotomic scalar is a single product term."""
    depth = 0
    for i, ch in enumerate(rendered):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return False
    return True


# -- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.pos = 0
        self.variables = variables
        self.index = {name: i for i, name in enumerate(variables)}

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() in ("+", "-"):
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def expr(self) -> LaurentExpr:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        total = self.term()
        if sign < 0:
            total = -total
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            rhs = self.term()
            total = total - rhs if op == "-" else total + rhs
        return total

    def term(self) -> LaurentExpr:
        total = self.factor()
        while self.peek() == "*":
            self.pos += 1
            total = total * self.factor()
        return total

    def factor(self) -> LaurentExpr:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            if self.peek() == "^":
                raise self.error("malformed exponent")
            where = self.pos
            k = self.integer()
            if abs(k) > MAX_VAR_EXPONENT:
                raise ParseError(f"exponent {k} exceeds bound {MAX_VAR_EXPONENT}", where)
            return base ** k
        return base

    def atom(self) -> LaurentExpr:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.take(")")
            return inner
        if ch.isdigit():
            num = self.integer()
            if self.peek() == "/":
                self.pos += 1
                where = self.pos
                den = self.integer()
                if den == 0:
                    raise ParseError("zero denominator", where)
                return LaurentExpr.constant(len(self.variables), Fraction(num, den))
            return LaurentExpr.constant(len(self.variables), num)
        if ch == "E":
            self.pos += 1
            self.take("(")
            where = self.pos
            n = self.integer()
            if n < 1:
                raise ParseError(f"invalid root order {n}", where)
            self.take(")")
            return LaurentExpr.constant(len(self.variables), CycloNum.root_of_unity(n))
        if ch.isalpha() and ch.islower():
            start = self.pos
            self.pos += 1
            while self.pos < len(self.text) and (
                self.text[self.pos].islower() or self.text[self.pos].isdigit()
            ):
                self.pos += 1
            name = self.text[start:self.pos]
            if name not in self.index:
                raise ParseError(f"unknown variable {name!r}", start)
            return LaurentExpr.variable(len(self.variables), self.index[name])
        raise self.error("expected a rational, E(n), a variable, or '('")


def parse_expression(text: str, variables: tuple[str, ...] | list[str]) -> LaurentExpr:
    """Parse an expression over the named variables into canonical form."""
    variables = tuple(variables)
    if len(set(variables)) != len(variables):
        raise LaurentError("variable names must be distinct")
    p = _Parser(text, variables)
    out = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        raise p.error("trailing input")
    return out


def parse_scalar(text: str) -> CycloNum:
    """Parse a closed cyclotomic expression (no variables allowed)."""
    expr = parse_expression(text, ())
    return expr.terms.get((), CycloNum.zero())


# -- cyclotomic polynomial table ---------------------------------------------

MAX_CYCLOTOMIC_INDEX = 120


class UnsupportedCyclotomicIndex(LaurentError):
    def __init__(self, d: int):
        super().__init__(f"cyclotomic polynomial index {d} not in the supported table")
        self.d = d


@lru_cache(maxsize=None)
def cyclotomic_coeffs(d: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_d, low degree first."""
    if d < 1 or d > MAX_CYCLOTOMIC_INDEX:
        raise UnsupportedCyclotomicIndex(d)
    poly = [-1] + [0] * (d - 1) + [1]  # x^d - 1
    for e in range(1, d):
        if d % e == 0:
            div = cyclotomic_coeffs(e)
            poly = _polydiv(poly, list(div))
    return tuple(poly)


def _polydiv(num: list[int], den: list[int]) -> list[int]:
    out = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(rem[i + len(den) - 1], den[-1])
        assert r == 0
        out[i] = q
        for j, dc in enumerate(den):
            rem[i + j] -= q * dc
    assert all(c == 0 for c in rem)
    return out


def eval_cyclotomic_polynomial(d: int, x: CycloNum) -> CycloNum:
    """Phi_d evaluated exactly at x."""
    total = CycloNum.zero()
    power = CycloNum.one()
    for c in cyclotomic_coeffs(d):
        if c:
            total = total + power * CycloNum.from_rational(c)
        power = power * x
    return total
