"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial lives on a :class:`Chart` (an ordered tuple of variable names
with positive integer weights) and is stored as a dictionary mapping
exponent tuples to nonzero ``Fraction`` coefficients.  The zero polynomial
has an empty term map.  All arithmetic is exact; no floating point enters
anywhere in the engine.

The module also provides the expression parser / pretty-printer used by the
CLI and the test suite, a multivariate gcd (primitive-part recursion with
subresultant pseudo-remainder sequences), and the squarefreeness test that
backs the reducedness diagnostics.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ChartMismatchError, ParseError, PreconditionError, UnknownIdentifierError

Exponent = tuple[int, ...]

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class _MinusInfinity:
    """Degree of the zero polynomial: below every integer."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "MINUS_INFINITY"

    def __lt__(self, other) -> bool:
        return other is not MINUS_INFINITY

    def __le__(self, other) -> bool:
        return True

    def __gt__(self, other) -> bool:
        return False

    def __ge__(self, other) -> bool:
        return other is MINUS_INFINITY


MINUS_INFINITY = _MinusInfinity()


@dataclass(frozen=True)
class Chart:
    """An affine coordinate chart: variable names plus positive weights.

    Weights default to 1 and define the weighted degree used by the graded
    cohomology tables; they do not affect plain arithmetic.
    """

    names: tuple[str, ...]
    weights: tuple[int, ...] = ()

    def __post_init__(self):
        names = tuple(self.names)
        if not names:
            raise ValueError("a chart needs at least one variable")
        for name in names:
            if not _IDENT_RE.fullmatch(name):
                raise ValueError(f"invalid variable identifier: {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be pairwise distinct: {names}")
        weights = tuple(self.weights) if self.weights else (1,) * len(names)
        if len(weights) != len(names):
            raise ValueError("weights must list one positive integer per variable")
        if any(not isinstance(w, int) or w <= 0 for w in weights):
            raise ValueError(f"weights must be positive integers: {weights}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"chart has no variable {name!r}") from None

    def weighted_degree(self, exponent: Exponent) -> int:
        return sum(w * e for w, e in zip(self.weights, exponent))

    def __repr__(self) -> str:
        if all(w == 1 for w in self.weights):
            return f"Chart({', '.join(self.names)})"
        ws = ", ".join(f"{v}:{w}" for v, w in zip(self.names, self.weights))
        return f"Chart({ws})"


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


# Monomial order used internally for leading terms and printing: grevlex.
# Key sorts ascending (1 minimal); the tiebreak negates reversed exponents.
def grevlex_key(exponent: Exponent):
    return (sum(exponent), tuple(-e for e in reversed(exponent)))


class Poly:
    """A sparse multivariate polynomial with exact rational coefficients.

    Immutable after construction; zero coefficients are never stored.
    """

    __slots__ = ("chart", "terms")

    def __init__(self, chart: Chart, terms: dict[Exponent, Fraction] | None = None):
        cleaned: dict[Exponent, Fraction] = {}
        if terms:
            n = chart.n
            for exponent, coeff in terms.items():
                exponent = tuple(exponent)
                if len(exponent) != n or any(e < 0 or not isinstance(e, int) for e in exponent):
                    raise ValueError(f"bad exponent vector {exponent} for chart of dimension {n}")
                coeff = _as_fraction(coeff)
                if coeff:
                    cleaned[exponent] = coeff
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart) -> Poly:
        return cls(chart)

    @classmethod
    def constant(cls, chart: Chart, value) -> Poly:
        return cls(chart, {(0,) * chart.n: _as_fraction(value)})

    @classmethod
    def variable(cls, chart: Chart, var: int | str) -> Poly:
        i = chart.index(var) if isinstance(var, str) else var
        if not 0 <= i < chart.n:
            raise IndexError(f"variable index {i} out of range")
        exponent = tuple(1 if j == i else 0 for j in range(chart.n))
        return cls(chart, {exponent: Fraction(1)})

    @classmethod
    def monomial(cls, chart: Chart, exponent: Exponent, coeff=1) -> Poly:
        return cls(chart, {tuple(exponent): _as_fraction(coeff)})

    # -- predicates and views ---------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant:
            raise ValueError(f"not a constant polynomial: {self}")
        return next(iter(self.terms.values()))

    def weighted_degree(self):
        """Total weighted degree; MINUS_INFINITY for the zero polynomial."""
        if not self.terms:
            return MINUS_INFINITY
        return max(self.chart.weighted_degree(e) for e in self.terms)

    def total_degree(self):
        """Plain total degree (all weights 1); MINUS_INFINITY for zero."""
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(e) for e in self.terms)

    def leading(self, key=grevlex_key) -> tuple[Exponent, Fraction]:
        """Leading (exponent, coefficient) under the given monomial key."""
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        exponent = max(self.terms, key=key)
        return exponent, self.terms[exponent]

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    # -- arithmetic --------------------------------------------------------

    def _check_chart(self, other: Poly):
        if self.chart != other.chart:
            raise ChartMismatchError(f"charts differ: {self.chart!r} vs {other.chart!r}")

    def __add__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.chart, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_chart(other)
        out = dict(self.terms)
        for exponent, coeff in other.terms.items():
            acc = out.get(exponent, 0) + coeff
            if acc:
                out[exponent] = acc
            else:
                out.pop(exponent, None)
        return Poly(self.chart, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.chart, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.chart, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return Poly.zero(self.chart)
            return Poly(self.chart, {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_chart(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                acc = out.get(e, 0) + ca * cb
                if acc:
                    out[e] = acc
                else:
                    out.pop(e, None)
        return Poly(self.chart, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Poly:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"polynomial power needs a nonnegative integer, got {exponent!r}")
        result = Poly.constant(self.chart, 1)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.chart, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.chart == other.chart and self.terms == other.terms

    def __hash__(self):
        return hash((self.chart, frozenset(self.terms.items())))

    def diff(self, var: int | str) -> Poly:
        """Formal partial derivative with respect to one chart variable."""
        i = self.chart.index(var) if isinstance(var, str) else var
        if not 0 <= i < self.chart.n:
            raise IndexError(f"variable index {i} out of range")
        out: dict[Exponent, Fraction] = {}
        for exponent, coeff in self.terms.items():
            k = exponent[i]
            if k == 0:
                continue
            e = list(exponent)
            e[i] = k - 1
            out[tuple(e)] = coeff * k
        return Poly(self.chart, out)

    def shift(self, point) -> Poly:
        """Substitute x_i -> x_i + a_i (translate the point a to the origin)."""
        values = [_as_fraction(v) for v in point]
        if len(values) != self.chart.n:
            raise ValueError("translation point must supply one value per variable")
        result = Poly.zero(self.chart)
        for exponent, coeff in self.terms.items():
            term = Poly.constant(self.chart, coeff)
            for i, e in enumerate(exponent):
                if e:
                    term = term * (Poly.variable(self.chart, i) + values[i]) ** e
            result = result + term
        return result

    def evaluate(self, point) -> Fraction:
        """Exact value at a rational point."""
        values = [_as_fraction(v) for v in point]
        if len(values) != self.chart.n:
            raise ValueError("evaluation point must supply one value per variable")
        total = Fraction(0)
        for exponent, coeff in self.terms.items():
            term = coeff
            for v, e in zip(values, exponent):
                if e:
                    term *= v**e
            total += term
        return total

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)})"


def poly_arith(op: str, a: Poly, b) -> Poly:
    """Dispatch form of the arithmetic operators (add|sub|mul|pow|neg)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        return a**b
    if op == "neg":
        return -a
    raise ValueError(f"unknown arithmetic operation {op!r}")


def diff(p: Poly, var: int | str) -> Poly:
    return p.diff(var)


# ---------------------------------------------------------------------------
# Pretty-printer
# ---------------------------------------------------------------------------


def _format_coeff(c: Fraction) -> str:
    return str(c)  # Fraction prints as "p/q" or "p"


def _format_monomial(chart: Chart, exponent: Exponent) -> str:
    parts = []
    for name, e in zip(chart.names, exponent):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Normal-form text: terms in descending grevlex order.

    ``parse_poly(format_poly(p), p.chart) == p`` holds for every p.
    """
    if p.is_zero:
        return "0"
    pieces = []
    for exponent in sorted(p.terms, key=grevlex_key, reverse=True):
        coeff = p.terms[exponent]
        mono = _format_monomial(p.chart, exponent)
        mag = abs(coeff)
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


# ---------------------------------------------------------------------------
# Parser
#
# expr     := ['-'] term (('+'|'-') ['-'] term)*
# term     := factor ('*' factor)*
# factor   := base ('^' uint)?
# base     := rational | ident | '(' expr ')'
# rational := int ('/' uint)?
#
# Whitespace is insignificant.  Identifiers: ASCII letter followed by
# letters/digits/underscore.  A single unary minus may prefix any term.
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[bad_at]!r}", column=bad_at + 1)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _PolyParser:
    def __init__(self, text: str, chart: Chart):
        self.text = text
        self.chart = chart
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str):
        _, _, pos = self.peek()
        raise ParseError(message, column=pos + 1)

    def expect_op(self, op: str):
        kind, value, _ = self.peek()
        if kind != "op" or value != op:
            self.fail(f"expected {op!r}")
        self.advance()

    def parse(self) -> Poly:
        p = self.expr()
        kind, value, _ = self.peek()
        if kind != "end":
            self.fail(f"unexpected token {value!r}")
        return p

    def expr(self) -> Poly:
        result = self.signed_term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                rhs = self.signed_term()
                result = result + rhs if value == "+" else result - rhs
            else:
                return result

    def signed_term(self) -> Poly:
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            return -self.term()
        return self.term()

    def term(self) -> Poly:
        result = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Poly:
        base = self.base()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            kind, value, _ = self.peek()
            if kind != "int":
                self.fail("expected a nonnegative integer exponent after '^'")
            self.advance()
            return base ** int(value)
        return base

    def base(self) -> Poly:
        kind, value, pos = self.peek()
        if kind == "int":
            self.advance()
            numerator = int(value)
            kind, value, _ = self.peek()
            if kind == "op" and value == "/":
                self.advance()
                kind, value, _ = self.peek()
                if kind != "int":
                    self.fail("expected an integer denominator after '/'")
                self.advance()
                denominator = int(value)
                if denominator == 0:
                    raise ParseError("zero denominator", column=pos + 1)
                return Poly.constant(self.chart, Fraction(numerator, denominator))
            return Poly.constant(self.chart, numerator)
        if kind == "ident":
            self.advance()
            if value not in self.chart.names:
                raise UnknownIdentifierError(f"unknown identifier {value!r}", column=pos + 1)
            return Poly.variable(self.chart, value)
        if kind == "op" and value == "(":
            self.advance()
            inner = self.expr()
            self.expect_op(")")
            return inner
        self.fail("expected a rational, identifier, or parenthesized expression")

def parse_poly(text: str, chart: Chart) -> Poly:
    """Parse an expression in the chart's variables to normal form."""
    return _PolyParser(text, chart).parse()


# ---------------------------------------------------------------------------
# Division, gcd, squarefreeness
# ---------------------------------------------------------------------------


def exact_divide(p: Poly, d: Poly) -> Poly:
    """Quotient p/d when d divides p exactly; raises ValueError otherwise."""
    if d.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    p._check_chart(d)
    chart = p.chart
    lead_d, coeff_d = d.leading()
    quotient: dict[Exponent, Fraction] = {}
    remainder = p
    while not remainder.is_zero:
        lead_r, coeff_r = remainder.leading()
        q_exp = tuple(a - b for a, b in zip(lead_r, lead_d))
        if any(e < 0 for e in q_exp):
            raise ValueError("polynomial division is not exact")
        q_coeff = coeff_r / coeff_d
        quotient[q_exp] = q_coeff
        remainder = remainder - Poly.monomial(chart, q_exp, q_coeff) * d
    return Poly(chart, quotient)


def divides(d: Poly, p: Poly) -> bool:
    if p.is_zero:
        return not d.is_zero
    try:
        exact_divide(p, d)
        return True
    except ValueError:
        return False


def _max_var(p: Poly) -> int | None:
    """Highest variable index occurring in p, or None for constants."""
    best = None
    for exponent in p.terms:
        for i in range(p.chart.n - 1, -1, -1):
            if exponent[i]:
                best = i if best is None else max(best, i)
                break
    return best


def _to_univariate(p: Poly, var: int) -> dict[int, Poly]:
    """View p as a univariate polynomial in x_var with Poly coefficients."""
    chart = p.chart
    coeffs: dict[int, dict[Exponent, Fraction]] = {}
    for exponent, coeff in p.terms.items():
        k = exponent[var]
        e = list(exponent)
        e[var] = 0
        coeffs.setdefault(k, {})[tuple(e)] = coeff
    return {k: Poly(chart, t) for k, t in coeffs.items()}


def _from_univariate(chart: Chart, var: int, coeffs: dict[int, Poly]) -> Poly:
    terms: dict[Exponent, Fraction] = {}
    for k, c in coeffs.items():
        for exponent, coeff in c.terms.items():
            e = list(exponent)
            e[var] = k
            terms[tuple(e)] = coeff
    return Poly(chart, terms)


def _uni_degree(coeffs: dict[int, Poly]) -> int:
    return max(coeffs) if coeffs else -1


def _uni_scale(coeffs: dict[int, Poly], factor: Poly) -> dict[int, Poly]:
    return {k: c * factor for k, c in coeffs.items() if not (c * factor).is_zero}


def _uni_sub(a: dict[int, Poly], b: dict[int, Poly]) -> dict[int, Poly]:
    out = dict(a)
    for k, c in b.items():
        acc = out.get(k, None)
        acc = c.__neg__() if acc is None else acc - c
        if acc.is_zero:
            out.pop(k, None)
        else:
            out[k] = acc
    return out


def _pseudo_remainder(a: dict[int, Poly], b: dict[int, Poly], var: int) -> dict[int, Poly]:
    """prem(a, b): remainder of lc(b)^(deg a - deg b + 1) * a under division by b."""
    da, db = _uni_degree(a), _uni_degree(b)
    lb = b[db]
    r = dict(a)
    while True:
        dr = _uni_degree(r)
        if dr < db or dr < 0:
            break
        lr = r[dr]
        r = _uni_sub(_uni_scale(r, lb), {k + dr - db: c * lr for k, c in b.items()})
        r.pop(dr, None)
    return r


def _content(p: Poly, var: int) -> Poly:
    """Gcd of the coefficients of p viewed in x_var."""
    coeffs = list(_to_univariate(p, var).values())
    return gcd_multi(coeffs) if len(coeffs) > 1 else _normalize_monic(coeffs[0])


def _normalize_monic(p: Poly) -> Poly:
    if p.is_zero:
        return p
    _, lead_coeff = p.leading()
    return p * (1 / lead_coeff)


def _gcd_pair(a: Poly, b: Poly) -> Poly:
    """Gcd by primitive-part recursion with a subresultant-style PRS."""
    if a.is_zero:
        return _normalize_monic(b)
    if b.is_zero:
        return _normalize_monic(a)
    if a.is_constant or b.is_constant:
        return Poly.constant(a.chart, 1)
    var = max(_max_var(a), _max_var(b))
    ua, ub = _to_univariate(a, var), _to_univariate(b, var)
    if _uni_degree(ua) == 0 or _uni_degree(ub) == 0:
        # One operand does not involve the main variable: recurse on contents.
        return _gcd_pair(_content(a, var), _content(b, var))
    cont_a, cont_b = _content(a, var), _content(b, var)
    pa = _to_univariate(exact_divide(a, cont_a), var)
    pb = _to_univariate(exact_divide(b, cont_b), var)
    if _uni_degree(pa) < _uni_degree(pb):
        pa, pb = pb, pa
    # Primitive PRS: repeatedly take pseudo-remainders and strip contents.
    while True:
        rem = _pseudo_remainder(pa, pb, var)
        if not rem:
            break
        rem_poly = _from_univariate(a.chart, var, rem)
        rem_poly = exact_divide(rem_poly, _content(rem_poly, var))
        pa, pb = pb, _to_univariate(rem_poly, var)
    gcd_pp = _from_univariate(a.chart, var, pb)
    gcd_pp = exact_divide(gcd_pp, _content(gcd_pp, var))
    return _normalize_monic(_gcd_pair(cont_a, cont_b) * gcd_pp)


def gcd_multi(ps: list[Poly]) -> Poly:
    """Gcd of a nonempty family, monic under the grevlex leading term.

    Zero entries are ignored; all-zero input is an error.
    """
    if not ps:
        raise ValueError("gcd_multi needs at least one polynomial")
    nonzero = [p for p in ps if not p.is_zero]
    if not nonzero:
        raise ValueError("gcd_multi: all inputs are zero")
    g = nonzero[0]
    for p in nonzero[1:]:
        if g.is_constant:
            break
        g = _gcd_pair(g, p)
    return _normalize_monic(g)


def is_squarefree(p: Poly) -> bool:
    """True iff gcd(p, dp/dx_1, ..., dp/dx_n) is constant.

    Over characteristic zero this is exactly reducedness of the principal
    divisor cut out by p.  The verdict is for the polynomial ring; it agrees
    with the analytic notion for polynomial input.
    """
    if p.is_zero or p.is_constant:
        raise PreconditionError("squarefreeness needs a nonzero, nonconstant polynomial")
    partials = [p.diff(i) for i in range(p.chart.n)]
    return gcd_multi([p, *partials]).is_constant
