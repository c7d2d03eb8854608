"""Exact multivariate polynomial arithmetic over Q and prime fields.

Everything here is immutable after construction.  A polynomial is a sparse
map from exponent tuples to nonzero field elements; a vector is a tuple of
polynomials sharing a ring.  Coefficients are `fractions.Fraction` in
characteristic zero and plain ints reduced mod p otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

Exps = tuple


class RingError(Exception):
    pass


class ParseError(RingError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: Q when characteristic is 0, else F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            return
        if p < 2 or p >= 2**31 or not _is_prime(p):
            raise RingError(f"characteristic must be 0 or a prime < 2^31, got {p}")

    @property
    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    @property
    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def coerce(self, a):
        p = self.characteristic
        if p:
            if isinstance(a, Fraction):
                return self.div(a.numerator % p, a.denominator % p)
            return int(a) % p
        return Fraction(a)

    def add(self, a, b):
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a, b):
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a, b):
        p = self.characteristic
        return (a * b) % p if p else a * b

    def neg(self, a):
        p = self.characteristic
        return (-a) % p if p else -a

    def inv(self, a):
        p = self.characteristic
        if p:
            if a % p == 0:
                raise ZeroDivisionError("inverse of zero in prime field")
            return pow(a, p - 2, p)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class RingSpec:
    """Polynomial ring k[x1..xn], thought of as localized at the origin."""

    field: FieldSpec
    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(self.variables) < 1:
            raise RingError("need at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise RingError("variable names must be unique")

    @property
    def nvars(self):
        return len(self.variables)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def constant(self, c):
        c = self.field.coerce(c)
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def variable(self, name):
        i = self.variables.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def monomial(self, exps, coeff=None):
        c = self.field.one if coeff is None else self.field.coerce(coeff)
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {tuple(exps): c})


def QQ(*variables):
    """Convenience constructor for Q[variables]."""
    return RingSpec(FieldSpec(0), tuple(variables))


def GF(p, *variables):
    """Convenience constructor for F_p[variables]."""
    return RingSpec(FieldSpec(p), tuple(variables))


class Polynomial:
    """Sparse exact polynomial.  Terms map exponent tuples to nonzero coeffs."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        zero = ring.field.zero
        self.terms = {e: c for e, c in sorted(terms.items()) if c != zero}

    def is_zero(self):
        return not self.terms

    @property
    def order(self):
        """The m-adic order v: minimal total degree, +inf for zero."""
        if not self.terms:
            return math.inf
        return min(sum(e) for e in self.terms)

    @property
    def degree(self):
        if not self.terms:
            return -math.inf
        return max(sum(e) for e in self.terms)

    def initial_form(self):
        """Lowest-degree homogeneous part; errors on zero."""
        if not self.terms:
            raise RingError("zero polynomial has no initial form")
        v = self.order
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) == v})

    def homogeneous_part(self, d):
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def truncate(self, d):
        """Drop all terms of total degree >= d."""
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) < d})

    def __add__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = f.add(out.get(e, f.zero), c)
        return Polynomial(self.ring, out)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {e: f.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prev = out.get(e)
                out[e] = f.mul(c1, c2) if prev is None else f.add(prev, f.mul(c1, c2))
        return Polynomial(self.ring, out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __pow__(self, n):
        if n < 0:
            raise RingError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        f = self.ring.field
        c = f.coerce(c)
        return Polynomial(self.ring, {e: f.mul(c, v) for e, v in self.terms.items()})

    def mul_monomial(self, exps, c=None):
        f = self.ring.field
        c = f.one if c is None else c
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): f.mul(c, v) for e, v in self.terms.items()},
        )

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingError("mixed rings")
            return other
        return self.ring.constant(other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.variables, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == self.ring.field.one:
                parts.append(mono)
            elif self.ring.field.characteristic == 0 and c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


class Vector:
    """Element of a free module R^rank: a tuple of polynomials."""

    __slots__ = ("ring", "polys")

    def __init__(self, polys, ring=None):
        polys = tuple(polys)
        if ring is None:
            if not polys:
                raise RingError("empty vector needs an explicit ring")
            ring = polys[0].ring
        for p in polys:
            if p.ring != ring:
                raise RingError("mixed rings in vector")
        self.ring = ring
        self.polys = polys

    @property
    def rank(self):
        return len(self.polys)

    def is_zero(self):
        return all(p.is_zero() for p in self.polys)

    @property
    def order(self):
        """min over components of the component order; +inf for zero."""
        return min((p.order for p in self.polys), default=math.inf)

    @property
    def degree(self):
        return max((p.degree for p in self.polys), default=-math.inf)

    def initial_form(self):
        if self.is_zero():
            raise RingError("zero vector has no initial form")
        v = self.order
        return Vector([p.homogeneous_part(v) for p in self.polys], self.ring)

    def is_homogeneous(self):
        degs = {sum(e) for p in self.polys for e in p.terms}
        return len(degs) <= 1

    def __add__(self, other):
        self._check(other)
        return Vector([a + b for a, b in zip(self.polys, other.polys)], self.ring)

    def __sub__(self, other):
        self._check(other)
        return Vector([a - b for a, b in zip(self.polys, other.polys)], self.ring)

    def __neg__(self):
        return Vector([-p for p in self.polys], self.ring)

    def scale(self, c):
        return Vector([p.scale(c) for p in self.polys], self.ring)

    def mul_poly(self, q):
        return Vector([p * q for p in self.polys], self.ring)

    def _check(self, other):
        if not isinstance(other, Vector) or other.rank != self.rank:
            raise RingError("mixed ranks")

    def __eq__(self, other):
        return isinstance(other, Vector) and self.polys == other.polys

    def __hash__(self):
        return hash(self.polys)

    def __repr__(self):
        return "(" + ", ".join(str(p) for p in self.polys) + ")"


def as_vector(x, rank=1):
    if isinstance(x, Vector):
        return x
    return Vector([x] + [x.ring.zero()] * (rank - 1), x.ring)


def unit_vector(ring, rank, i, poly=None):
    polys = [ring.zero()] * rank
    polys[i] = ring.one() if poly is None else poly
    return Vector(polys, ring)


def order_v(x):
    """m-adic order of a polynomial or module element (+inf for zero)."""
    return x.order


def initial_form(x):
    return x.initial_form()


# ---------------------------------------------------------------------------
# Monomial orders.
#
# Both base orders are degree-compatible with reverse-lexicographic
# tie-break: `global` prefers higher total degree, `local` lower.  Module
# orders are term-over-position (lower component index wins ties), with an
# optional Schreyer twist by one monomial tag per basis element.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeOrder:
    local: bool

    def key(self, exps):
        d = sum(exps)
        rev = tuple(-e for e in reversed(exps))
        return (-d if self.local else d, rev)

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


LOCAL = DegreeOrder(local=True)
GLOBAL = DegreeOrder(local=False)


def compare(order, a, b):
    """Three-way comparison of monomials: 1 if a > b, -1 if a < b, 0 if equal."""
    return order.compare(a, b)


@dataclass(frozen=True)
class ModuleOrder:
    """Order on terms (component, exponents) of a free module.

    Without tags: compare monomials by the base order, break ties by lower
    component first.  With Schreyer tags (one (component, exps) lead term per
    basis element of the source), compare the shifted images under a target
    module order first.
    """

    base: DegreeOrder
    schreyer_tags: tuple = None
    target: "ModuleOrder" = None

    def key(self, term):
        comp, exps = term
        if self.schreyer_tags is not None:
            tcomp, texps = self.schreyer_tags[comp]
            shifted = tuple(a + b for a, b in zip(exps, texps))
            return (self.target.key((tcomp, shifted)), -comp)
        return (self.base.key(exps), -comp)

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


def module_order(base, schreyer_tags=None, target=None):
    if schreyer_tags is not None and target is None:
        target = ModuleOrder(base)
    return ModuleOrder(base, tuple(schreyer_tags) if schreyer_tags else None, target)


# ---------------------------------------------------------------------------
# Parser.  Grammar:
#   expression := ['+'|'-'] term (('+'|'-') term)*
#   term       := coefficient? ('*'? factor)*
#   factor     := variable ('^' natural)? | '(' expression ')'
#   coefficient := integer | integer '/' integer
# ---------------------------------------------------------------------------


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected integer", start)
        return int(self.text[start:self.pos])

    def take_name(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if self.pos == start or self.text[start].isdigit():
            raise ParseError("expected variable name", start)
        return self.text[start:self.pos]


def parse_polynomial(text, ring):
    """Parse `text` into a polynomial of `ring`; raises ParseError."""
    toks = _Tokens(text)
    result = _parse_expression(toks, ring)
    toks.skip_ws()
    if toks.pos != len(text):
        raise ParseError(f"unexpected character {text[toks.pos]!r}", toks.pos)
    return result


def _parse_expression(toks, ring):
    sign = 1
    if toks.peek() and toks.peek() in "+-":
        if toks.peek() == "-":
            sign = -1
        toks.pos += 1
    result = _parse_term(toks, ring)
    if sign < 0:
        result = -result
    while toks.peek() and toks.peek() in "+-":
        op = toks.peek()
        toks.pos += 1
        term = _parse_term(toks, ring)
        result = result + term if op == "+" else result - term
    return result


def _parse_term(toks, ring):
    result = ring.one()
    saw_factor = False
    while True:
        ch = toks.peek()
        if ch.isdigit():
            pos = toks.pos
            num = toks.take_int()
            if toks.peek() == "/":
                toks.pos += 1
                den = toks.take_int()
                if den == 0 or (
                    ring.field.characteristic and den % ring.field.characteristic == 0
                ):
                    raise ParseError("division by zero in coefficient", pos)
                coeff = Fraction(num, den)
            else:
                coeff = Fraction(num)
            result = result * ring.constant(coeff)
        elif ch.isalpha() or ch == "_":
            pos = toks.pos
            name = toks.take_name()
            if name not in ring.variables:
                raise ParseError(f"unknown variable {name!r}", pos)
            exp = 1
            if toks.peek() == "^":
                toks.pos += 1
                exp = toks.take_int()
            result = result * ring.variable(name) ** exp
        elif ch == "(":
            toks.pos += 1
            inner = _parse_expression(toks, ring)
            if toks.peek() != ")":
                raise ParseError("expected ')'", toks.pos)
            toks.pos += 1
            result = result * inner
        elif ch == "*":
            toks.pos += 1
            continue
        else:
            if not saw_factor:
                raise ParseError("expected term", toks.pos)
            return result
        saw_factor = True
