"""Exact coefficients, monomial orders and sparse multivariate polynomials.

Monomials are plain exponent tuples.  A polynomial is an immutable map from
exponent tuples to nonzero coefficients; coefficients are Python ints reduced
into ``[0, p)`` over a prime field, or :class:`fractions.Fraction` in
characteristic zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ParseError, RingMismatch

Coefficient = Union[int, Fraction]
Monomial = tuple

DEFAULT_PRIME = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --------------------------------------------------------------------------
# coefficient fields
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Field:
    """Prime field F_p (``p > 0``) or the rationals (``p == 0``)."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"characteristic must be 0 or a prime, got {self.p}")

    def __call__(self, c) -> Coefficient:
        if self.p:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, self.p) % self.p
            return int(c) % self.p
        return Fraction(c)

    def inv(self, c: Coefficient) -> Coefficient:
        if not c:
            raise ZeroDivisionError("inverse of zero coefficient")
        if self.p:
            return pow(c, -1, self.p)
        return 1 / Fraction(c)

    def symmetric(self, c: Coefficient) -> Coefficient:
        """Representative used for printing: ``(-p/2, p/2]`` over F_p."""
        if self.p and c > self.p // 2:
            return c - self.p
        return c


def coeff_inv(c: Coefficient, fld: Field) -> Coefficient:
    return fld.inv(c)


# --------------------------------------------------------------------------
# monomial orders
# --------------------------------------------------------------------------

def _grevlex_dkey(e):
    return (-sum(e),) + e[::-1]


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative monomial order.

    ``dkey(e)`` maps an exponent tuple to a tuple whose *ascending* sort is the
    *descending* monomial order, so ``min(..., key=dkey)`` is the leading
    monomial and ``heapq`` pops the largest monomial first.

    kinds: ``grevlex``, ``lex``, ``block`` (first ``k`` variables grevlex,
    then the rest grevlex; every monomial involving the first block beats
    every monomial free of it).
    """

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def dkey(self, e):
        if self.kind == "grevlex":
            return (-sum(e),) + e[::-1]
        if self.kind == "lex":
            return tuple(-a for a in e)
        k = self.k
        return _grevlex_dkey(e[:k]) + _grevlex_dkey(e[k:])

    def greater(self, a, b) -> bool:
        return self.dkey(a) < self.dkey(b)

    @property
    def degree_compatible(self) -> bool:
        return self.kind == "grevlex"

    def __str__(self):
        return f"block({self.k})" if self.kind == "block" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(k: int) -> MonomialOrder:
    return MonomialOrder("block", k)


# --------------------------------------------------------------------------
# rings
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyRing:
    """Variables and coefficient field of an ambient polynomial ring S."""

    var_names: tuple
    characteristic: int = DEFAULT_PRIME

    def __post_init__(self):
        names = tuple(self.var_names)
        object.__setattr__(self, "var_names", names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for v in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"bad variable name {v!r}")
        Field(self.characteristic)  # validates

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    @property
    def field(self) -> Field:
        return Field(self.characteristic)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(v) for v in self.var_names]

    def index(self, name: str) -> int:
        try:
            return self.var_names.index(name)
        except ValueError:
            raise ParseError(f"unknown variable {name!r}") from None

    def monomial(self, e, c=1) -> "Polynomial":
        return Polynomial(self, {tuple(e): c})

    def extend(self, *names: str) -> "PolyRing":
        """Ring with ``names`` prepended (used for elimination variables)."""
        return PolyRing(tuple(names) + self.var_names, self.characteristic)

    def parse(self, src: str) -> "Polynomial":
        return parse_poly(src, self)


@dataclass(frozen=True)
class RingCtx:
    """Ambient ring S with an optional defining ideal: the context R = S/I_R.

    ``ambient`` holds generators of I_R; each must vanish at the origin so
    that the localization at the origin is a nonzero local ring.
    """

    ring: PolyRing
    order: MonomialOrder = GREVLEX
    ambient: tuple = field(default=())

    def __post_init__(self):
        amb = tuple(self.ambient)
        object.__setattr__(self, "ambient", amb)
        for g in amb:
            if g.ring != self.ring:
                raise RingMismatch("ambient generator from another ring")
            if g.constant_term():
                raise ValueError(f"ambient generator {g} does not vanish at the origin")

    @classmethod
    def make(cls, var_names, characteristic=DEFAULT_PRIME, ambient=(), order=GREVLEX):
        ring = PolyRing(tuple(var_names), characteristic)
        amb = tuple(parse_poly(a, ring) if isinstance(a, str) else a for a in ambient)
        return cls(ring, order, amb)

    @property
    def var_names(self):
        return self.ring.var_names

    @property
    def characteristic(self):
        return self.ring.characteristic

    @property
    def nvars(self):
        return self.ring.nvars

    def parse(self, src: str) -> "Polynomial":
        return parse_poly(src, self.ring)

    def var(self, name):
        return self.ring.var(name)

    def gens(self):
        return self.ring.gens()


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

class Polynomial:
    """Sparse polynomial; immutable after construction."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping, *, normalized: bool = False):
        self.ring = ring
        if normalized:
            self.terms = dict(terms)
        else:
            fld = ring.field
            n = ring.nvars
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} has wrong length for {n} variables")
                c = fld(c)
                if c:
                    clean[e] = c
            self.terms = clean
        self._hash = None

    # -- basic queries -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> Coefficient:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def order(self) -> int:
        """Lowest total degree of a term (the m-adic order); -1 for zero."""
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def leading_term(self, order: MonomialOrder = GREVLEX):
        return leading_term(self, order)

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.dkey(t[0]))

    # -- arithmetic --------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial(self.ring, {(0,) * self.ring.nvars: other})
        elif other.ring != self.ring:
            raise RingMismatch(f"{self.ring.var_names} vs {other.ring.var_names}")
        return other

    def __add__(self, other):
        return poly_combine(self, self._check(other), "add")

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.characteristic
        if p:
            return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()}, normalized=True)
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, normalized=True)

    def __sub__(self, other):
        return poly_combine(self, -self._check(other), "add")

    def __rsub__(self, other):
        return poly_combine(-self, self._check(other), "add")

    def __mul__(self, other):
        return poly_combine(self, self._check(other), "mul")

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        fld = self.ring.field
        c = fld(c)
        if not c:
            return self.ring.zero()
        if fld.p:
            p = fld.p
            return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()}, normalized=True)
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()}, normalized=True)

    def mul_monomial(self, u, c=1) -> "Polynomial":
        fld = self.ring.field
        c = fld(c)
        out = {}
        for e, v in self.terms.items():
            out[tuple(a + b for a, b in zip(e, u))] = fld(v * c)
        return Polynomial(self.ring, out, normalized=True)

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        _, lc = leading_term(self, order)
        return self.scale(self.ring.field.inv(lc))

    def change_ring(self, ring: PolyRing, index_map=None) -> "Polynomial":
        """Embed into ``ring``; ``index_map[i]`` is the target slot of variable i."""
        if index_map is None:
            index_map = [ring.index(v) for v in self.ring.var_names]
        n = ring.nvars
        out = {}
        for e, c in self.terms.items():
            t = [0] * n
            for i, a in enumerate(e):
                if a:
                    t[index_map[i]] = a
            out[tuple(t)] = c
        return Polynomial(ring, out)

    # -- comparison / printing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial(self.ring, {(0,) * self.ring.nvars: other})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def poly_combine(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring.var_names} vs {b.ring.var_names}")
    p = a.ring.characteristic
    if op == "add":
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(a.ring, out, normalized=True)
    if op == "mul":
        out = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial(a.ring, out, normalized=True)
    raise ValueError(f"unknown op {op!r}")


def leading_term(p: Polynomial, order: MonomialOrder = GREVLEX):
    if not p.terms:
        raise ValueError("leading term of the zero polynomial")
    e = min(p.terms, key=order.dkey)
    return e, p.terms[e]


# --------------------------------------------------------------------------
# monomial helpers
# --------------------------------------------------------------------------

def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomials_of_degree(nvars: int, d: int, mask=None):
    """All exponent tuples of total degree ``d`` supported on ``mask``."""
    slots = [i for i in range(nvars) if mask is None or mask[i]]
    out = []

    def rec(pos, left, cur):
        if pos == len(slots) - 1:
            cur[slots[pos]] = left
            out.append(tuple(cur))
            cur[slots[pos]] = 0
            return
        for a in range(left, -1, -1):
            cur[slots[pos]] = a
            rec(pos + 1, left - a, cur)
        cur[slots[pos]] = 0

    if not slots:
        return [(0,) * nvars] if d == 0 else []
    rec(0, d, [0] * nvars)
    return out


# --------------------------------------------------------------------------
# parsing and printing
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()/]))")


def _tokenize(src: str):
    pos = 0
    out = []
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos:].strip()[:1]!r} at column {pos + 1}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, src, ring):
        self.toks = _tokenize(src)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        if not self.toks:
            raise ParseError("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind == "op" and val == "/":
                # only rational literals such as 3/2 are accepted
                self.take()
                kind, val = self.take()
                if kind != "num" or val == 0:
                    raise ParseError("division is only allowed by a nonzero integer literal")
                if self.ring.characteristic and val % self.ring.characteristic == 0:
                    raise ParseError(f"division by {val} in characteristic {self.ring.characteristic}")
                acc = acc.scale(Fraction(1, val))
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                acc = acc * self.factor()  # juxtaposition, e.g. 3x or x y
            else:
                return acc

    def factor(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"malformed exponent {val!r}")
            base = base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "name":
            return self.ring.var(val)
        if kind == "op" and val == "(":
            p = self.expr()
            k2, v2 = self.take()
            if v2 != ")":
                raise ParseError("unbalanced parenthesis")
            return p
        if kind is None:
            raise ParseError("unexpected end of input")
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(src: str, ring) -> Polynomial:
    if isinstance(ring, RingCtx):
        ring = ring.ring
    return _Parser(src, ring).parse()


def format_monomial(e, names) -> str:
    parts = []
    for a, v in zip(e, names):
        if a == 1:
            parts.append(v)
        elif a > 1:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_poly(p: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    if not p.terms:
        return "0"
    fld = p.ring.field
    names = p.ring.var_names
    out = []
    for e, c in p.sorted_terms(order):
        c = fld.symmetric(c)
        neg = c < 0
        c = -c if neg else c
        mono = format_monomial(e, names)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        if out:
            out.append(("-" if neg else "+") + body)
        else:
            out.append(("-" if neg else "") + body)
    return "".join(out)


def polys_from_strings(srcs: Iterable[str], ring) -> list:
    return [parse_poly(s, ring) for s in srcs]
