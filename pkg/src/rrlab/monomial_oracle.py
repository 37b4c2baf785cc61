"""Staircase arithmetic for monomial ideals in two or three variables.

An independent, purely combinatorial engine: ideals are antichains of
exponent vectors and every operation is a finite set computation.  It is used
as a brute-force oracle against the Gröbner path.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import NoStabilization

INFINITE = math.inf


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens) -> tuple:
    gens = sorted(set(tuple(g) for g in gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return tuple(sorted(out))


@dataclass(frozen=True)
class Staircase:
    nvars: int
    gens: tuple

    def __post_init__(self):
        if self.nvars not in (2, 3):
            raise ValueError("staircases support 2 or 3 variables")
        if any(len(g) != self.nvars for g in self.gens):
            raise ValueError("exponent vector of the wrong length")
        object.__setattr__(self, "gens", minimalize(self.gens))

    @classmethod
    def from_ideal(cls, I) -> "Staircase":
        """Staircase of a monomial IdealHandle; anything else is refused."""
        if not I.is_monomial():
            raise ValueError("monomial oracle refuses non-monomial input")
        return cls(I.ctx.nvars, tuple(next(iter(g.terms)) for g in I.gens))

    def contains(self, e) -> bool:
        return any(_divides(g, e) for g in self.gens)

    def is_unit(self) -> bool:
        return (0,) * self.nvars in self.gens

    def __le__(self, other: "Staircase") -> bool:
        return all(other.contains(g) for g in self.gens)


def stair_length(S: Staircase):
    """Number of monomials outside S, or ``INFINITE``."""
    n = S.nvars
    bounds = []
    for i in range(n):
        pure = [g[i] for g in S.gens if all(g[j] == 0 for j in range(n) if j != i)]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    return sum(1 for e in itertools.product(*(range(b) for b in bounds)) if not S.contains(e))


def _sub(a, b):
    return tuple(max(x - y, 0) for x, y in zip(a, b))


def stair_op(A: Staircase, B: Staircase, op: str) -> Staircase:
    if A.nvars != B.nvars:
        raise ValueError("staircases over different variable counts")
    n = A.nvars
    if op == "sum":
        gens = A.gens + B.gens
    elif op == "product":
        gens = [tuple(x + y for x, y in zip(a, b)) for a in A.gens for b in B.gens]
    elif op == "intersect":
        gens = [tuple(max(x, y) for x, y in zip(a, b)) for a in A.gens for b in B.gens]
    elif op == "colon":
        if not B.gens:
            return Staircase(n, ((0,) * n,))
        # A : B is the intersection over b of A : b, and A : b = (a ⊖ b).
        result = None
        for b in B.gens:
            part = Staircase(n, tuple(_sub(a, b) for a in A.gens))
            result = part if result is None else stair_op(result, part, "intersect")
        return result
    else:
        raise ValueError(f"unknown staircase operation {op!r}")
    return Staircase(n, tuple(gens))


def stair_power(A: Staircase, k: int) -> Staircase:
    out = Staircase(A.nvars, ((0,) * A.nvars,))
    for _ in range(k):
        out = stair_op(out, A, "product")
    return out


def stair_rr(I: Staircase, cap: int = 4, hard_cap: int = 30) -> Staircase:
    """Union of the chain ``I^(n+1) : I^n`` once it repeats ``cap`` times in a row."""
    if stair_length(I) == INFINITE:
        raise ValueError("stair_rr needs a finite staircase")
    prev, run = None, 0
    pw = I
    for n in range(1, hard_cap + 1):
        nxt = stair_op(pw, I, "product")
        L = stair_op(nxt, pw, "colon")
        pw = nxt
        if prev is not None and L == prev:
            run += 1
        else:
            run = 0
        prev = L
        if run >= cap:
            return L
    raise NoStabilization(f"staircase colon chain still growing after {hard_cap} steps", cap=hard_cap)
