"""Ideals of S and of quotient contexts R = S/I_R.

An :class:`IdealHandle` in a context with ambient ideal ``I_R`` stands for the
ideal ``<gens> + I_R`` of S, i.e. the full preimage of an ideal of R.  All
comparisons are semantic (reduced Gröbner bases), never generator lists.
"""

from __future__ import annotations

import threading
from typing import Iterable, Optional

from .errors import RingMismatch
from .groebner import GroebnerBasis, normal_form, reduced_groebner
from .poly import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    PolyRing,
    RingCtx,
    block_order,
    divides,
    leading_term,
    monomials_of_degree,
    parse_poly,
)


def _clean_gens(gens, ctx: RingCtx, amb_gb: Optional[GroebnerBasis]):
    out = []
    seen = set()
    for g in gens:
        if isinstance(g, str):
            g = parse_poly(g, ctx.ring)
        if g.ring != ctx.ring:
            raise RingMismatch(f"{g.ring.var_names} vs {ctx.var_names}")
        if amb_gb is not None:
            g = normal_form(g, amb_gb)
        if g.is_zero():
            continue
        g = g.monic(ctx.order)
        key = frozenset(g.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(g)
    # monomial generators divisible by another monomial generator are redundant
    monos = [next(iter(g.terms)) for g in out if g.is_monomial()]
    if len(monos) > 1:
        keep = []
        for g in out:
            if g.is_monomial():
                e = next(iter(g.terms))
                if any(m != e and divides(m, e) for m in monos):
                    continue
            keep.append(g)
        out = keep
    return tuple(out)


class IdealHandle:
    """Ideal ``<gens> + ambient`` of the context's polynomial ring.

    Gröbner bases (per order and truncation) and powers are cached; each
    cache slot is written at most once.
    """

    def __init__(self, ctx: RingCtx, gens: Iterable = (), *, raw: bool = False):
        self.ctx = ctx
        amb = ambient_basis(ctx) if ctx.ambient else None
        self.gens = tuple(gens) if raw else _clean_gens(gens, ctx, amb)
        self._gb = {}
        self._powers = {1: self}
        self._lock = threading.Lock()
        self.local_cache = {}  # used by rrlab.local

    # -- construction ------------------------------------------------------
    @classmethod
    def unit(cls, ctx: RingCtx) -> "IdealHandle":
        return cls(ctx, [ctx.ring.one()], raw=True)

    @classmethod
    def maximal(cls, ctx: RingCtx) -> "IdealHandle":
        return cls(ctx, ctx.gens())

    @classmethod
    def parse(cls, ctx: RingCtx, srcs: Iterable[str]) -> "IdealHandle":
        return cls(ctx, [parse_poly(s, ctx.ring) for s in srcs])

    def in_ctx(self, ctx: RingCtx) -> "IdealHandle":
        """Reinterpret the same generators in another context over the same ring."""
        if ctx.ring != self.ctx.ring:
            raise RingMismatch("contexts over different polynomial rings")
        return IdealHandle(ctx, self.gens)

    # -- views -------------------------------------------------------------
    @property
    def ring(self):
        return self.ctx.ring

    @property
    def full_gens(self) -> tuple:
        return self.gens + self.ctx.ambient

    def groebner(self, order: MonomialOrder = None, truncate=None) -> GroebnerBasis:
        order = order or self.ctx.order
        key = (order, truncate if not isinstance(truncate, int) else (truncate, None))
        gb = self._gb.get(key)
        if gb is None:
            gb = reduced_groebner(self.full_gens, order, truncate=truncate, ring=self.ring)
            with self._lock:
                gb = self._gb.setdefault(key, gb)
        return gb

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        """True when the ideal of R is zero (gens all lie in the ambient ideal)."""
        return not self.gens

    def is_monomial(self) -> bool:
        return not self.ctx.ambient and all(g.is_monomial() for g in self.gens)

    def __contains__(self, f: Polynomial) -> bool:
        return member(f, self)

    def __add__(self, other):
        return compose(self, other, "sum")

    def __mul__(self, other):
        return compose(self, other, "product")

    def __pow__(self, n: int):
        return power(self, n)

    def __eq__(self, other):
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return equal(self, other)

    __hash__ = object.__hash__

    def gen_strings(self) -> list:
        return sorted(str(g) for g in self.gens)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"IdealHandle{self}"


# --------------------------------------------------------------------------
# ambient helpers
# --------------------------------------------------------------------------

_AMB_CACHE = {}
_AMB_LOCK = threading.Lock()


def ambient_basis(ctx: RingCtx) -> GroebnerBasis:
    key = (ctx.ring, ctx.order, ctx.ambient)
    gb = _AMB_CACHE.get(key)
    if gb is None:
        gb = reduced_groebner(ctx.ambient, ctx.order, ring=ctx.ring)
        with _AMB_LOCK:
            gb = _AMB_CACHE.setdefault(key, gb)
    return gb


def _same_ctx(A: IdealHandle, B: IdealHandle):
    if A.ctx.ring != B.ctx.ring or A.ctx.ambient != B.ctx.ambient:
        raise RingMismatch("ideals live in different contexts")


def quotient_ctx(ctx: RingCtx, extra) -> RingCtx:
    """Context ``R / (extra)``; every element of ``extra`` must vanish at the origin."""
    polys = []
    for f in extra:
        if isinstance(f, str):
            f = parse_poly(f, ctx.ring)
        if f.constant_term():
            raise ValueError(f"{f} has a nonzero constant term; the origin would leave the variety")
        if f and f not in ctx.ambient and f not in polys:
            polys.append(f)
    return RingCtx(ctx.ring, ctx.order, ctx.ambient + tuple(polys))


# --------------------------------------------------------------------------
# ideal algebra
# --------------------------------------------------------------------------

def compose(A: IdealHandle, B: IdealHandle, op: str) -> IdealHandle:
    _same_ctx(A, B)
    if op == "sum":
        return IdealHandle(A.ctx, A.gens + B.gens)
    if op == "product":
        return IdealHandle(A.ctx, [a * b for a in A.gens for b in B.gens])
    raise ValueError(f"unknown op {op!r}")


def power(A: IdealHandle, n: int) -> IdealHandle:
    if n < 0:
        raise ValueError("negative power")
    if n == 0:
        return IdealHandle.unit(A.ctx)
    cache = A._powers
    if n in cache:
        return cache[n]
    k = max(k for k in cache if k < n)
    P = cache[k]
    for j in range(k + 1, n + 1):
        P = compose(P, A, "product")
        with A._lock:
            P = cache.setdefault(j, P)
    return P


def member(f: Polynomial, A: IdealHandle) -> bool:
    if isinstance(f, str):
        f = parse_poly(f, A.ring)
    return normal_form(f, A.groebner()).is_zero()


def equal(A: IdealHandle, B: IdealHandle) -> bool:
    _same_ctx(A, B)
    return A.groebner() == B.groebner()


def contains(A: IdealHandle, B: IdealHandle) -> bool:
    """``B ⊆ A`` as ideals of the context."""
    _same_ctx(A, B)
    G = A.groebner()
    return all(normal_form(g, G).is_zero() for g in B.gens)


def eliminate(A: IdealHandle, drop, truncate=None) -> IdealHandle:
    """``A ∩ K[remaining variables]`` via a block order with ``drop`` first.

    The result is returned in A's ring (it simply involves none of the dropped
    variables) and in a context without ambient ideal, since the ambient
    generators generally do not survive elimination.
    """
    ring = A.ring
    drop_idx = [ring.index(v) if isinstance(v, str) else v for v in drop]
    keep_idx = [i for i in range(ring.nvars) if i not in drop_idx]
    perm = drop_idx + keep_idx
    pring = PolyRing(tuple(ring.var_names[i] for i in perm), ring.characteristic)
    to_p = [perm.index(i) for i in range(ring.nvars)]
    gens = [g.change_ring(pring, to_p) for g in A.full_gens]
    tr = None
    if truncate is not None:
        N, mask = truncate if not isinstance(truncate, int) else (truncate, (True,) * ring.nvars)
        tr = (N, tuple(mask[i] for i in perm))
    G = reduced_groebner(gens, block_order(len(drop_idx)), truncate=tr, ring=pring)
    k = len(drop_idx)
    back = [perm[j] for j in range(pring.nvars)]
    out = [g.change_ring(ring, back) for g in G.gens if all(not any(e[:k]) for e in g.terms)]
    return IdealHandle(RingCtx(ring, A.ctx.order), out)


def intersect(A: IdealHandle, B: IdealHandle, truncate=None) -> IdealHandle:
    """``A ∩ B`` by eliminating ``t`` from ``t*A + (1-t)*B``.

    With ``truncate=N`` both ideals are taken modulo ``M^N`` first, giving
    ``(A + M^N) ∩ (B + M^N)``; the caller must know that is what it wants.
    """
    _same_ctx(A, B)
    ring = A.ring
    t = "_t"
    while t in ring.var_names:
        t += "_"
    ext = ring.extend(t)
    shift = list(range(1, ring.nvars + 1))
    tv = ext.var(t)
    one = ext.one()
    gens = [tv * a.change_ring(ext, shift) for a in A.full_gens]
    gens += [(one - tv) * b.change_ring(ext, shift) for b in B.full_gens]
    tr = None
    if truncate is not None:
        tr = (truncate, (False,) + (True,) * ring.nvars)
    G = reduced_groebner(gens, block_order(1), truncate=tr, ring=ext)
    out = []
    for g in G.gens:
        if all(e[0] == 0 for e in g.terms):
            out.append(Polynomial(ring, {e[1:]: c for e, c in g.terms.items()}, normalized=True))
    return IdealHandle(A.ctx, out)


def exact_divide(f: Polynomial, b: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Quotient ``f / b``; raises ``ValueError`` if ``b`` does not divide ``f``."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    fld = f.ring.field
    lb, cb = leading_term(b, order)
    inv = fld.inv(cb)
    q = {}
    r = f
    while r:
        lr, cr = leading_term(r, order)
        if not divides(lb, lr):
            raise ValueError(f"{b} does not divide {f}")
        e = tuple(x - y for x, y in zip(lr, lb))
        c = fld(cr * inv)
        q[e] = c
        r = r - b.mul_monomial(e, c)
    return Polynomial(f.ring, q)


def colon_element(A: IdealHandle, b: Polynomial, truncate=None) -> IdealHandle:
    """``A : b`` as ``(A ∩ (b)) / b``."""
    if A.ctx.ambient:
        bb = normal_form(b, ambient_basis(A.ctx))
    else:
        bb = b
    if bb.is_zero():
        return IdealHandle.unit(A.ctx)
    plain = RingCtx(A.ring, A.ctx.order)
    Ap = IdealHandle(plain, A.full_gens, raw=True)
    if truncate is not None:
        Ap = IdealHandle(plain, A.full_gens + tuple(
            A.ring.monomial(e) for e in monomials_of_degree(A.ring.nvars, truncate)), raw=True)
    Bp = IdealHandle(plain, (b,), raw=True)
    inter = intersect(Ap, Bp)
    quo = [exact_divide(g, b, A.ctx.order) for g in inter.gens]
    return IdealHandle(A.ctx, quo)


def colon(A: IdealHandle, B: IdealHandle, truncate=None) -> IdealHandle:
    """``A : B`` as the intersection of the single-generator colons.

    Colon by the zero ideal is the unit ideal.  ``truncate=N`` computes
    ``(A + M^N) : B``.
    """
    _same_ctx(A, B)
    result = None
    for b in B.gens:
        Q = colon_element(A, b, truncate)
        if Q.is_unit():
            continue
        result = Q if result is None else intersect(result, Q, truncate=truncate)
    if result is None:
        return IdealHandle.unit(A.ctx)
    return result
