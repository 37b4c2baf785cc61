"""Buchberger's algorithm, normal forms and standard monomials.

The engine works on raw ``{exponent tuple: coefficient}`` dicts; the public
functions wrap results back into :class:`~rrlab.poly.Polynomial`.

Truncation
----------
``reduced_groebner(..., truncate=N)`` computes a basis of ``<gens> + M^N`` where
``M`` is generated by the variables selected by ``mask`` (all of them by
default).  The degree-``N`` monomials are never materialized during the
computation: every term of masked degree ``>= N`` is dropped on sight, and the
S-pairs of a basis element ``g`` against ``M^N`` are the products ``u * tail(g)``
with ``deg(u * LT(g)) == N``.  Pairs whose lcm already lies in ``M^N`` are
redundant.  The returned reduced basis lists the surviving degree-``N``
monomials explicitly.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import RingMismatch
from .poly import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    PolyRing,
    divides,
    mono_div,
    mono_lcm,
    mono_mul,
    monomials_of_degree,
)

INFINITE = math.inf


def _mask_bits(e) -> int:
    bits = 0
    for i, a in enumerate(e):
        if a:
            bits |= 1 << i
    return bits


class _Elem:
    __slots__ = ("lt", "tail", "bits", "sugar", "deg", "active", "idx")

    def __init__(self, lt, tail, sugar):
        self.lt = lt
        self.tail = tail  # list of (exponent, coeff), leading coefficient is 1
        self.bits = _mask_bits(lt)
        self.sugar = sugar
        self.deg = sum(lt)
        self.active = True
        self.idx = -1

    def as_dict(self):
        d = dict(self.tail)
        d[self.lt] = 1
        return d


class _Engine:
    """Mutable state of one Buchberger run."""

    def __init__(self, nvars, order: MonomialOrder, p: int, truncate=None):
        self.n = nvars
        self.order = order
        self.dkey = order.dkey
        self.p = p
        self.elems: list[_Elem] = []
        if truncate is None:
            self.N = None
            self.mask = None
        else:
            N, mask = truncate
            self.N = N
            self.mask = tuple(bool(m) for m in mask)

    # -- helpers -----------------------------------------------------------
    def wdeg(self, e):
        if self.mask is None:
            return sum(e)
        return sum(a for a, m in zip(e, self.mask) if m)

    def truncated(self, e) -> bool:
        return self.N is not None and self.wdeg(e) >= self.N

    def inv(self, c):
        if self.p:
            return pow(c, -1, self.p)
        return 1 / Fraction(c)

    def find_divisor(self, e, bits):
        for g in self.active:
            if g.bits & ~bits == 0 and g.deg <= sum(e) and divides(g.lt, e):
                return g
        return None

    # -- normal form -------------------------------------------------------
    def reduce(self, f: dict, full: bool = True) -> dict:
        """Normal form of ``f`` against the active elements.

        With ``full=False`` stops at the first irreducible term (top reduction)
        and returns the remainder of ``f`` untouched below it.
        """
        p = self.p
        dkey = self.dkey
        f = {e: c for e, c in f.items() if c and not self.truncated(e)}
        heap = [(dkey(e), e) for e in f]
        heapq.heapify(heap)
        out = {}
        while heap:
            _, e = heapq.heappop(heap)
            c = f.pop(e, None)
            if c is None:
                continue
            g = self.find_divisor(e, _mask_bits(e))
            if g is None:
                out[e] = c
                if not full:
                    out.update(f)
                    return out
                continue
            q = mono_div(e, g.lt)
            for te, tc in g.tail:
                t = mono_mul(q, te)
                if self.N is not None and self.wdeg(t) >= self.N:
                    continue
                old = f.get(t)
                if old is None:
                    v = -c * tc
                    if p:
                        v %= p
                    if v:
                        f[t] = v
                        heapq.heappush(heap, (dkey(t), t))
                else:
                    v = old - c * tc
                    if p:
                        v %= p
                    if v:
                        f[t] = v
                    else:
                        del f[t]
        return out

    def make_elem(self, f: dict, sugar) -> _Elem:
        lt = min(f, key=self.dkey)
        inv = self.inv(f[lt])
        p = self.p
        tail = []
        for e, c in f.items():
            if e != lt:
                v = c * inv
                if p:
                    v %= p
                tail.append((e, v))
        tail.sort(key=lambda t: self.dkey(t[0]))
        return _Elem(lt, tail, sugar)

    # -- Buchberger ---------------------------------------------------------
    def run(self, inputs: list):
        self.active: list[_Elem] = []
        self.queue = []
        self.live = {}  # id -> (i, j, lcm) for ordinary pairs
        self.counter = itertools.count()
        for f in inputs:
            f = {e: c for e, c in f.items() if c and not self.truncated(e)}
            if f:
                lt = min(f, key=self.dkey)
                s = max(sum(e) for e in f)
                heapq.heappush(self.queue, (s, self.dkey(lt), next(self.counter), "in", f, None))
        while self.queue:
            s, _, pid, kind, a, b = heapq.heappop(self.queue)
            if kind == "pair":
                if pid not in self.live:
                    continue
                del self.live[pid]
                f = self.spoly(self.elems[a], self.elems[b])
            elif kind == "trunc":
                g = self.elems[a]
                f = self.trunc_spoly(g, b)
            else:
                f = a
            h = self.reduce(f, full=False)
            if h:
                g = self.make_elem(h, s)
                if not any(g.lt):
                    self.elems = [_Elem(g.lt, [], 0)]
                    self.active = list(self.elems)
                    return
                self.add(g)
        self.interreduce()

    def spoly(self, gi: _Elem, gj: _Elem) -> dict:
        L = mono_lcm(gi.lt, gj.lt)
        qi = mono_div(L, gi.lt)
        qj = mono_div(L, gj.lt)
        p = self.p
        f = {}
        for e, c in gi.tail:
            t = mono_mul(qi, e)
            f[t] = c
        for e, c in gj.tail:
            t = mono_mul(qj, e)
            v = f.get(t, 0) - c
            if p:
                v %= p
            if v:
                f[t] = v
            else:
                f.pop(t, None)
        return f

    def trunc_spoly(self, g: _Elem, u) -> dict:
        return {mono_mul(u, e): c for e, c in g.tail}

    def pair_sugar(self, gi, gj, L):
        d = sum(L)
        return max(gi.sugar + d - gi.deg, gj.sugar + d - gj.deg)

    def add(self, h: _Elem):
        hi = len(self.elems)
        h.idx = hi
        self.elems.append(h)
        lth = h.lt
        # criterion B on existing pairs
        dead = []
        for pid, (i, j, L) in self.live.items():
            if divides(lth, L):
                if mono_lcm(self.elems[i].lt, lth) != L and mono_lcm(self.elems[j].lt, lth) != L:
                    dead.append(pid)
        for pid in dead:
            del self.live[pid]
        # candidate new pairs, sorted by lcm degree
        cands = []
        for g in self.active:
            idx = g.idx
            L = mono_lcm(g.lt, lth)
            if self.N is not None and self.wdeg(L) >= self.N:
                continue  # lcm in M^N: covered by the truncation pairs
            coprime = sum(L) == g.deg + h.deg
            cands.append((sum(L), L, idx, coprime))
        cands.sort(key=lambda t: t[0])
        minimal = []  # antichain of lcms kept so far
        kept = []
        seen = {}
        for dL, L, idx, coprime in cands:
            if L in seen:
                # criterion F: equal lcm; a coprime representative kills all
                if coprime:
                    seen[L] = True
                continue
            if any(divides(M, L) for M in minimal):
                continue  # criterion M (proper divisor, since L not seen)
            seen[L] = coprime
            minimal.append(L)
            kept.append((L, idx))
        for L, idx in kept:
            if seen[L]:
                continue  # product criterion
            g = self.elems[idx]
            pid = next(self.counter)
            self.live[pid] = (idx, hi, L)
            heapq.heappush(self.queue, (self.pair_sugar(g, h, L), self.dkey(L), pid, "pair", idx, hi))
        if self.N is not None:
            rem = self.N - self.wdeg(lth)
            if rem > 0:
                for u in monomials_of_degree(self.n, rem, self.mask):
                    m = mono_mul(u, lth)
                    if any(divides(M, m) for M in minimal):
                        continue
                    pid = next(self.counter)
                    heapq.heappush(self.queue, (h.sugar + sum(u), self.dkey(m), pid, "trunc", hi, u))
        # retire elements whose leading monomial is now reducible
        for g in self.active:
            if divides(lth, g.lt):
                g.active = False
        self.active = [g for g in self.active if g.active]
        self.active.append(h)

    def interreduce(self):
        final = []
        for g in self.active:
            others = [x for x in self.active if x is not g]
            saved = self.active
            self.active = others
            tail = self.reduce(dict(g.tail), full=True)
            self.active = saved
            f = dict(tail)
            f[g.lt] = 1
            final.append(self.make_elem(f, g.sugar))
        self.active = final
        self.elems = final


@dataclass
class GroebnerBasis:
    """A reduced Gröbner basis: monic, auto-reduced, sorted by leading monomial.

    ``truncate`` records ``(N, mask)`` when the basis is that of
    ``<gens> + M^N``.
    """

    ring: PolyRing
    order: MonomialOrder
    gens: list
    truncate: Optional[tuple] = None
    _lts: list = field(default=None, repr=False)

    def __post_init__(self):
        self._lts = [g.leading_term(self.order)[0] for g in self.gens]

    @property
    def leading_monomials(self):
        return list(self._lts)

    def is_unit(self) -> bool:
        return any(not any(e) for e in self._lts)

    def is_zero(self) -> bool:
        return not self.gens

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero()

    def k_dimension(self):
        return k_dimension(self)

    def standard_monomials(self, degree_cap: int):
        return standard_monomials(self, degree_cap)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (self.ring == other.ring and self.order == other.order
                and [g.terms for g in self.gens] == [g.terms for g in other.gens])

    def __str__(self):
        return "[" + ", ".join(str(g) for g in self.gens) + "]"


def _engine_for(G: GroebnerBasis) -> _Engine:
    eng = _Engine(G.ring.nvars, G.order, G.ring.characteristic)
    eng.active = []
    for g in G.gens:
        d = g.terms
        lt = min(d, key=G.order.dkey)
        eng.active.append(_Elem(lt, [(e, c) for e, c in d.items() if e != lt], 0))
    return eng


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of ``p`` under multivariate division by ``G``."""
    if p.ring != G.ring:
        raise RingMismatch(f"{p.ring.var_names} vs {G.ring.var_names}")
    eng = _engine_for(G)
    out = eng.reduce(p.terms, full=True)
    return Polynomial(G.ring, out, normalized=True)


def _normalize_truncate(truncate, nvars):
    if truncate is None:
        return None
    if isinstance(truncate, int):
        return (truncate, (True,) * nvars)
    N, mask = truncate
    return (int(N), tuple(bool(m) for m in mask))


def reduced_groebner(gens, order: MonomialOrder = GREVLEX, truncate=None, ring: PolyRing = None) -> GroebnerBasis:
    """Reduced Gröbner basis of ``<gens>`` (plus ``M^N`` when ``truncate`` is set)."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch(f"{g.ring.var_names} vs {ring.var_names}")
    n = ring.nvars
    tr = _normalize_truncate(truncate, n)
    eng = _Engine(n, order, ring.characteristic, tr)
    if tr is not None and tr[0] <= 0:
        return GroebnerBasis(ring, order, [ring.one()], tr)
    eng.run([g.terms for g in gens if g.terms])
    polys = [Polynomial(ring, e.as_dict(), normalized=True) for e in eng.active]
    if tr is not None and not any(not any(e.lt) for e in eng.active):
        N, mask = tr
        lts = [e.lt for e in eng.active]
        for m in monomials_of_degree(n, N, mask):
            if not any(divides(l, m) for l in lts):
                polys.append(Polynomial(ring, {m: 1}, normalized=True))
    polys.sort(key=lambda g: order.dkey(g.leading_term(order)[0]), reverse=True)
    return GroebnerBasis(ring, order, polys, tr)


# --------------------------------------------------------------------------
# standard monomials
# --------------------------------------------------------------------------

def _divisible(e, lts) -> bool:
    for l in lts:
        if divides(l, e):
            return True
    return False


def _is_finite(lts, n) -> bool:
    if any(not any(l) for l in lts):
        return True
    for i in range(n):
        if not any(l[i] > 0 and sum(l) == l[i] for l in lts):
            return False
    return True


def iter_standard_monomials(lts, n, degree_cap=None):
    """Depth-first walk of the order ideal of monomials outside ``<lts>``."""
    if _divisible((0,) * n, lts):
        return
    stack = [((0,) * n, 0)]
    while stack:
        e, start = stack.pop()
        yield e
        if degree_cap is not None and sum(e) >= degree_cap:
            continue
        for i in range(start, n):
            t = e[:i] + (e[i] + 1,) + e[i + 1:]
            if not _divisible(t, lts):
                stack.append((t, i))


def k_dimension(G: GroebnerBasis):
    """Number of standard monomials, or ``INFINITE``."""
    lts = G.leading_monomials
    n = G.ring.nvars
    if not _is_finite(lts, n):
        return INFINITE
    return sum(1 for _ in iter_standard_monomials(lts, n))


def standard_monomials(G: GroebnerBasis, degree_cap: int) -> list:
    n = G.ring.nvars
    mons = list(iter_standard_monomials(G.leading_monomials, n, degree_cap))
    mons.sort(key=GREVLEX.dkey, reverse=True)
    return [Polynomial(G.ring, {e: 1}, normalized=True) for e in mons]


def spair_residues(G: GroebnerBasis) -> list:
    """Normal forms of all S-polynomials of basis pairs (all zero for a GB)."""
    eng = _engine_for(G)
    out = []
    for a, b in itertools.combinations(eng.active, 2):
        r = eng.reduce(eng.spoly(a, b), full=True)
        if r:
            out.append(Polynomial(G.ring, r, normalized=True))
    return out


def is_reduced_basis(G: GroebnerBasis) -> bool:
    """Check the defining properties of a reduced Gröbner basis."""
    eng = _engine_for(G)
    lts = [g.lt for g in eng.active]
    for i, g in enumerate(eng.active):
        for j, l in enumerate(lts):
            if i != j and divides(l, g.lt):
                return False
            if any(divides(l, e) for e, _ in g.tail):
                return False
    if any(g.leading_term(G.order)[1] != 1 for g in G.gens):
        return False
    return not spair_residues(G)
