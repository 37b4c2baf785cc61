"""Ratliff–Rush closures, reductions, superficial elements and Valabrega–Valla tables.

Every "for all n" statement is checked over a finite window and reported as
window-certified; nothing here proves a statement for all n.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from ..errors import (
    MethodDisagreement,
    NoStabilization,
    NotAReduction,
    NotContained,
    NotMPrimary,
    SearchFailed,
    SuperficialSearchFailed,
)
from ..ideals import IdealHandle, power, quotient_ctx
from ..local import (
    is_regular_local,
    local_colon,
    local_contains,
    local_equal,
    local_intersect,
    local_length,
    truncation_exponent,
)
from ..poly import Polynomial
from .rng import MCG64

log = logging.getLogger(__name__)

DEFAULT_REDUCTION_CAP = 12
DEFAULT_ATTEMPTS = 20
SUPERFICIAL_SLACK = 3


def default_dimension(I: IdealHandle) -> int:
    """Dimension guess ``#vars - #ambient generators`` (exact for complete intersections)."""
    return I.ctx.nvars - len(I.ctx.ambient)


# --------------------------------------------------------------------------
# reductions
# --------------------------------------------------------------------------

@dataclass
class ReductionCert:
    J: IdealHandle
    I: IdealHandle
    r: int
    checks: list  # (n, I^(n+1) == J I^n locally) for n = 0..r

    def to_dict(self):
        return {
            "J": self.J.gen_strings(),
            "r": self.r,
            "checks": [{"n": n, "equal": ok} for n, ok in self.checks],
        }


def reduction_number(J: IdealHandle, I: IdealHandle, cap: int = DEFAULT_REDUCTION_CAP) -> ReductionCert:
    """Least ``r <= cap`` with ``I^(r+1) = J I^r`` locally."""
    if not local_contains(I, J):
        raise NotContained(f"{J} is not contained in {I} locally")
    try:
        truncation_exponent(J)
    except NotMPrimary:
        # a reduction shares the radical of I
        raise NotAReduction(f"{J} is not m-primary, so it is not a reduction of {I}", cap=cap) from None
    checks = []
    for n in range(cap + 1):
        ok = local_equal(power(I, n + 1), J * power(I, n))
        checks.append((n, ok))
        if ok:
            return ReductionCert(J, I, n, checks)
    raise NotAReduction(f"{J} is not a reduction of {I} with reduction number <= {cap}", cap=cap)


def random_combination(I: IdealHandle, rng: MCG64) -> Polynomial:
    p = I.ctx.characteristic
    out = I.ring.zero()
    for g in I.gens:
        out = out + g.scale(rng.coefficient(p))
    return out


def _try_reduction(I, xs, cap):
    J = IdealHandle(I.ctx, xs)
    if len(J.gens) < len(xs):
        return None
    try:
        return reduction_number(J, I, cap)
    except (NotAReduction, NotMPrimary):
        return None


def find_minimal_reduction(I: IdealHandle, d: int, seed: int = 0, cap: int = DEFAULT_REDUCTION_CAP,
                           attempts: int = DEFAULT_ATTEMPTS):
    """``d`` random combinations of the generators of I that form a reduction."""
    rng = MCG64(seed)
    for attempt in range(attempts):
        xs = [random_combination(I, rng) for _ in range(d)]
        cert = _try_reduction(I, xs, cap)
        if cert is not None:
            log.debug("reduction found on attempt %d: %s", attempt, cert.J)
            return cert.J, cert
    if d > 1:
        rng = MCG64(seed + 1)
        xs = [random_combination(I, rng) for _ in range(d - 1)]
        if _try_reduction(I, xs, cap) is not None:
            raise SearchFailed(f"dimension {d} rejected: {d - 1} elements already generate a reduction")
    raise SearchFailed(f"no {d}-generated reduction found in {attempts} attempts (seed {seed})")


def _reduction_estimate(I: IdealHandle, d: Optional[int], seed: int) -> int:
    d = d if d is not None else default_dimension(I)
    key = ("r_estimate", d, seed)
    if key not in I.local_cache:
        I.local_cache[key] = find_minimal_reduction(I, d, seed)[1].r
    return I.local_cache[key]


# --------------------------------------------------------------------------
# superficial elements
# --------------------------------------------------------------------------

def superficial_check(x: Polynomial, I: IdealHandle, window: int = 3, n0: Optional[int] = None,
                      d: Optional[int] = None, seed: int = 0, slack: int = SUPERFICIAL_SLACK) -> bool:
    """Window certificate that ``x`` is a superficial nonzerodivisor for I.

    Looks for ``window + 1`` consecutive n with ``I^(n+1) : x = I^n`` locally,
    starting no later than ``n0 + slack``.  ``n0`` defaults to the reduction
    number of a random minimal reduction.  The run may start after ``n0``
    because ``I^(n+1) : x`` is the Ratliff–Rush closure of ``I^n`` for a
    superficial x, and that can exceed ``I^n`` at ``n = r``.
    """
    if not local_contains(I, IdealHandle(I.ctx, [x])):
        return False
    if not is_regular_local(x, I.ctx):
        return False
    if n0 is None:
        n0 = _reduction_estimate(I, d, seed)
    run = 0
    for n in range(n0, n0 + slack + window + 1):
        if local_equal(local_colon(power(I, n + 1), x), power(I, n)):
            run += 1
            if run > window:
                return True
        elif n >= n0 + slack:
            return False
        else:
            run = 0
    return False


def find_superficial_element(I: IdealHandle, window: int = 3, d: Optional[int] = None, seed: int = 0,
                             attempts: int = DEFAULT_ATTEMPTS) -> Polynomial:
    n0 = _reduction_estimate(I, d, seed)
    rng = MCG64(seed ^ 0x5EED)
    for _ in range(attempts):
        x = random_combination(I, rng)
        if x and superficial_check(x, I, window, n0=n0):
            return x
    raise SuperficialSearchFailed(f"no superficial element of {I} found in {attempts} attempts")


def tame_superficial_sequence(I: IdealHandle, d: int, seed: int = 0, window: int = 3,
                              cap: int = DEFAULT_REDUCTION_CAP, attempts: int = DEFAULT_ATTEMPTS) -> list:
    """``d`` elements, each superficial for I itself and for I modulo the earlier ones."""
    rng = MCG64(seed)
    for _ in range(attempts):
        xs = [random_combination(I, rng) for _ in range(d)]
        cert = _try_reduction(I, xs, cap)
        if cert is None:
            continue
        if not all(superficial_check(x, I, window, n0=cert.r) for x in xs):
            continue
        if _is_superficial_sequence(I, xs, window, cap):
            return xs
    raise SearchFailed(f"no tame superficial sequence of length {d} found in {attempts} attempts")


def _is_superficial_sequence(I, xs, window, cap) -> bool:
    for i in range(1, len(xs)):
        ctx_i = quotient_ctx(I.ctx, xs[:i])
        Ii = I.in_ctx(ctx_i)
        cert = _try_reduction(Ii, xs[i:], cap)
        if cert is None:
            return False
        if not superficial_check(xs[i], Ii, window, n0=cert.r):
            return False
    return True


# --------------------------------------------------------------------------
# Ratliff–Rush
# --------------------------------------------------------------------------

def _stable_chain(make, window: int, cap: int, start: int = 1, monotone=True):
    """Iterate ``make(n)`` until ``window`` consecutive local equalities.

    Returns ``(limit, steps, colengths)``.
    """
    prev = None
    run = 0
    lengths = []
    for n in range(start, start + cap):
        L = make(n)
        lengths.append(local_length(L))
        if prev is not None:
            if monotone and not local_contains(L, prev):
                raise AssertionError(f"colon chain is not ascending at step {n}")
            run = run + 1 if local_equal(L, prev) else 0
        prev = L
        if run >= window:
            return prev, n, lengths
    raise NoStabilization(f"colon chain still growing after {cap} steps", cap=cap)


def rr_closure_of_power(I: IdealHandle, n: int, x: Polynomial, window: int = 2, cap: int = 10) -> IdealHandle:
    """Ratliff–Rush closure of ``I^n`` as the limit of ``I^(n+t) : x^t``."""
    if n == 0:
        return IdealHandle.unit(I.ctx)
    limit, _, _ = _stable_chain(lambda t: local_colon(power(I, n + t), x ** t), window, cap)
    return limit


@dataclass
class RRReport:
    I: IdealHandle
    rr_closure: IdealHandle
    per_n: dict
    stabilization: dict
    window: int
    superficial: Polynomial
    certification: str = "window-certified"
    chain_colengths: dict = field(default_factory=dict)

    @property
    def closed(self) -> bool:
        return self.per_n.get(1, False)

    def to_dict(self):
        return {
            "I": self.I.gen_strings(),
            "rr_closure": self.rr_closure.gen_strings(),
            "rr_closure_colength": local_length(self.rr_closure),
            "I_colength": local_length(self.I),
            "per_n": {str(n): ok for n, ok in sorted(self.per_n.items())},
            "stabilization": self.stabilization,
            "window": self.window,
            "superficial_element": str(self.superficial),
            "certification": self.certification,
            "chain_colengths": self.chain_colengths,
        }


def ratliff_rush(I: IdealHandle, window: int = 2, cap: int = 10, per_n_cap: int = 4,
                 x: Optional[Polynomial] = None, d: Optional[int] = None, seed: int = 0) -> RRReport:
    """Ratliff–Rush closure of I by two independent colon chains.

    Method a: ``I^(n+1) : I^n``.  Method b: ``I^(t+1) : x^t`` for a
    window-certified superficial nonzerodivisor ``x``.  The two limits must
    agree; the per-n table records whether the closure of ``I^n`` is ``I^n``.
    """
    closure_a, steps_a, len_a = _stable_chain(lambda n: local_colon(power(I, n + 1), power(I, n)), window, cap)
    if x is None:
        x = find_superficial_element(I, d=d, seed=seed)
    closure_b, steps_b, len_b = _stable_chain(lambda t: local_colon(power(I, t + 1), x ** t), window, cap)
    agree = local_equal(closure_a, closure_b)
    if not agree:
        raise MethodDisagreement(f"Ratliff–Rush methods disagree for {I}: {closure_a} vs {closure_b}")
    if not local_contains(closure_a, I):
        raise AssertionError("Ratliff–Rush closure does not contain I")
    s = steps_a
    if not local_contains(power(I, s + 1), closure_a * power(I, s)):
        raise AssertionError("closure * I^s is not inside I^(s+1)")
    per_n = {1: local_equal(closure_a, I)}
    for n in range(2, per_n_cap + 1):
        per_n[n] = local_equal(rr_closure_of_power(I, n, x, window, cap), power(I, n))
    return RRReport(
        I=I,
        rr_closure=closure_a,
        per_n=per_n,
        stabilization={"method_a_steps": steps_a, "method_b_steps": steps_b, "agreement": agree},
        window=window,
        superficial=x,
        chain_colengths={"method_a": len_a, "method_b": len_b},
    )


# --------------------------------------------------------------------------
# Valabrega–Valla and depth
# --------------------------------------------------------------------------

@dataclass
class VVTable:
    entries: dict  # n -> J ∩ I^n == J I^(n-1) locally

    @property
    def first_failure(self) -> Optional[int]:
        bad = [n for n, ok in sorted(self.entries.items()) if not ok]
        return bad[0] if bad else None

    def prefix(self) -> int:
        """Largest t with the condition holding for n = 1..t."""
        t = 0
        for n in sorted(self.entries):
            if not self.entries[n]:
                break
            t = n
        return t

    def holds_from(self, start: int) -> bool:
        return all(ok for n, ok in self.entries.items() if n >= start)

    def to_dict(self):
        return {"entries": {str(n): ok for n, ok in sorted(self.entries.items())},
                "first_failure": self.first_failure}


def vv_condition(J: IdealHandle, I: IdealHandle, n: int) -> bool:
    return local_equal(local_intersect(J, power(I, n)), J * power(I, n - 1))


def vv_table(J: IdealHandle, I: IdealHandle, cap: int = 6) -> VVTable:
    if not local_contains(I, J):
        raise NotContained(f"{J} is not contained in {I} locally")
    return VVTable({n: vv_condition(J, I, n) for n in range(1, cap + 1)})


def depth_flags(I: IdealHandle, J: IdealHandle, d: int, rr: RRReport = None, seed: int = 0):
    """``(depth G(I) >= 1, G(I) Cohen–Macaulay)``; the second entry only for d = 2."""
    rr = rr or ratliff_rush(I, d=d, seed=seed)
    depth_ge1 = all(rr.per_n.values())
    cm = None
    if d == 2:
        r = reduction_number(J, I).r
        cm = all(vv_table(J, I, r + 1).entries.values())
    return depth_ge1, cm
