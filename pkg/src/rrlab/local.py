"""Computations in the localization at the origin by certified truncation.

For an ideal Q with colengths ``f(N) = dim S/(Q + M^N)``, equality
``f(N) == f(N+1)`` together with ``Q + M^(N+1) ⊆ Q + M^N`` forces
``Q + M^N = Q + M^(N+1)``, so ``M^N ⊆ Q + M*M^N`` and, by Nakayama,
``M^N ⊆ Q`` after localizing.  From then on ``Q + M^N`` is supported only at
the origin and carries all the local information of Q.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotContained, NotMPrimary
from .groebner import k_dimension, normal_form
from .ideals import IdealHandle, colon, contains, intersect
from .poly import Polynomial, RingCtx, monomials_of_degree

DEFAULT_TRUNCATION_CAP = 40


@dataclass(frozen=True)
class LocalCert:
    """Truncation exponent N and the two equal colengths that certify it."""

    N: int
    lengths: tuple

    def to_dict(self):
        return {"N": self.N, "lengths": list(self.lengths)}


def _colength(Q: IdealHandle, N: int) -> int:
    cache = Q.local_cache.setdefault("colength", {})
    if N not in cache:
        cache[N] = k_dimension(Q.groebner(truncate=N))
    return cache[N]


def _scan_start(Q: IdealHandle) -> int:
    """Below the order of Q the colengths are those of R/M^N, which strictly
    increase when R is not Artinian; quotient rings are scanned from 0."""
    if Q.ctx.ambient or not Q.gens:
        return 0
    return min(g.order() for g in Q.gens)


def truncation_exponent(Q: IdealHandle, cap: int = DEFAULT_TRUNCATION_CAP) -> LocalCert:
    """Smallest N with ``dim S/(Q+M^N) == dim S/(Q+M^(N+1))``.

    ``cap`` bounds the number of exponents tried past the order of Q.
    """
    cert = Q.local_cache.get("cert")
    if cert is not None:
        return cert
    start = _scan_start(Q)
    prev = _colength(Q, start)
    for N in range(start, start + cap + 1):
        nxt = _colength(Q, N + 1)
        if nxt == prev:
            cert = LocalCert(N, (prev, nxt))
            return Q.local_cache.setdefault("cert", cert)
        prev = nxt
    raise NotMPrimary(f"colengths still growing at truncation exponent {start + cap}; "
                      f"{Q} is not locally primary to the maximal ideal", cap=start + cap)


def nakayama_check(Q: IdealHandle, cert: LocalCert = None) -> bool:
    """Generator-wise check ``M^N ⊆ Q + M^(N+1)`` at the certified N."""
    cert = cert or truncation_exponent(Q)
    G = Q.groebner(truncate=cert.N + 1)
    ring = Q.ring
    return all(normal_form(ring.monomial(e), G).is_zero()
               for e in monomials_of_degree(ring.nvars, cert.N))


def local_length(Q: IdealHandle) -> int:
    """Length of R_m / Q_m."""
    return truncation_exponent(Q).lengths[0]


def common_exponent(*ideals: IdealHandle) -> int:
    return max(truncation_exponent(Q).N for Q in ideals)


def local_equal(A: IdealHandle, B: IdealHandle) -> bool:
    N = common_exponent(A, B)
    return A.groebner(truncate=N) == B.groebner(truncate=N)


def local_contains(A: IdealHandle, B: IdealHandle) -> bool:
    """``B ⊆ A`` after localizing at the origin; only A needs to be m-primary."""
    N = truncation_exponent(A).N
    G = A.groebner(truncate=N)
    return all(normal_form(g, G).is_zero() for g in B.gens)


def local_quotient_length(A: IdealHandle, B: IdealHandle) -> int:
    """Length of ``A/B`` for locally m-primary ``B ⊆ A``."""
    if not local_contains(A, B):
        raise NotContained(f"{B} is not contained in {A} locally")
    return local_length(B) - local_length(A)


def local_colon(A: IdealHandle, B) -> IdealHandle:
    """``A : B`` locally, computed globally as ``(A + M^N) : B``.

    ``B`` may be an ideal handle or a single polynomial.
    """
    N = truncation_exponent(A).N
    if isinstance(B, Polynomial):
        B = IdealHandle(A.ctx, [B])
    return colon(A, B, truncate=N)


def local_intersect(A: IdealHandle, B: IdealHandle) -> IdealHandle:
    """``A ∩ B`` locally for locally m-primary A and B."""
    N = common_exponent(A, B)
    return intersect(A, B, truncate=N)


def is_regular_local(x: Polynomial, ctx: RingCtx) -> bool:
    """Whether ``x`` is a nonzerodivisor of the local ring of ``ctx`` at the origin.

    With ``Q = I_R :_S x`` the annihilated part ``(0 :_R x)`` is ``Q / I_R``,
    which vanishes locally iff ``I_R :_S Q`` contains a unit at the origin.
    """
    if x.constant_term():
        return True
    zero = IdealHandle(ctx, [])
    if not ctx.ambient:
        return not x.is_zero()
    xi = IdealHandle(ctx, [x])
    if xi.is_zero():
        return False  # x vanishes in R
    Q = colon(zero, xi)
    if contains(zero, Q):
        return True
    ann = colon(zero, Q)
    return (ann + IdealHandle.maximal(ctx)).is_unit()


def local_equal_any(A: IdealHandle, B: IdealHandle) -> bool:
    """Local equality for ideals that need not be primary to the maximal ideal.

    ``A_m ⊆ B_m`` iff ``B :_S A`` is not inside M, tested as ``(B : A) + M = (1)``.
    """
    M = IdealHandle.maximal(A.ctx)
    return (colon(B, A) + M).is_unit() and (colon(A, B) + M).is_unit()
