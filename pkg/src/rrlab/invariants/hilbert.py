"""Hilbert–Samuel data, Wang torsion lengths and the J-free length identities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import NegativeLength, NoStableFit
from ..ideals import IdealHandle, power
from ..local import local_length, local_quotient_length
from .filtration import reduction_number
from .report import AuditReport, Clause


def binom(a: int, b: int) -> int:
    """``a (a-1) ... (a-b+1) / b!`` for integer a; zero when ``b < 0`` or ``0 <= a < b``.

    This is the polynomial binomial, so ``binom(-1, 0) == 1``; it is what makes
    the Hilbert polynomial an honest polynomial down to n = 0.
    """
    if b < 0:
        return 0
    num, den = 1, 1
    for i in range(b):
        num *= a - i
        den *= i + 1
    return num // den


def hilbert_polynomial_value(e, d: int, n: int) -> int:
    return sum((-1) ** i * e[i] * binom(n + d - i - 1, d - i) for i in range(d + 1))


def _solve(rows, rhs):
    """Exact Gauss–Jordan elimination over Q for a square nonsingular system."""
    m = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(rows, rhs)]
    size = len(m)
    for col in range(size):
        piv = next(i for i in range(col, size) if m[i][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for i in range(size):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [row[-1] for row in m]


@dataclass
class HilbertData:
    H: dict
    e: tuple
    n0: int
    d: int
    validated: tuple = ()

    def P(self, n: int) -> int:
        return hilbert_polynomial_value(self.e, self.d, n)

    def to_dict(self):
        return {
            "H": [self.H[n] for n in sorted(self.H)],
            "e": list(self.e),
            "n0": self.n0,
            "d": self.d,
            "validated_at": list(self.validated),
        }


def hilbert(I: IdealHandle, d: int, cap: Optional[int] = None) -> HilbertData:
    """Hilbert–Samuel function ``n -> length(R/I^n)`` and its coefficients.

    The coefficients are fitted exactly on ``cap-d .. cap`` and validated on
    ``cap+1 .. cap+3``; ``n0`` is the first n from which P and H agree on
    every sampled point.
    """
    cap = d + 4 if cap is None else cap
    if cap < d + 4:
        raise ValueError(f"cap must be at least d+4 = {d + 4}")
    H = {n: local_length(power(I, n)) for n in range(cap + 4)}
    window = range(cap - d, cap + 1)
    rows = [[(-1) ** i * binom(n + d - i - 1, d - i) for i in range(d + 1)] for n in window]
    sol = _solve(rows, [H[n] for n in window])
    if any(v.denominator != 1 for v in sol):
        raise NoStableFit(f"non-integral Hilbert coefficients {sol}; raise cap", cap=cap)
    e = tuple(int(v) for v in sol)
    extra = tuple(range(cap + 1, cap + 4))
    if any(hilbert_polynomial_value(e, d, n) != H[n] for n in extra):
        raise NoStableFit(f"fitted polynomial misses H beyond cap {cap}", cap=cap)
    n0 = cap - d
    while n0 > 0 and hilbert_polynomial_value(e, d, n0 - 1) == H[n0 - 1]:
        n0 -= 1
    H_out = {n: H[n] for n in range(cap + 1)}
    return HilbertData(H_out, e, n0, d, extra)


def wang_torsion_length(I: IdealHandle, J: IdealHandle, n: int, k: int, d: int) -> int:
    """``length(T_{n,k})`` from the exactness of
    ``0 -> T -> (I^n/JI^(n-1))^C(k+d-1,d-1) -> J^k I^n / J^(k+1) I^(n-1) -> 0``."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    In, In1 = power(I, n), power(I, n - 1)
    src = local_quotient_length(In, J * In1)
    tgt = local_quotient_length(power(J, k) * In, power(J, k + 1) * In1)
    t = binom(k + d - 1, d - 1) * src - tgt
    if t < 0:
        raise NegativeLength(f"T_({n},{k}) would have length {t}", n=n, k=k, length=t)
    return t


def lemma32_lengths(I: IdealHandle, J: IdealHandle, n: int, d: int, e0: int):
    """Both sides of the two J-free identities; returns ``(lhs0, rhs0, lhs_n, rhs_n)``."""
    lam_RI = local_length(I)
    lhs0 = local_quotient_length(I, J)
    rhs0 = e0 - lam_RI
    lhs_n = local_quotient_length(power(I, n + 1), power(J, n) * I)
    rhs_n = (e0 * binom(n + d - 1, d) + lam_RI * binom(n + d - 1, d - 1)
             - local_length(power(I, n + 1)))
    return lhs0, rhs0, lhs_n, rhs_n


def lemma32_check(I: IdealHandle, J: IdealHandle, n: int, d: int, hilbert_data: HilbertData = None):
    """``length(I/J) = e0 - length(R/I)`` and the formula for ``length(I^(n+1)/J^n I)``."""
    hd = hilbert_data or hilbert(I, d)
    cert = reduction_number(J, I)
    lhs0, rhs0, lhs_n, rhs_n = lemma32_lengths(I, J, n, d, hd.e[0])
    clause = Clause(
        "identities",
        hypotheses={"J_is_reduction": True, f"J_has_{d}_generators": len(J.gens) == d},
        conclusion={"length_I_mod_J": lhs0 == rhs0, f"length_I^{n + 1}_mod_J^{n}I": lhs_n == rhs_n},
    )
    return AuditReport(
        "Lemma3.2",
        [clause],
        witness={"e0": hd.e[0], "r": cert.r, "n": n,
                 "length_I_mod_J": [lhs0, rhs0], "length_power": [lhs_n, rhs_n]},
    )
