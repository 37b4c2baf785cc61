"""Executable audits of the filtration statements, the d >= 2 colon criterion,
and the reduction-invariance experiment."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from ..errors import HypothesisFailed, NotAReduction, NotContained, NotMPrimary, UnsupportedDimension
from ..ideals import IdealHandle, colon, power, quotient_ctx
from ..local import local_colon, local_equal, local_equal_any, local_intersect, local_quotient_length
from ..poly import RingCtx
from .filtration import (
    _is_superficial_sequence,
    find_minimal_reduction,
    ratliff_rush,
    reduction_number,
    rr_closure_of_power,
    superficial_check,
    vv_condition,
)
from .hilbert import hilbert, lemma32_lengths, wang_torsion_length
from .report import AuditReport, Clause

log = logging.getLogger(__name__)

AUDITED_STATEMENTS = (
    "Prop2.1", "Cor2.2", "Cor2.3", "Prop2.4ii", "Prop2.6", "Rem2.7", "Lemma2.8", "Prop2.9",
    "Lemma2.10", "Lemma2.11", "Prop2.12", "Thm2.13", "Cor2.14", "Lemma3.1", "Lemma3.2", "Thm3.3",
)
D2_ONLY = {"Prop2.1", "Cor2.2", "Cor2.3", "Prop2.4ii", "Prop2.6", "Lemma2.8", "Prop2.9",
           "Lemma2.10", "Lemma2.11", "Prop2.12"}


class _Facts:
    """Lazily computed, cached facts about a pair (I, J = (x_1, ..., x_d))."""

    def __init__(self, I: IdealHandle, J: IdealHandle, params: dict):
        self.I = I
        self.xs = list(params.get("xs") or J.gens)
        self.J = IdealHandle(I.ctx, self.xs)
        self.d = len(self.xs)
        self.window = params.get("window", 3)
        self.per_n_cap = params.get("per_n_cap", 4)
        self.seed = params.get("seed", 0)
        self._memo = {}

    def _get(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    @property
    def r(self) -> Optional[int]:
        def go():
            try:
                return reduction_number(self.J, self.I).r
            except (NotAReduction, NotContained, NotMPrimary):
                return None
        return self._get("r", go)

    @property
    def is_minimal_reduction(self) -> bool:
        return self.r is not None

    @property
    def rr(self):
        return self._get("rr", lambda: ratliff_rush(self.I, per_n_cap=self.per_n_cap, d=self.d, seed=self.seed))

    @property
    def rr_closed(self) -> bool:
        return self.rr.per_n[1]

    @property
    def depth_ge1(self) -> bool:
        return all(self.rr.per_n.values())

    def colon_eq(self, n: int, i: int = 0) -> bool:
        """``I^n : x_i = I^(n-1)`` locally."""
        return self._get(("colon", n, i), lambda: local_equal(
            local_colon(power(self.I, n), self.xs[i]), power(self.I, n - 1)))

    def vv(self, n: int) -> bool:
        return self._get(("vv", n), lambda: vv_condition(self.J, self.I, n))

    def vv_from(self, start: int) -> bool:
        """VV for all ``n >= start``: past ``r + 1`` it holds automatically since ``I^n ⊆ J``."""
        if self.r is None:
            return False
        stop = max(start, self.r + 1) + 1
        return all(self.vv(n) for n in range(start, stop + 1))

    def vv_upto(self, t: int) -> bool:
        return all(self.vv(n) for n in range(1, t + 1))

    def vv_prefix(self, cap: int) -> int:
        t = 0
        while t < cap and self.vv(t + 1):
            t += 1
        return t

    def superficial(self, i: int = 0) -> bool:
        return self._get(("sup", i), lambda: superficial_check(
            self.xs[i], self.I, self.window, n0=self.r if self.r is not None else None,
            d=self.d, seed=self.seed))

    @property
    def superficial_sequence(self) -> bool:
        return self._get("supseq", lambda: self.superficial(0) and _is_superficial_sequence(
            self.I, self.xs, self.window, 12))

    @property
    def tame(self) -> bool:
        return self.superficial_sequence and all(self.superficial(i) for i in range(self.d))

    def quotient_len(self, n: int) -> int:
        """``length(I^(n+1) / J I^n)``."""
        return self._get(("ql", n), lambda: local_quotient_length(
            power(self.I, n + 1), self.J * power(self.I, n)))

    @property
    def vv2_defect(self) -> int:
        """``length(J ∩ I^2 / J I)``."""
        return self._get("vv2", lambda: local_quotient_length(
            local_intersect(self.J, power(self.I, 2)), self.J * self.I))

    def mod_first(self):
        """``(I, J)`` modulo ``x_1`` and the reduction number there."""
        def go():
            ctx1 = quotient_ctx(self.I.ctx, [self.xs[0]])
            Ib, Jb = self.I.in_ctx(ctx1), self.J.in_ctx(ctx1)
            try:
                rb = reduction_number(Jb, Ib).r
            except (NotAReduction, NotMPrimary):
                rb = None
            return Ib, Jb, rb
        return self._get("mod1", go)

    @property
    def hilbert(self):
        return self._get("hilbert", lambda: hilbert(self.I, self.d))


def _biconditional(left: bool, right: bool) -> dict:
    return {"forward": (not left) or right, "backward": (not right) or left}


def _require_d2(stmt: str, f: _Facts):
    if f.d != 2:
        raise UnsupportedDimension(f"{stmt} is audited only for d = 2 (got d = {f.d})", statement=stmt, d=f.d)


def _audit_prop21(f: _Facts, params) -> AuditReport:
    k = params.get("k", f.r if f.r is not None else 0)
    left, right = f.depth_ge1, all(f.colon_eq(n) for n in range(1, k + 1))
    c = Clause("iff", {"superficial_sequence": f.superficial_sequence, f"vv_from_{k + 1}": f.vv_from(k + 1)},
               _biconditional(left, right))
    return AuditReport("Prop2.1", [c], {"k": k, "rr_powers_closed": left, "colons_up_to_k": right})


def _audit_cor22(f: _Facts, params) -> AuditReport:
    k = f.r if f.r is not None else 0
    left, right = f.depth_ge1, all(f.colon_eq(n) for n in range(1, k + 1))
    c = Clause("iff", {"superficial_sequence": f.superficial_sequence, "is_reduction": f.r is not None},
               _biconditional(left, right))
    return AuditReport("Cor2.2", [c], {"r": f.r, "rr_powers_closed": left, "colons_up_to_r": right})


def _audit_cor23(f: _Facts, params) -> AuditReport:
    left, right = f.depth_ge1, f.colon_eq(2)
    c = Clause("iff", {"superficial_sequence": f.superficial_sequence, "r_equals_2": f.r == 2},
               _biconditional(left, right))
    return AuditReport("Cor2.3", [c], {"r": f.r, "rr_powers_closed": left, "I2_colon_x1_is_I": right})


def _audit_prop24(f: _Facts, params) -> AuditReport:
    hyps = {"minimal_reduction": f.is_minimal_reduction, "r_equals_2": f.r == 2, "rr_closed": f.rr_closed}
    witness = {"r": f.r}
    concl = {}
    if all(hyps.values()):
        e2, lam = f.hilbert.e[2], f.quotient_len(1)
        concl["e2_equals_length_I2_mod_JI"] = e2 == lam
        witness.update(e2=e2, length_I2_mod_JI=lam)
    return AuditReport("Prop2.4ii", [Clause("ii", hyps, concl)], witness)


def _audit_prop26(f: _Facts, params) -> AuditReport:
    hd = f.hilbert
    hp = all(hd.H[n] == hd.P(n) for n in (1, 2))
    small_r = f.r is not None and f.r <= 2
    c = Clause("iff", {"minimal_reduction": f.is_minimal_reduction, "rr_closed": f.rr_closed},
               _biconditional(small_r, hp))
    witness = {"r": f.r, "H": [hd.H[1], hd.H[2]], "P": [hd.P(1), hd.P(2)], "e": list(hd.e),
               "literal_r_equals_2_iff": (f.r == 2) == hp}
    return AuditReport("Prop2.6", [c], witness)


def _audit_rem27(f: _Facts, params) -> AuditReport:
    _, _, rb = f.mod_first()
    hyp_i = {"minimal_reduction": f.is_minimal_reduction, "reduction_mod_x1": rb is not None}
    if rb is not None:
        hyp_i["I^(k+1):x1_is_I^k"] = f.colon_eq(rb + 1)
    c1 = Clause("i", hyp_i, {"r_equals_k": f.r == rb})
    hyp_ii = {"d_is_2": f.d == 2, "minimal_reduction": f.is_minimal_reduction,
              "I2_colon_x1_is_I": f.colon_eq(2), "reduction_mod_x1": rb is not None}
    concl_ii = {}
    if all(hyp_ii.values()):
        concl_ii["iff"] = (rb <= 2) == (f.r <= 2)
    c2 = Clause("ii", hyp_ii, concl_ii)
    return AuditReport("Rem2.7", [c1, c2], {"r": f.r, "r_mod_x1": rb})


def _audit_lemma28(f: _Facts, params) -> AuditReport:
    cap = params.get("cap", 6)
    t = params.get("t", f.vv_prefix(cap))
    Ib, Jb, k = f.mod_first()
    hyps = {"minimal_reduction": f.is_minimal_reduction, f"vv_1_to_{t}": f.vv_upto(t),
            "reduction_mod_x1": k is not None}
    concl, dagger, witness = {}, {}, {"t": t, "k": k}
    if k is not None:
        for n in range(t, k):
            bar = local_quotient_length(power(Ib, n + 1), Jb * power(Ib, n))
            hyps[f"length_match_{n}"] = bar == f.quotient_len(n)
        for n in range(0, k):
            concl[f"I^{n + 1}:x1=I^{n}"] = f.colon_eq(n + 1)
            # the exact sequence: length(I^(n+1)/JI^n) = colon part + quotient part
            In1, JIn = power(f.I, n + 1), f.J * power(f.I, n)
            left = local_quotient_length(local_colon(In1, f.xs[0]), local_colon(JIn, f.xs[0]))
            bar = local_quotient_length(power(Ib, n + 1), Jb * power(Ib, n))
            dagger[f"dagger_{n}"] = f.quotient_len(n) == left + bar
    dag = Clause("exact_sequence", {"minimal_reduction": f.is_minimal_reduction,
                                    "reduction_mod_x1": k is not None}, dagger)
    return AuditReport("Lemma2.8", [Clause("main", hyps, concl), dag], witness)


def _audit_prop29(f: _Facts, params) -> AuditReport:
    cap = params.get("cap", 6)
    prefix = f.vv_prefix(cap) if f.is_minimal_reduction else 0
    t = params.get("t")
    if t is None:
        t = next((s for s in range(prefix + 1) if f.quotient_len(s) <= 1), prefix)
    hyps = {"minimal_reduction": f.is_minimal_reduction, f"vv_1_to_{t}": f.vv_upto(t),
            f"length_I^{t + 1}_mod_JI^{t}_le_1": f.is_minimal_reduction and f.quotient_len(t) <= 1}
    concl = {"depth_ge_d_minus_1": f.depth_ge1} if all(hyps.values()) else {}
    return AuditReport("Prop2.9", [Clause("main", hyps, concl)], {"t": t, "vv_prefix": prefix})


def _audit_lemma210(f: _Facts, params) -> AuditReport:
    hyps = {"minimal_reduction": f.is_minimal_reduction, "vv_from_3": f.vv_from(3),
            "some_I2_colon_xi_is_I": f.colon_eq(2, 0) or f.colon_eq(2, 1)}
    concl = {"rr_powers_closed": f.depth_ge1} if all(hyps.values()) else {}
    return AuditReport("Lemma2.10", [Clause("main", hyps, concl)], {"r": f.r})


def _audit_lemma211(f: _Facts, params) -> AuditReport:
    hyps = {"minimal_reduction": f.is_minimal_reduction}
    witness = {}
    if f.is_minimal_reduction:
        witness["length_J_cap_I2_mod_JI"] = f.vv2_defect
        hyps["defect_le_1"] = f.vv2_defect <= 1
    c1, c2 = f.colon_eq(2, 0), f.colon_eq(2, 1)
    witness.update(I2_colon_x1_is_I=c1, I2_colon_x2_is_I=c2)
    return AuditReport("Lemma2.11", [Clause("main", hyps, {"either": c1 or c2})], witness)


def _audit_prop212(f: _Facts, params) -> AuditReport:
    hyps = {"minimal_reduction": f.is_minimal_reduction, "vv_from_3": f.vv_from(3)}
    if f.is_minimal_reduction:
        hyps["defect_le_1"] = f.vv2_defect <= 1
    concl = {"depth_ge_d_minus_1": f.depth_ge1} if all(hyps.values()) else {}
    return AuditReport("Prop2.12", [Clause("main", hyps, concl)], {"r": f.r})


def _audit_cor214(f: _Facts, params) -> AuditReport:
    tame = f.tame
    c1 = Clause("i", {"tame": tame, "rr_closed": f.rr_closed, "vv_from_3": f.vv_from(3)},
                {"rr_powers_closed": f.depth_ge1})
    c2 = Clause("ii", {"tame": tame, "r_equals_2": f.r == 2}, _biconditional(f.rr_closed, f.depth_ge1))
    hyp3 = {"tame": tame, "is_reduction": f.r is not None and f.r >= 1}
    concl3 = {}
    if all(hyp3.values()):
        k = f.r - 1
        hyp3[f"rr_closed_power_{k}"] = k == 0 or f.rr.per_n.get(k, False)
        for n in range(max(k, 1), f.per_n_cap + 1):
            concl3[f"rr_closed_power_{n}"] = f.rr.per_n[n]
    c3 = Clause("iii", hyp3, concl3)
    return AuditReport("Cor2.14", [c1, c2, c3], {"r": f.r, "per_n": dict(f.rr.per_n)})


def _is_maximal_locally(I: IdealHandle) -> bool:
    return local_equal(I, IdealHandle.maximal(I.ctx))


def _audit_lemma31(f: _Facts, params) -> AuditReport:
    cap, k_cap = params.get("cap", 4), params.get("k_cap", 4)
    red = f.is_minimal_reduction
    t = f.vv_prefix(cap) if red else 0
    T = {}
    if red:
        for n in range(1, max(t, 2) + 1):
            for k in range(1, k_cap + 1):
                T[(n, k)] = wang_torsion_length(f.I, f.J, n, k, f.d)
    c0 = Clause("T1k", {"minimal_reduction": red}, {f"T_1_{k}": T[(1, k)] == 0 for k in range(1, k_cap + 1)}
                if red else {})
    c1 = Clause("i", {"minimal_reduction": red, f"vv_1_to_{t}": red and f.vv_upto(t)},
                {f"T_{n}_{k}": T[(n, k)] == 0 for n in range(1, t + 1) for k in range(1, k_cap + 1)})
    maximal = _is_maximal_locally(f.I)
    c2 = Clause("ii", {"minimal_reduction": red, "I_is_maximal_ideal": maximal},
                {f"T_2_{k}": T[(2, k)] == 0 for k in range(1, k_cap + 1)} if red else {})
    witness = {"vv_prefix": t, "T": {f"{n},{k}": v for (n, k), v in sorted(T.items())},
               "integral_closure": "tested only for I = m"}
    return AuditReport("Lemma3.1", [c0, c1, c2], witness)


def _audit_lemma32(f: _Facts, params) -> AuditReport:
    n_cap = params.get("n_cap", 4)
    red = f.is_minimal_reduction
    concl, witness = {}, {}
    if red:
        e0 = f.hilbert.e[0]
        for n in range(1, n_cap + 1):
            lhs0, rhs0, lhs, rhs = lemma32_lengths(f.I, f.J, n, f.d, e0)
            concl["length_I_mod_J"] = lhs0 == rhs0
            concl[f"length_I^{n + 1}_mod_J^{n}I"] = lhs == rhs
            witness[str(n)] = [lhs, rhs]
        witness.update(e0=e0, length_I_mod_J=[lhs0, rhs0])
    return AuditReport("Lemma3.2", [Clause("identities", {"minimal_reduction": red}, concl)], witness)


def _audit_thm33(f: _Facts, params) -> AuditReport:
    Js = [f.J] + list(params.get("others", ()))
    rep = invariance_experiment(f.I, f.d, trials=params.get("trials", 2), seed=f.seed,
                                n_cap=params.get("n_cap", 4), Js=Js)
    t = rep["common_prefix"]
    hyps = {"all_reductions": all(tr["r"] is not None for tr in rep["trials"]),
            "common_vv_prefix_ge_1": t is not None and t >= 1}
    upto = min(t or 0, params.get("n_cap", 4))
    concl = {f"n_{n}": rep["columns"][str(n)]["equal"] for n in range(1, upto + 1)}
    return AuditReport("Thm3.3", [Clause("main", hyps, concl)], rep)


def _audit_thm213(f: _Facts, params) -> AuditReport:
    try:
        return colon_criterion_213(f.I, f.xs, params.get("k", 0), params.get("n_cap", 4),
                                   params.get("m_cap", 2), window=f.window)
    except HypothesisFailed as exc:
        return AuditReport("Thm2.13", [Clause("main", {exc.data.get("clause", "hypothesis"): False}, {})],
                           {"error": str(exc)})


_AUDITS = {
    "Prop2.1": _audit_prop21, "Cor2.2": _audit_cor22, "Cor2.3": _audit_cor23, "Prop2.4ii": _audit_prop24,
    "Prop2.6": _audit_prop26, "Rem2.7": _audit_rem27, "Lemma2.8": _audit_lemma28, "Prop2.9": _audit_prop29,
    "Lemma2.10": _audit_lemma210, "Lemma2.11": _audit_lemma211, "Prop2.12": _audit_prop212,
    "Thm2.13": _audit_thm213, "Cor2.14": _audit_cor214, "Lemma3.1": _audit_lemma31,
    "Lemma3.2": _audit_lemma32, "Thm3.3": _audit_thm33,
}


def proposition_audit(statement: str, I: IdealHandle, J: IdealHandle, params: dict = None) -> AuditReport:
    """Evaluate the hypotheses and conclusion of ``statement`` on (I, J).

    ``params`` may carry ``xs`` (the ordered generators of J), ``k``, ``t``,
    ``window``, ``cap``, ``n_cap``, ``m_cap``, ``k_cap``, ``seed`` and, for
    ``Thm3.3``, further reductions under ``others``.
    """
    if statement not in _AUDITS:
        raise ValueError(f"unknown statement {statement!r}; known: {', '.join(AUDITED_STATEMENTS)}")
    params = dict(params or {})
    f = _Facts(I, J, params)
    if statement in D2_ONLY:
        _require_d2(statement, f)
    report = _AUDITS[statement](f, params)
    if not report.consistent:
        log.error("%s: hypotheses hold but the conclusion fails: %s", statement, report.to_dict())
    return report


# --------------------------------------------------------------------------
# colon criterion for tame sequences
# --------------------------------------------------------------------------

def colon_criterion_213(I: IdealHandle, xs, k: int, n_cap: int = 4, m_cap: int = 2, window: int = 3) -> AuditReport:
    """Check ``a^m I^n : x_1 = a^m I^(n-1)`` with ``a = (x_2, ..., x_d)``.

    Cells run over ``k+1 <= n <= n_cap`` and ``0 <= m <= m_cap``, together with
    the consequence that ``I^n`` is Ratliff–Rush closed for ``k <= n <= n_cap``.
    """
    if k < 0:
        raise ValueError("k must be a natural number")
    f = _Facts(I, IdealHandle(I.ctx, xs), {"xs": list(xs), "window": window})
    if f.r is None:
        raise HypothesisFailed("(x_1..x_d) is not a reduction of I", clause="reduction")
    if not f.tame:
        raise HypothesisFailed("sequence is not tame superficial", clause="tame")
    if not f.vv_from(k + 2):
        raise HypothesisFailed(f"VV fails for some n >= {k + 2}", clause=f"vv_from_{k + 2}")
    x1 = xs[0]
    if k > 0 and not local_equal(rr_closure_of_power(I, k, x1), power(I, k)):
        raise HypothesisFailed(f"I^{k} is not Ratliff–Rush closed", clause=f"rr_closed_power_{k}")
    a = IdealHandle(I.ctx, xs[1:])
    cells = {}
    for m in range(m_cap + 1):
        am = power(a, m)
        for n in range(k + 1, n_cap + 1):
            lhs = am * power(I, n)
            rhs = am * power(I, n - 1)
            if m == 0:
                ok = local_equal(local_colon(lhs, x1), rhs)
            else:
                ok = local_equal_any(colon(lhs, IdealHandle(I.ctx, [x1])), rhs)
            cells[f"m{m}_n{n}"] = ok
    rr = {f"rr_closed_power_{n}": n == 0 or local_equal(rr_closure_of_power(I, n, x1), power(I, n))
          for n in range(k, n_cap + 1)}
    hyps = {"tame": True, f"vv_from_{k + 2}": True, f"rr_closed_power_{k}": True}
    return AuditReport("Thm2.13", [Clause("colon_cells", hyps, cells), Clause("consequence", hyps, rr)],
                       {"k": k, "d": len(xs), "r": f.r, "n_cap": n_cap, "m_cap": m_cap})


# --------------------------------------------------------------------------
# invariance experiment
# --------------------------------------------------------------------------

def _safe_len(f: _Facts, n: int):
    try:
        return f.quotient_len(n)
    except (NotContained, NotMPrimary):
        return None


def _trial(I: IdealHandle, J: IdealHandle, n_cap: int) -> dict:
    f = _Facts(I, J, {})
    return {
        "J": J.gen_strings(),
        "r": f.r,
        "vv_prefix": f.vv_prefix(n_cap + 1) if f.r is not None else 0,
        "lengths": [_safe_len(f, n) for n in range(n_cap + 1)],
    }


def _draw_trial(args):
    var_names, char, ambient, gens, d, seed, n_cap = args
    ctx = RingCtx.make(var_names, char, ambient)
    I = IdealHandle.parse(ctx, gens)
    J, _ = find_minimal_reduction(I, d, seed)
    return _trial(I, J, n_cap)


def invariance_experiment(I: IdealHandle, d: int, trials: int = 5, seed: int = 0, n_cap: int = 4,
                          Js=None, parallel: bool = False) -> dict:
    """Compare ``length(I^(n+1)/J I^n)`` across several minimal reductions J.

    Trial i draws its reduction with seed ``seed + i``; explicitly supplied
    reductions come first.  Columns up to the common VV prefix must agree.
    """
    rows = [_trial(I, J, n_cap) for J in (Js or ())]
    ctx = I.ctx
    jobs = [(ctx.var_names, ctx.characteristic, [str(g) for g in ctx.ambient], [str(g) for g in I.gens],
             d, seed + i, n_cap) for i in range(trials)]
    if parallel and trials > 1:
        with ProcessPoolExecutor() as pool:
            drawn = list(pool.map(_draw_trial, jobs))
    else:
        drawn = []
        for i in range(trials):
            J, _ = find_minimal_reduction(I, d, seed + i)
            drawn.append(_trial(I, J, n_cap))
    for i, row in enumerate(drawn):
        row["seed"] = seed + i
    rows.extend(drawn)
    for idx, row in enumerate(rows):
        row["index"] = idx
    reductions = [r for r in rows if r["r"] is not None]
    common = min((r["vv_prefix"] for r in reductions), default=None)
    columns = {}
    for n in range(n_cap + 1):
        vals = [r["lengths"][n] for r in rows]
        known = [v for v in vals if v is not None]
        columns[str(n)] = {"values": vals, "equal": len(set(known)) <= 1,
                           "spread": (max(known) - min(known)) if known else None}
    violations = [n for n in range(1, min(common or 0, n_cap) + 1) if not columns[str(n)]["equal"]]
    divergences = [n for n in range(n_cap + 1) if not columns[str(n)]["equal"]]
    return {
        "trials": rows,
        "common_prefix": common,
        "columns": columns,
        "consistent": not violations,
        "violations": violations,
        "divergences": divergences,
        "seed": seed,
    }
