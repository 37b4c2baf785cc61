"""Command-line front end: run a session file and emit deterministic reports.

Exit status is 0 when every command succeeded, 2 when some command hit a
computational error and 1 when the session does not parse.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import RRLabError
from .ideals import IdealHandle
from .invariants import (
    colon_criterion_213,
    depth_flags,
    find_minimal_reduction,
    hilbert,
    invariance_experiment,
    lemma32_check,
    proposition_audit,
    ratliff_rush,
    reduction_number,
    superficial_check,
    tame_superficial_sequence,
    vv_table,
    wang_torsion_length,
)
from .local import local_equal, local_length, local_quotient_length, truncation_exponent
from .poly import DEFAULT_PRIME, RingCtx
from .session import Command, Session, SessionError, evaluate, parse_expr, parse_session

EXAMPLE_2_15 = {
    "vars": ("x", "y"),
    "I": ("x^6", "x^4*y^2", "x^3*y^3", "x^2*y^4", "x*y^5", "y^6"),
    "J": ("x^6", "y^6+x^4*y^2"),
}
EXAMPLE_3_4 = {
    "vars": ("x", "y", "z", "u", "v"),
    "mod": ("x^2+y^5", "x*y+u^4", "x*z+v^3"),
    "J1": ("y", "z"),
    "J2": ("z", "u"),
    "published": {"J1": 17, "J2": 20},
}


@dataclass
class Report:
    command: str
    ok: bool
    payload: dict = field(default_factory=dict)
    certs: dict = field(default_factory=dict)
    error: Optional[dict] = None

    def to_dict(self):
        out = {"command": self.command, "ok": self.ok, "payload": self.payload, "certs": self.certs}
        if self.error is not None:
            out["error"] = self.error
        return out


def _plain(v):
    """JSON-safe, order-stable rendering of report values."""
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float):
        return "INFINITE" if math.isinf(v) else repr(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, IdealHandle):
        return v.gen_strings()
    return str(v)


def emit(report: Report, fmt: str = "json") -> bytes:
    d = _plain(report.to_dict())
    if fmt == "json":
        return (json.dumps(d, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n").encode()
    lines = [f"{'ok ' if report.ok else 'ERR'} {report.command}"]
    if report.error:
        lines.append(f"    error {report.error['code']}: {report.error['message']}")
    for key in sorted(d["payload"]):
        lines.append(f"    {key}: {json.dumps(d['payload'][key], sort_keys=True, ensure_ascii=False)}")
    for key in sorted(d["certs"]):
        lines.append(f"    [cert] {key}: {json.dumps(d['certs'][key], sort_keys=True, ensure_ascii=False)}")
    return ("\n".join(lines) + "\n").encode()


# --------------------------------------------------------------------------
# execution
# --------------------------------------------------------------------------

@dataclass
class Options:
    seed: int = 0
    window: Optional[int] = None
    cap: Optional[int] = None
    trials: int = 5
    characteristic: Optional[int] = None
    parallel_trials: bool = False


class Runner:
    def __init__(self, session: Session, opts: Options):
        self.session = session
        self.opts = opts
        self.ctx = session.ring.ctx(opts.characteristic) if session.ring else None
        self.env = session.bind(self.ctx) if self.ctx else {}

    # -- argument helpers --------------------------------------------------
    def ideal(self, src: str) -> IdealHandle:
        return evaluate(parse_expr(src), self.ctx, self.env)

    def ordered(self, src: str) -> list:
        """Generators in the order written, when the argument is (bound to) a literal list."""
        e = parse_expr(src)
        while e.op == "name" and self.session.ideals[e.args[0]].op in ("name", "list"):
            e = self.session.ideals[e.args[0]]
        if e.op == "list":
            return [self.ctx.parse(p) for p in e.args]
        return list(self.ideal(src).gens)

    def dim(self, cmd: Command) -> int:
        return int(cmd.kwargs.get("d", self.ctx.nvars - len(self.ctx.ambient)))

    def intarg(self, cmd: Command, key: str, default):
        v = cmd.kwargs.get(key)
        return default if v is None else int(v)

    def seed(self, cmd: Command) -> int:
        return self.intarg(cmd, "seed", self.session.options.get("seed", self.opts.seed))

    def window(self, cmd: Command, default: int) -> int:
        base = self.opts.window if self.opts.window is not None else self.session.options.get("window", default)
        return self.intarg(cmd, "window", base)

    def cap(self, cmd: Command, default: int) -> int:
        base = self.opts.cap if self.opts.cap is not None else self.session.options.get("cap", default)
        return self.intarg(cmd, "cap", base)

    @staticmethod
    def truncation(**ideals) -> dict:
        return {name: truncation_exponent(I).to_dict() for name, I in sorted(ideals.items())}

    # -- commands ----------------------------------------------------------
    def run(self, cmd: Command) -> Report:
        text = str(cmd)
        try:
            payload, certs = getattr(self, "cmd_" + cmd.name)(cmd)
            return Report(text, True, payload, certs)
        except RRLabError as exc:
            return Report(text, False, error={"code": exc.code, "message": str(exc)})
        except (KeyError, IndexError, ValueError) as exc:
            return Report(text, False, error={"code": "BAD_ARGUMENTS", "message": str(exc)})

    def cmd_rr(self, cmd):
        I = self.ideal(cmd.args[0])
        w = self.window(cmd, 2)
        rep = ratliff_rush(I, window=w, cap=self.cap(cmd, 10), d=self.dim(cmd), seed=self.seed(cmd))
        return rep.to_dict(), {"window": w, "seed": self.seed(cmd), **self.truncation(I=I)}

    def cmd_rednum(self, cmd):
        J, I = self.ideal(cmd.args[0]), self.ideal(cmd.args[1])
        cert = reduction_number(J, I, self.cap(cmd, 12))
        return cert.to_dict(), self.truncation(I=I)

    def cmd_minred(self, cmd):
        I = self.ideal(cmd.args[0])
        J, cert = find_minimal_reduction(I, self.dim(cmd), self.seed(cmd))
        return {"J": J, **cert.to_dict()}, {"seed": self.seed(cmd), **self.truncation(I=I)}

    def cmd_superficial(self, cmd):
        x = self.ctx.parse(cmd.args[0])
        I = self.ideal(cmd.args[1])
        w = self.window(cmd, 3)
        n0 = cmd.kwargs.get("n0")
        ok = superficial_check(x, I, w, n0=None if n0 is None else int(n0), d=self.dim(cmd), seed=self.seed(cmd))
        return {"superficial": ok, "x": str(x)}, {"window": w, "seed": self.seed(cmd),
                                                  "certification": "window-certified"}

    def cmd_tame(self, cmd):
        I = self.ideal(cmd.args[0])
        xs = tame_superficial_sequence(I, self.dim(cmd), self.seed(cmd), window=self.window(cmd, 3))
        return {"sequence": [str(x) for x in xs]}, {"seed": self.seed(cmd), "certification": "window-certified"}

    def cmd_vv(self, cmd):
        J, I = self.ideal(cmd.args[0]), self.ideal(cmd.args[1])
        return vv_table(J, I, self.cap(cmd, 6)).to_dict(), self.truncation(I=I)

    def cmd_hilbert(self, cmd):
        I = self.ideal(cmd.args[0])
        d = self.dim(cmd)
        return hilbert(I, d, self.cap(cmd, d + 4)).to_dict(), self.truncation(I=I)

    def cmd_wang(self, cmd):
        I, J = self.ideal(cmd.args[0]), self.ideal(cmd.args[1])
        n, k = int(cmd.kwargs["n"]), int(cmd.kwargs["k"])
        return {"length": wang_torsion_length(I, J, n, k, self.dim(cmd)), "n": n, "k": k}, {}

    def cmd_lemma32(self, cmd):
        I, J = self.ideal(cmd.args[0]), self.ideal(cmd.args[1])
        rep = lemma32_check(I, J, int(cmd.kwargs.get("n", 1)), self.dim(cmd))
        return rep.to_dict(), {}

    def cmd_audit(self, cmd):
        stmt = cmd.args[0]
        I, J = self.ideal(cmd.args[1]), self.ideal(cmd.args[2])
        params = {k: int(v) for k, v in cmd.kwargs.items() if k != "seed"}
        params.update(xs=self.ordered(cmd.args[2]), seed=self.seed(cmd))
        params["window"] = self.window(cmd, 3)
        if len(cmd.args) > 3:
            params["others"] = [self.ideal(a) for a in cmd.args[3:]]
        return proposition_audit(stmt, I, J, params).to_dict(), {"seed": self.seed(cmd)}

    def cmd_colon213(self, cmd):
        I = self.ideal(cmd.args[0])
        xs = self.ordered(cmd.args[1])
        rep = colon_criterion_213(I, xs, int(cmd.kwargs.get("k", 0)), int(cmd.kwargs.get("n_cap", 4)),
                                  int(cmd.kwargs.get("m_cap", 2)), window=self.window(cmd, 3))
        return rep.to_dict(), {}

    def cmd_invariance(self, cmd):
        I = self.ideal(cmd.args[0])
        Js = [self.ideal(a) for a in cmd.args[1:]]
        trials = self.intarg(cmd, "trials", self.session.options.get("trials", self.opts.trials))
        rep = invariance_experiment(I, self.dim(cmd), trials, self.seed(cmd), self.intarg(cmd, "n_cap", 4),
                                    Js=Js, parallel=self.opts.parallel_trials)
        return rep, {"seed": self.seed(cmd)}

    def cmd_length_quotient(self, cmd):
        A, B = self.ideal(cmd.args[0]), self.ideal(cmd.args[1])
        return {"length": local_quotient_length(A, B)}, self.truncation(A=A, B=B)

    def cmd_length(self, cmd):
        A = self.ideal(cmd.args[0])
        return {"length": local_length(A)}, self.truncation(A=A)

    def cmd_equal_local(self, cmd):
        A, B = self.ideal(cmd.args[0]), self.ideal(cmd.args[1])
        return {"equal": local_equal(A, B)}, self.truncation(A=A, B=B)

    def cmd_repro(self, cmd):
        which = cmd.args[0]
        p = self.opts.characteristic if self.opts.characteristic is not None else DEFAULT_PRIME
        if which == "ex2_15":
            return repro_ex2_15(p, self.seed(cmd))
        if which == "ex3_4":
            return repro_ex3_4(p)
        raise ValueError(f"unknown preset {which!r}; use ex2_15 or ex3_4")


def repro_ex2_15(p: int = DEFAULT_PRIME, seed: int = 0):
    ctx = RingCtx.make(EXAMPLE_2_15["vars"], p)
    I = IdealHandle.parse(ctx, EXAMPLE_2_15["I"])
    J = IdealHandle.parse(ctx, EXAMPLE_2_15["J"])
    cert = reduction_number(J, I)
    rr = ratliff_rush(I, d=2, seed=seed)
    depth_ge1, cm = depth_flags(I, J, 2, rr=rr)
    vv = vv_table(J, I, cert.r + 2)
    payload = {"r": cert.r, "depth_ge1": depth_ge1, "cm": cm, "rr_powers_closed": rr.per_n,
               "vv": vv.to_dict(), "characteristic": p}
    return payload, {"reduction": cert.to_dict(), "seed": seed, **Runner.truncation(I=I)}


def repro_ex3_4(p: int = DEFAULT_PRIME):
    ctx = RingCtx.make(EXAMPLE_3_4["vars"], p, EXAMPLE_3_4["mod"])
    m = IdealHandle.maximal(ctx)
    m3, m4 = m ** 3, m ** 4
    lengths = {}
    for name in ("J1", "J2"):
        J = IdealHandle.parse(ctx, EXAMPLE_3_4[name])
        lengths[name] = local_quotient_length(m4, J * m3)
    payload = {
        "length_m4_mod_J1m3": lengths["J1"],
        "length_m4_mod_J2m3": lengths["J2"],
        "published": EXAMPLE_3_4["published"],
        "agrees_with_published": lengths == EXAMPLE_3_4["published"],
        "characteristic": p,
    }
    return payload, Runner.truncation(m4=m4)


def execute(session: Session, opts: Options = None) -> list:
    runner = Runner(session, opts or Options())
    return [runner.run(c) for c in session.commands]


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rrlab", description="Ratliff–Rush and reduction computations on sessions.")
    ap.add_argument("session", nargs="?", help="session file ('-' or omitted: stdin unless -c is given)")
    ap.add_argument("-c", "--command", action="append", default=[], help="extra session line (repeatable)")
    ap.add_argument("--char", type=int, dest="characteristic", help="override the ring characteristic")
    ap.add_argument("--seed", type=int, help="default seed (else $RRLAB_SEED, else 0)")
    ap.add_argument("--window", type=int)
    ap.add_argument("--cap", type=int)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--parallel-trials", action="store_true", help="run invariance trials in worker processes")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.session and args.session != "-":
        with open(args.session, encoding="utf-8") as fh:
            src = fh.read()
    elif args.command and not args.session:
        src = ""
    else:
        src = sys.stdin.read()
    src = src + "".join(line + "\n" for line in args.command)
    seed = args.seed if args.seed is not None else int(os.environ.get("RRLAB_SEED", "0"))
    opts = Options(seed=seed, window=args.window, cap=args.cap, trials=args.trials,
                   characteristic=args.characteristic, parallel_trials=args.parallel_trials)
    try:
        session = parse_session(src)
        runner = Runner(session, opts)
    except SessionError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return 1
    except RRLabError as exc:
        sys.stderr.write(f"error {exc.code}: {exc}\n")
        return 2
    out = sys.stdout.buffer
    all_ok = True
    for cmd in session.commands:
        rep = runner.run(cmd)
        all_ok &= rep.ok
        try:
            out.write(emit(rep, args.format))
            out.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); stop quietly
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
            return 0 if all_ok else 2
    return 0 if all_ok else 2


if __name__ == "__main__":
    sys.exit(main())
