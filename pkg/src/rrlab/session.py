"""Line-oriented session files: ring declaration, ideal bindings, options and commands.

    ring R = char 32003 vars x y z u v mod [x^2+y^5, x*y+u^4, x*z+v^3]
    ideal m = [x, y, z, u, v]
    ideal J1 = [y, z]
    set seed 7
    length_quotient m^4 J1*m^3

Ideal expressions combine names and bracketed generator lists with ``^``
(power), ``*`` (product), ``+`` (sum), ``:`` (colon) and ``&`` (intersection).
Binding strength, tightest first: ``^``, ``*``, ``:``, ``+``, ``&``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import ParseError
from .ideals import IdealHandle, colon, intersect, power
from .poly import RingCtx

COMMANDS = (
    "rr", "rednum", "minred", "superficial", "tame", "vv", "hilbert", "wang", "lemma32", "audit",
    "colon213", "invariance", "length_quotient", "length", "equal_local", "repro",
)
OPTIONS = ("seed", "window", "cap", "trials")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


class SessionError(ParseError):
    def __init__(self, message, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message, line=line)
        self.line = line


# --------------------------------------------------------------------------
# ideal expressions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Expr:
    op: str  # "name", "list", "^", "*", "+", ":", "&"
    args: tuple

    def names(self) -> set:
        if self.op == "name":
            return {self.args[0]}
        if self.op == "list":
            return set()
        out = set()
        for a in self.args:
            if isinstance(a, Expr):
                out |= a.names()
        return out

    def __str__(self):
        if self.op == "name":
            return self.args[0]
        if self.op == "list":
            return "[" + ", ".join(self.args) + "]"
        if self.op == "^":
            return f"{_wrap(self.args[0], '^')}^{self.args[1]}"
        return f"{_wrap(self.args[0], self.op)}{self.op}{_wrap(self.args[1], self.op, right=True)}"


_PREC = {"&": 1, "+": 2, ":": 3, "*": 4, "^": 5}


def _wrap(e: Expr, parent: str, right: bool = False) -> str:
    if e.op in ("name", "list"):
        return str(e)
    p, q = _PREC[e.op], _PREC[parent]
    if p < q or (right and p == q):
        return f"({e})"
    return str(e)


def _tokens(src: str):
    i = 0
    while i < len(src):
        c = src[i]
        if c.isspace():
            i += 1
        elif c == "[":
            depth, j = 0, i
            while j < len(src):
                depth += {"[": 1, "]": -1}.get(src[j], 0)
                if depth == 0:
                    break
                j += 1
            if depth:
                raise ParseError(f"unclosed '[' in {src!r}")
            yield ("list", src[i + 1:j])
            i = j + 1
        elif c in "^*+:&()":
            yield ("op", c)
            i += 1
        else:
            m = re.match(r"[A-Za-z_][A-Za-z0-9_]*|\d+", src[i:])
            if not m:
                raise ParseError(f"unexpected character {c!r} in {src!r}")
            yield ("num" if m.group().isdigit() else "name", m.group())
            i += len(m.group())


def split_list(body: str) -> list:
    parts = [p.strip() for p in body.split(",")]
    if parts == [""]:
        return []
    if any(not p for p in parts):
        raise ParseError(f"empty generator in [{body}]")
    return parts


def parse_expr(src: str) -> Expr:
    toks = list(_tokens(src))
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def binary(level):
        ops = [o for o, p in _PREC.items() if p == level]
        if level == 5:
            return power_()
        left = binary(level + 1)
        while peek() == ("op", ops[0]):
            take()
            left = Expr(ops[0], (left, binary(level + 1)))
        return left

    def power_():
        base = atom()
        while peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num":
                raise ParseError(f"exponent must be a natural number in {src!r}")
            base = Expr("^", (base, int(val)))
        return base

    def atom():
        kind, val = take()
        if kind == "name":
            return Expr("name", (val,))
        if kind == "list":
            return Expr("list", tuple(split_list(val)))
        if (kind, val) == ("op", "("):
            e = binary(1)
            if take() != ("op", ")"):
                raise ParseError(f"missing ')' in {src!r}")
            return e
        raise ParseError(f"unexpected {val!r} in {src!r}")

    if not toks:
        raise ParseError("empty ideal expression")
    e = binary(1)
    if pos != len(toks):
        raise ParseError(f"trailing input in {src!r}")
    return e


def evaluate(e: Expr, ctx: RingCtx, env: dict) -> IdealHandle:
    if e.op == "name":
        return env[e.args[0]]
    if e.op == "list":
        return IdealHandle.parse(ctx, e.args)
    if e.op == "^":
        return power(evaluate(e.args[0], ctx, env), e.args[1])
    a, b = (evaluate(x, ctx, env) for x in e.args)
    if e.op == "*":
        return a * b
    if e.op == "+":
        return a + b
    if e.op == ":":
        return colon(a, b)
    return intersect(a, b)


# --------------------------------------------------------------------------
# sessions
# --------------------------------------------------------------------------

@dataclass
class RingDecl:
    name: str
    characteristic: int
    var_names: tuple
    mod: tuple = ()

    def __str__(self):
        s = f"ring {self.name} = char {self.characteristic} vars {' '.join(self.var_names)}"
        if self.mod:
            s += " mod [" + ", ".join(self.mod) + "]"
        return s

    def ctx(self, characteristic: Optional[int] = None) -> RingCtx:
        p = self.characteristic if characteristic is None else characteristic
        return RingCtx.make(self.var_names, p, self.mod)


@dataclass
class Command:
    name: str
    args: tuple  # positional argument strings
    kwargs: dict
    line: int = 0

    def __str__(self):
        parts = [self.name, *self.args, *(f"{k}={v}" for k, v in sorted(self.kwargs.items()))]
        return " ".join(parts)


@dataclass
class Session:
    ring: Optional[RingDecl] = None
    ideals: dict = field(default_factory=dict)  # name -> Expr, in binding order
    options: dict = field(default_factory=dict)
    commands: list = field(default_factory=list)

    def __str__(self):
        lines = []
        if self.ring:
            lines.append(str(self.ring))
        lines += [f"ideal {n} = {e}" for n, e in self.ideals.items()]
        lines += [f"set {k} {v}" for k, v in sorted(self.options.items())]
        lines += [str(c) for c in self.commands]
        return "\n".join(lines) + "\n"

    def bind(self, ctx: RingCtx) -> dict:
        """Evaluate every ideal binding in ``ctx``."""
        env = {}
        for name, e in self.ideals.items():
            env[name] = evaluate(e, ctx, env)
        return env


def split_args(src: str) -> list:
    """Whitespace split that keeps bracketed lists and parentheses together."""
    out, cur, depth = [], [], 0
    for c in src:
        if c in "[(":
            depth += 1
        elif c in "])":
            depth -= 1
        if c.isspace() and depth == 0:
            if cur:
                out.append("".join(cur))
                cur = []
        else:
            cur.append(c)
    if depth:
        raise ParseError(f"unbalanced brackets in {src!r}")
    if cur:
        out.append("".join(cur))
    return out


_RING = re.compile(r"ring\s+(\w+)\s*=\s*char\s+(\d+)\s+vars\s+(.+?)(?:\s+mod\s+\[(.*)\])?\s*$")
_IDEAL = re.compile(r"ideal\s+(\w+)\s*=\s*(.+)$")


def _check_polys(decl: RingDecl, polys, lineno):
    ring = decl.ctx().ring
    for p in polys:
        try:
            ring.parse(p)
        except ParseError as exc:
            raise SessionError(str(exc), lineno) from None


def _check_expr(e: Expr, session: Session, lineno: int):
    for name in sorted(e.names()):
        if name not in session.ideals:
            raise SessionError(f"unbound ideal name {name!r}", lineno)
    stack = [e]
    while stack:
        cur = stack.pop()
        if cur.op == "list":
            _check_polys(session.ring, cur.args, lineno)
        elif cur.op not in ("name",):
            stack.extend(a for a in cur.args if isinstance(a, Expr))


def _is_expr_arg(cmd: str, i: int) -> bool:
    if cmd == "repro":
        return False
    if cmd == "audit":
        return i > 0
    if cmd == "superficial":
        return i > 0
    return True


def parse_session(src: str) -> Session:
    """Parse and validate a session; the first error carries its line number."""
    s = Session()
    for lineno, raw in enumerate(src.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head == "ring":
            if s.ring is not None:
                raise SessionError("a session declares exactly one ring", lineno)
            m = _RING.match(line)
            if not m:
                raise SessionError("expected 'ring NAME = char INT vars IDENT+ [mod [POLY, ...]]'", lineno)
            names = tuple(m.group(3).split())
            if len(set(names)) != len(names) or not all(_NAME.match(v) for v in names):
                raise SessionError("variables must be distinct identifiers", lineno)
            mod = tuple(split_list(m.group(4))) if m.group(4) is not None else ()
            try:
                s.ring = RingDecl(m.group(1), int(m.group(2)), names, mod)
                s.ring.ctx()
            except (ValueError, ParseError) as exc:
                raise SessionError(str(exc), lineno) from None
        elif head == "ideal":
            if s.ring is None:
                raise SessionError("ideal declared before the ring", lineno)
            m = _IDEAL.match(line)
            if not m:
                raise SessionError("expected 'ideal NAME = EXPR'", lineno)
            try:
                e = parse_expr(m.group(2))
            except ParseError as exc:
                raise SessionError(str(exc), lineno) from None
            _check_expr(e, s, lineno)
            s.ideals.pop(m.group(1), None)
            s.ideals[m.group(1)] = e
        elif head == "set":
            parts = line.split()
            if len(parts) != 3 or parts[1] not in OPTIONS or not re.fullmatch(r"-?\d+", parts[2]):
                raise SessionError(f"expected 'set {{{'|'.join(OPTIONS)}}} INT'", lineno)
            s.options[parts[1]] = int(parts[2])
        elif head in COMMANDS:
            try:
                toks = split_args(line)[1:]
            except ParseError as exc:
                raise SessionError(str(exc), lineno) from None
            args, kwargs = [], {}
            for t in toks:
                if "=" in t and not t.startswith("["):
                    k, v = t.split("=", 1)
                    kwargs[k] = v
                else:
                    args.append(t)
            cmd = Command(head, tuple(args), kwargs, lineno)
            if head != "repro":
                if s.ring is None:
                    raise SessionError(f"command {head!r} needs a ring", lineno)
                for i, a in enumerate(args):
                    try:
                        if _is_expr_arg(head, i):
                            _check_expr(parse_expr(a), s, lineno)
                        elif head == "superficial":
                            _check_polys(s.ring, [a], lineno)
                    except ParseError as exc:
                        if isinstance(exc, SessionError):
                            raise
                        raise SessionError(str(exc), lineno) from None
            s.commands.append(cmd)
        else:
            raise SessionError(f"unknown statement {head!r}", lineno)
    return s
