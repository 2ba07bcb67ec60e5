"""The problem-file format.

One directive per line; ``#`` starts a comment::

    field rational                  # or: field prime 3
    group rank=1 torsion=3          # D(Z + Z/3)
    subgroup [3,0]                  # C = D(Gamma / <relations>); omit for C = G
    variables x:[1,0] y:[-1,0]
    ideal x*y - 1                   # one generator per line, repeatable
    query fixedlocus fields=3,4
    query smith weights=[0],[1] window=0..4,0..2

Characters are written ``[a,b,...]`` (a bare integer is accepted when the
group has one generator).  Query parameters are ``key=value`` tokens; a bare
key is a boolean flag.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from ..errors import InputError, NonHomogeneousIdeal, ParseError
from ..fixedloc import EquivariantAffineScheme
from ..lattice import CharacterLattice, SubgroupPresentation, quotient_lattice
from ..polyalg import GF, QQ, PolyRing, parse_poly
from ..polyalg.fields import _is_prime

QUERY_KEYS = {
    "fixedlocus": {"fields": "ints", "degree": "int"},
    "section": {"minimize": "flag"},
    "euler": {"characters": "chars"},
    "bott": {"weights": "chars", "power": "int"},
    "concentration": {"weights": "chars"},
    "smith": {"weights": "chars", "window": "window", "depth": "int"},
}
REQUIRED = {"euler": ("characters",), "bott": ("weights",), "concentration": ("weights",)}
SCHEME_QUERIES = ("fixedlocus", "section")

_NAME = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*$")
_CHAR = re.compile(r"\[([^\]]*)\]|(-?\d+)")


@dataclass(frozen=True)
class Query:
    kind: str
    params: tuple = ()
    line: int = dc_field(default=0, compare=False)

    def get(self, key, default=None):
        for k, v in self.params:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class ProblemFile:
    characteristic: int = 0
    rank: int = 0
    torsion: tuple = ()
    subgroup: tuple | None = None
    variables: tuple = ()
    ideal: tuple = ()
    queries: tuple = ()

    @property
    def lattice(self) -> CharacterLattice:
        return CharacterLattice(self.rank, self.torsion)

    @property
    def field(self):
        return GF(self.characteristic) if self.characteristic else QQ

    def subgroup_presentation(self) -> SubgroupPresentation:
        G = self.lattice
        if self.subgroup is None:
            return SubgroupPresentation.whole(G)
        return quotient_lattice(G, [G(c) for c in self.subgroup])

    def scheme(self) -> EquivariantAffineScheme:
        G = self.lattice
        names = [n for n, _ in self.variables]
        weights = [G(c) for _, c in self.variables]
        return EquivariantAffineScheme.build(self.field, names, weights, self.ideal)

    def characters(self, coords):
        G = self.lattice
        return [G(c) for c in coords]


class _Line:
    """A directive line split into tokens with their 1-based columns."""

    def __init__(self, text: str, number: int):
        self.number = number
        self.tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", text)]

    def error(self, msg, column=None):
        col = column if column is not None else (self.tokens[0][1] if self.tokens else 1)
        return ParseError(msg, self.number, col)


def _strip_comment(text: str) -> str:
    i = text.find("#")
    return text if i < 0 else text[:i]


def _int(tok, col, line: _Line, what="integer") -> int:
    if not re.fullmatch(r"-?\d+", tok):
        raise line.error(f"expected {what}, got {tok!r}", col)
    return int(tok)


def _characters(text: str, col: int, line: _Line, ngens: int) -> tuple:
    out = []
    pos = 0
    while pos < len(text):
        m = _CHAR.match(text, pos)
        if not m:
            raise line.error(f"expected a character like [1,0], got {text[pos:]!r}", col + pos)
        if m.group(1) is not None:
            body = m.group(1).strip()
            parts = [s.strip() for s in body.split(",")] if body else []
            for s in parts:
                if not re.fullmatch(r"-?\d+", s):
                    raise line.error(f"bad character entry {s!r}", col + pos)
            coords = tuple(int(s) for s in parts)
        else:
            coords = (int(m.group(2)),)
        if len(coords) != ngens:
            raise line.error(
                f"weight arity mismatch: character {m.group()} has {len(coords)} entries, the group has {ngens} generators",
                col + pos,
            )
        out.append(coords)
        pos = m.end()
        if pos < len(text):
            if text[pos] != ",":
                raise line.error("expected ',' between characters", col + pos)
            pos += 1
            if pos == len(text):
                raise line.error("trailing ','", col + pos)
    return tuple(out)


def _window(text: str, col: int, line: _Line) -> tuple:
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+),(-?\d+)\.\.(-?\d+)", text)
    if not m:
        raise line.error(f"expected a window a0..a1,b0..b1, got {text!r}", col)
    a0, a1, b0, b1 = map(int, m.groups())
    if a0 > a1 or b0 > b1:
        raise line.error("empty window", col)
    return ((a0, a1), (b0, b1))


def parse_window(text: str) -> tuple:
    return _window(text, 1, _Line(text, 1))


def parse_problem(text: str) -> ProblemFile:
    """Parse and validate a problem file; every failure is a :class:`ParseError` or an input error with a position."""
    if not isinstance(text, str):
        raise InputError("problem text must be a string")
    seen: dict[str, int] = {}
    characteristic = None
    rank, torsion = 0, ()
    subgroup = None
    variables: list = []
    ideal: list = []
    queries: list = []
    pending_chars: list = []  # (coords-text, col, line) parsed once the group is known
    raw_ideal: list = []
    raw_queries: list = []
    for number, raw in enumerate(text.splitlines(), 1):
        line = _Line(_strip_comment(raw), number)
        if not line.tokens:
            continue
        key, kcol = line.tokens[0]
        args = line.tokens[1:]
        if key in ("field", "group", "subgroup", "variables"):
            if key in seen:
                raise line.error(f"duplicate '{key}' directive (first on line {seen[key]})", kcol)
            seen[key] = number
        if key == "field":
            if len(args) == 1 and args[0][0] == "rational":
                characteristic = 0
            elif len(args) == 2 and args[0][0] == "prime":
                p = _int(args[1][0], args[1][1], line, "a prime")
                if p < 2 or not _is_prime(p):
                    raise line.error(f"{p} is not prime", args[1][1])
                characteristic = p
            else:
                raise line.error("expected 'field rational' or 'field prime <p>'", kcol)
        elif key == "group":
            for tok, col in args:
                if tok.startswith("rank="):
                    rank = _int(tok[5:], col + 5, line)
                    if rank < 0:
                        raise line.error("rank must be non-negative", col + 5)
                elif tok.startswith("torsion="):
                    vals = tok[8:].split(",")
                    torsion = tuple(_int(v, col + 8, line) for v in vals)
                    if any(m < 2 for m in torsion):
                        raise line.error("torsion orders must be at least 2", col + 8)
                else:
                    raise line.error(f"unknown group field {tok!r} (expected rank= or torsion=)", col)
        elif key == "subgroup":
            if not args:
                raise line.error("subgroup needs at least one relation character", kcol)
            pending_chars.append(("subgroup", " ".join(t for t, _ in args).replace(" ", ""), args[0][1], line))
        elif key == "variables":
            if not args:
                raise line.error("no variables declared", kcol)
            for tok, col in args:
                name, sep, ch = tok.partition(":")
                if not sep or not ch:
                    raise line.error(f"expected name:[weight], got {tok!r}", col)
                if not _NAME.match(name):
                    raise line.error(f"bad variable name {name!r}", col)
                if any(name == n for n, *_ in variables):
                    raise line.error(f"variable {name!r} declared twice", col)
                variables.append((name, ch, col + len(name) + 1, line))
        elif key == "ideal":
            if not args:
                raise line.error("empty ideal generator", kcol)
            start = args[0][1]
            body = _strip_comment(raw)[start - 1 :].rstrip()
            raw_ideal.append((body, start, line))
        elif key == "query":
            if not args:
                raise line.error("query needs a kind", kcol)
            kind, kc = args[0]
            if kind not in QUERY_KEYS:
                raise line.error(f"unknown query {kind!r}; expected one of {', '.join(QUERY_KEYS)}", kc)
            raw_queries.append((kind, args[1:], line))
        else:
            raise line.error(f"unknown directive {key!r}", kcol)

    if characteristic is None:
        if torsion:
            characteristic = torsion[0] if _is_prime(torsion[0]) else 0
        else:
            characteristic = 0
    G = CharacterLattice(rank, torsion)
    ngens = G.ngens
    for _, body, col, line in pending_chars:
        subgroup = _characters(body, col, line, ngens)
    vars_out = []
    for name, ch, col, line in variables:
        (coords,) = _characters(ch, col, line, ngens) or ((),)
        vars_out.append((name, tuple(G(coords).coords)))
    subgroup = tuple(tuple(G(c).coords) for c in subgroup) if subgroup is not None else None

    field = GF(characteristic) if characteristic else QQ
    if raw_ideal and not vars_out:
        raise raw_ideal[0][2].error("ideal given before any variables were declared")
    ring = PolyRing(field, [n for n, _ in vars_out]) if vars_out else None
    polys = []
    for body, start, line in raw_ideal:
        f = parse_poly(body, ring, line.number, start)
        polys.append((f, line, start))
        ideal.append(str(f))

    for kind, args, line in raw_queries:
        params = []
        spec = QUERY_KEYS[kind]
        for tok, col in args:
            k, sep, val = tok.partition("=")
            if k not in spec:
                raise line.error(f"unknown parameter {k!r} for query {kind}", col)
            if any(k == kk for kk, _ in params):
                raise line.error(f"parameter {k!r} given twice", col)
            typ = spec[k]
            vcol = col + len(k) + 1
            if typ == "flag":
                if sep and val not in ("true", "false"):
                    raise line.error(f"{k} expects true or false", vcol)
                params.append((k, val != "false"))
                continue
            if not sep or not val:
                raise line.error(f"parameter {k!r} needs a value", col)
            if typ == "int":
                params.append((k, _int(val, vcol, line)))
            elif typ == "ints":
                params.append((k, tuple(_int(v, vcol, line) for v in val.split(","))))
            elif typ == "chars":
                params.append((k, tuple(tuple(G(c).coords) for c in _characters(val, vcol, line, ngens))))
            elif typ == "window":
                params.append((k, _window(val, vcol, line)))
        for req in REQUIRED.get(kind, ()):
            if not any(k == req for k, _ in params):
                raise line.error(f"query {kind} needs {req}=...", line.tokens[1][1])
        if kind in SCHEME_QUERIES and not vars_out:
            raise line.error(f"query {kind} needs declared variables", line.tokens[1][1])
        queries.append(Query(kind, tuple(params), line.number))

    problem = ProblemFile(characteristic, rank, torsion, subgroup, tuple(vars_out), tuple(ideal), tuple(queries))
    if vars_out:
        try:
            problem.scheme()
        except NonHomogeneousIdeal as e:
            for f, line, start in polys:
                if f == e.generator:
                    raise ParseError(str(e), line.number, start) from None
            raise
    return problem


def _fmt_char(c) -> str:
    return "[" + ",".join(str(a) for a in c) + "]"


def _fmt_value(typ, v) -> str:
    if typ == "ints":
        return ",".join(str(a) for a in v)
    if typ == "chars":
        return ",".join(_fmt_char(c) for c in v)
    if typ == "window":
        (a0, a1), (b0, b1) = v
        return f"{a0}..{a1},{b0}..{b1}"
    return str(v)


def format_problem(problem: ProblemFile) -> str:
    """Canonical text of a problem; parsing it gives back an equal structure."""
    lines = ["field rational" if not problem.characteristic else f"field prime {problem.characteristic}"]
    g = ["group"]
    if problem.rank:
        g.append(f"rank={problem.rank}")
    if problem.torsion:
        g.append("torsion=" + ",".join(str(m) for m in problem.torsion))
    lines.append(" ".join(g))
    if problem.subgroup is not None:
        lines.append("subgroup " + ",".join(_fmt_char(c) for c in problem.subgroup))
    if problem.variables:
        lines.append("variables " + " ".join(f"{n}:{_fmt_char(c)}" for n, c in problem.variables))
    for f in problem.ideal:
        lines.append(f"ideal {f}")
    for q in problem.queries:
        parts = ["query", q.kind]
        spec = QUERY_KEYS[q.kind]
        for k, v in q.params:
            if spec[k] == "flag":
                parts.append(k if v else f"{k}=false")
            else:
                parts.append(f"{k}={_fmt_value(spec[k], v)}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"
