"""Plain-text minion descriptions: parsing, printing and building.

A file is a sequence of directive lines; ``#`` starts a comment.

    name E2
    kind presented
    gen f 2
    rel f (0 0|2) = f (1 1|2)

Function minions use ``domain a b``, ``mode full|generated|pol``, ``elem <arity> <table>``,
``pair <Y> R=<t;t;...> S=<t;t;...>`` and optionally ``cutoff <n>``.
Derived minions use ``expr product(X,Y)``, ``sum``, ``exp(N,M)``, ``sub(L,M)`` or ``restrict(M,i)``,
where operands name other spec files or catalog entries. ``kind catalog`` takes ``catalog <entry>``,
falling back to ``name`` when the entry is omitted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .base import Minion
from .catalog import make
from .construct import ExponentialMinion, ProductMinion, SumMinion, restrict_unary, subtract
from .funmin import FunctionMinion, RelationPair, pol
from .minors import MinorOp, parse_minor
from .presented import Presentation, PresentedMinion

KINDS = ("presented", "function", "derived", "catalog")
OPERATORS = {"product": 2, "sum": 2, "exp": 2, "sub": 2, "restrict": 2}


class SpecSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line, self.column = line, column


@dataclass(frozen=True)
class Expr:
    """An operator applied to operands, or a leaf naming a file or catalog entry."""

    head: str
    args: tuple = ()

    @property
    def is_leaf(self) -> bool:
        return self.head not in OPERATORS

    def text(self) -> str:
        if self.is_leaf:
            return self.head
        return f"{self.head}(" + ",".join(a.text() if isinstance(a, Expr) else str(a) for a in self.args) + ")"


@dataclass(frozen=True)
class SpecFile:
    name: str
    kind: str
    generators: tuple[tuple[str, int], ...] = ()
    relations: tuple[tuple[str, MinorOp, str, MinorOp], ...] = ()
    domain: tuple[int, int] | None = None
    mode: str | None = None
    elems: tuple[tuple[int, tuple[int, ...]], ...] = ()
    pairs: tuple[RelationPair, ...] = ()
    cutoff: int | None = None
    expr: Expr | None = None
    catalog: str | None = None
    source: str | None = field(default=None, compare=False)

    def text(self) -> str:
        out = [f"name {self.name}", f"kind {self.kind}"]
        if self.kind == "presented":
            out += [f"gen {s} {a}" for s, a in self.generators]
            out += [f"rel {s} {_minor(al)} = {t} {_minor(be)}" for s, al, t, be in self.relations]
        elif self.kind == "function":
            out.append(f"domain {self.domain[0]} {self.domain[1]}")
            out.append(f"mode {self.mode}")
            if self.cutoff is not None:
                out.append(f"cutoff {self.cutoff}")
            sep = "" if self.domain[1] <= 10 else ","
            out += [f"elem {n} {sep.join(map(str, t))}" for n, t in self.elems]
            out += [f"pair {p.text()}" for p in self.pairs]
        elif self.kind == "derived":
            out.append(f"expr {self.expr.text()}")
        elif self.kind == "catalog":
            out.append(f"catalog {self.catalog}")
        return "\n".join(out) + "\n"

    def presentation(self) -> Presentation:
        return Presentation(self.generators, tuple(((s, al), (t, be)) for s, al, t, be in self.relations))


def _minor(op: MinorOp) -> str:
    return "(" + " ".join(map(str, op.values)) + "|" + str(op.codomain) + ")"


_LINE = re.compile(r"^(\s*)(\S+)\s*(.*?)\s*$")
_REL = re.compile(r"^(\w+)\s*(\([^)]*\))\s*=\s*(\w+)\s*(\([^)]*\))$")
_SYMBOL = re.compile(r"^[A-Za-z_]\w*$")


def parse(text: str, source: str | None = None) -> SpecFile:
    fields: dict = {"generators": [], "relations": [], "elems": [], "pairs": []}
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _LINE.match(line)
        indent, key, rest = m.group(1), m.group(2), m.group(3)
        col = len(indent) + 1
        rcol = line.find(rest, len(indent) + len(key)) + 1 if rest else len(line) + 1

        def fail(msg: str, at: int = rcol) -> None:
            raise SpecSyntaxError(msg, lineno, at)

        single = ("name", "kind", "domain", "mode", "cutoff", "expr", "catalog")
        if key in single:
            if key in seen:
                fail(f"repeated '{key}' (first on line {seen[key]})", col)
            seen[key] = lineno
            if not rest:
                fail(f"'{key}' needs a value")
        if key == "name":
            fields["name"] = rest
        elif key == "kind":
            if rest not in KINDS:
                fail(f"unknown kind {rest!r}; expected one of {', '.join(KINDS)}")
            fields["kind"] = rest
        elif key == "gen":
            parts = rest.split()
            if len(parts) != 2 or not _SYMBOL.match(parts[0]) or not parts[1].isdigit() or int(parts[1]) < 1:
                fail("expected 'gen <symbol> <positive arity>'")
            fields["generators"].append((parts[0], int(parts[1])))
        elif key == "rel":
            r = _REL.match(rest)
            if not r:
                fail("expected 'rel <symbol> (a b|k) = <symbol> (a b|k)'")
            try:
                al, be = parse_minor(r.group(2)), parse_minor(r.group(4))
            except ValueError as e:
                fail(str(e))
            fields["relations"].append((r.group(1), al, r.group(3), be, lineno, rcol))
        elif key == "domain":
            parts = rest.split()
            if len(parts) != 2 or not all(p.isdigit() and int(p) > 0 for p in parts):
                fail("expected 'domain <a> <b>' with positive sizes")
            fields["domain"] = (int(parts[0]), int(parts[1]))
        elif key == "mode":
            if rest not in ("full", "generated", "pol"):
                fail(f"unknown mode {rest!r}; expected full, generated or pol")
            fields["mode"] = rest
        elif key == "cutoff":
            if not rest.isdigit() or int(rest) < 1:
                fail("cutoff must be a positive integer")
            fields["cutoff"] = int(rest)
        elif key == "elem":
            parts = rest.split()
            if len(parts) != 2 or not parts[0].isdigit():
                fail("expected 'elem <arity> <table>'")
            digits = parts[1].split(",") if "," in parts[1] else list(parts[1])
            if not all(d.isdigit() for d in digits):
                fail("table entries must be digits")
            fields["elems"].append((int(parts[0]), tuple(int(d) for d in digits), lineno, rcol))
        elif key == "pair":
            fields["pairs"].append((_parse_pair_text(rest, lambda msg: fail(msg)), lineno, rcol))
        elif key == "catalog":
            try:
                make(rest)
            except ValueError as e:
                fail(str(e))
            fields["catalog"] = rest.replace(" ", "")
        elif key == "expr":
            fields["expr"] = _parse_expr(rest, lambda msg, off: fail(msg, rcol + off))
        else:
            fail(f"unknown directive {key!r}", col)
    return _assemble(fields, seen, source)


def _parse_pair_text(rest: str, fail: Callable[[str], None]):
    m = re.match(r"^(\d+)\s+R=(\S*)\s+S=(\S*)$", rest)
    if not m:
        fail("expected 'pair <Y> R=<t;t;...> S=<t;t;...>'")

    def tuples_of(s: str) -> list[tuple[int, ...]]:
        if not s:
            return []
        out = []
        for t in s.split(";"):
            if not all(x.isdigit() for x in t.split(",")):
                fail(f"bad tuple {t!r}")
            out.append(tuple(int(x) for x in t.split(",")))
        return out

    return int(m.group(1)), tuples_of(m.group(2)), tuples_of(m.group(3))


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][\w.\-]*)|(\d+)|([(),]))")


def _parse_expr(text: str, fail: Callable[[str, int], None]) -> Expr:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            fail(f"unexpected character {text[pos]!r}", pos)
        toks.append((m.group(1) or m.group(2) or m.group(3), m.start(m.lastindex), m.lastindex))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, len(text), 0)

    def take(value=None):
        nonlocal i
        tok = peek()
        if tok[0] is None or (value is not None and tok[0] != value):
            fail(f"expected {value or 'a name'}", tok[1])
        i += 1
        return tok

    def node() -> Expr:
        name, at, kind = take()
        if kind != 1:
            fail("expected a name", at)
        if name in OPERATORS:
            take("(")
            a = node()
            take(",")
            if name == "restrict":
                idx, at2, k2 = take()
                if k2 != 2:
                    fail("restrict takes a unary index", at2)
                b = int(idx)
            else:
                b = node()
            take(")")
            return Expr(name, (a, b))
        if peek()[0] == "(":
            # catalog parameters such as KM(3,4)
            take("(")
            nums = [take()[0]]
            while peek()[0] == ",":
                take(",")
                nums.append(take()[0])
            take(")")
            if not all(n.isdigit() for n in nums):
                fail("catalog parameters must be integers", at)
            name = f"{name}({','.join(nums)})"
        return Expr(name)

    e = node()
    if i != len(toks):
        fail("trailing input", toks[i][1])
    return e


def _assemble(fields: dict, seen: dict[str, int], source: str | None) -> SpecFile:
    def need(key: str) -> None:
        if key not in fields:
            raise SpecSyntaxError(f"missing '{key}'", max(seen.values(), default=1), 1)

    need("name")
    need("kind")
    kind = fields["kind"]
    allowed = {
        "presented": {"generators", "relations"},
        "function": {"domain", "mode", "cutoff", "elems", "pairs"},
        "derived": {"expr"},
        "catalog": {"catalog"},
    }[kind]
    for key in ("domain", "mode", "cutoff", "expr", "catalog"):
        if key in fields and key not in allowed:
            raise SpecSyntaxError(f"'{key}' does not belong to kind {kind}", seen[key], 1)
    for key in ("generators", "relations", "elems", "pairs"):
        if fields[key] and key not in allowed:
            raise SpecSyntaxError(f"{key} do not belong to kind {kind}", 1, 1)

    if kind == "presented":
        gens = tuple(fields["generators"])
        try:
            Presentation(gens)
        except ValueError as e:
            raise SpecSyntaxError(str(e), seen["kind"], 1) from None
        for s, al, t, be, ln, c in fields["relations"]:
            try:
                Presentation(gens, (((s, al), (t, be)),))
            except ValueError as e:
                raise SpecSyntaxError(str(e), ln, c) from None
        rels = tuple(r[:4] for r in fields["relations"])
        return SpecFile(fields["name"], kind, generators=tuple(fields["generators"]), relations=rels, source=source)
    if kind == "function":
        need("domain")
        need("mode")
        a, b = fields["domain"]
        elems = []
        for n, t, ln, c in fields["elems"]:
            if len(t) != a ** n:
                raise SpecSyntaxError(f"an arity-{n} table over {a} has {a ** n} entries, got {len(t)}", ln, c)
            if any(v >= b for v in t):
                raise SpecSyntaxError(f"table value {max(t)} outside the codomain {b}", ln, c)
            elems.append((n, t))
        pairs = []
        for (y, R, S), ln, c in fields["pairs"]:
            try:
                pairs.append(RelationPair.of(R, S, a, b, y))
            except ValueError as e:
                raise SpecSyntaxError(str(e), ln, c) from None
        if fields["mode"] == "generated" and not elems:
            raise SpecSyntaxError("generated mode needs at least one elem", seen["mode"], 1)
        return SpecFile(
            fields["name"], kind, domain=(a, b), mode=fields["mode"], elems=tuple(elems),
            pairs=tuple(pairs), cutoff=fields.get("cutoff"), source=source,
        )
    if kind == "derived":
        need("expr")
        return SpecFile(fields["name"], kind, expr=fields["expr"], source=source)
    return SpecFile(fields["name"], kind, catalog=fields.get("catalog", fields["name"]), source=source)


def load(path: str | Path) -> SpecFile:
    p = Path(path)
    return parse(p.read_text(), str(p))


# building


class Resolver:
    """Turns operand names into minions: spec files next to the referring file, then the catalog."""

    def __init__(self, base: Path | None = None, bound: int | None = None) -> None:
        self.base = base or Path(".")
        self.bound = bound
        self._cache: dict[str, Minion] = {}

    def __call__(self, name: str) -> Minion:
        if name in self._cache:
            return self._cache[name]
        for cand in (self.base / name, self.base / f"{name}.spec"):
            if cand.is_file():
                M = build(load(cand), Resolver(cand.parent, self.bound))
                break
        else:
            try:
                M = make(name.removesuffix(".spec"))
            except ValueError:
                raise ValueError(f"{name!r} is neither a spec file nor a catalog name") from None
        self._cache[name] = M
        return M


def build(spec: SpecFile, resolve: Callable[[str], Minion] | None = None) -> Minion:
    if resolve is None:
        resolve = Resolver(Path(spec.source).parent if spec.source else None)
    if spec.kind == "presented":
        return PresentedMinion(spec.presentation(), spec.name)
    if spec.kind == "catalog":
        M = make(spec.catalog)
        M.name = spec.name
        return M
    if spec.kind == "function":
        a, b = spec.domain
        if spec.mode == "pol":
            return pol(spec.pairs, a, b, max_arity=spec.cutoff, name=spec.name)
        if spec.mode == "generated":
            return FunctionMinion(a, b, "generated", seeds=[(n, bytes(t)) for n, t in spec.elems], cutoff=spec.cutoff, name=spec.name)
        return FunctionMinion(a, b, cutoff=spec.cutoff, name=spec.name)
    M = _evaluate(spec.expr, resolve)
    M.name = spec.name
    return M


def _evaluate(e: Expr, resolve: Callable[[str], Minion]) -> Minion:
    if e.is_leaf:
        return resolve(e.head)
    x = _evaluate(e.args[0], resolve)
    if e.head == "restrict":
        units = x.elements(1)
        if not 0 <= e.args[1] < len(units):
            raise ValueError(f"{x.name} has {len(units)} unary elements; index {e.args[1]} is out of range")
        return restrict_unary(x, units[e.args[1]])
    y = _evaluate(e.args[1], resolve)
    if e.head == "product":
        return ProductMinion(x, y)
    if e.head == "sum":
        return SumMinion(x, y)
    if e.head == "exp":
        return ExponentialMinion(x, y)
    return subtract(x, y, bound=getattr(resolve, "bound", None))


def open_minion(ref: str, bound: int | None = None) -> Minion:
    """A path to a spec file, a catalog name, or an expression such as ``sum(KM(3),KM(4))``."""
    p = Path(ref)
    if p.is_file():
        return build(load(p), Resolver(p.parent, bound))
    resolve = Resolver(Path("."), bound)
    head = ref.split("(", 1)[0].strip()
    if head in OPERATORS:

        def fail(msg: str, col: int) -> None:
            raise SpecSyntaxError(msg, 1, col + 1)

        M = _evaluate(_parse_expr(ref, fail), resolve)
        M.name = ref.replace(" ", "")
        return M
    return resolve(ref)


__all__ = ["Expr", "Resolver", "SpecFile", "SpecSyntaxError", "build", "load", "open_minion", "parse"]
