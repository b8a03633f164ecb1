"""Command line front end: ``minionlab <command> ...``.

Operands are spec files, catalog names such as ``KM(3,4)``, or expressions
such as ``sum(P,CONST)``. A missing ``X.spec`` falls back to catalog ``X``.
Exit codes: 0 ok, 1 property failure, 2 usage, 3 budget exhausted or verdict unknown.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, replace

import click

from . import acceptance
from .analysis import constants_per_arity, dichotomy_probe, essential_arity, growth, is_n_representable
from .base import LIMITS, CutoffError, Minion, ResourceError, UnsupportedError, limits
from .catalog import named_conditions
from .construct import ExponentialMinion, SumMinion, UnknownVerdictError, subtract
from .homsearch import Verdict, core, count_homs, decide, hom_presented, order_compare, satisfies_pp
from .presented import PPSyntaxError, pp_parse
from .specfile import SpecSyntaxError, open_minion

SCHEMA = 1
EXIT_OK, EXIT_PROPERTY, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass(frozen=True)
class Reporter:
    as_json: bool
    max_arity: int | None
    budget: int
    seed: int

    def arity(self, default: int, M: Minion | None = None) -> int:
        n = self.max_arity if self.max_arity is not None else default
        if M is not None and M.cutoff is not None and self.max_arity is None:
            n = min(n, M.cutoff)
        return n

    def emit(self, command: str, query: dict, result: dict, text: list[str], code: int = EXIT_OK) -> None:
        if self.as_json:
            doc = {
                "schema": SCHEMA,
                "command": command,
                "query": query,
                "result": result,
                "limits": {"element_budget": self.budget, "max_arity": self.max_arity},
            }
            click.echo(json.dumps(doc, sort_keys=True, indent=2))
        else:
            for line in text:
                click.echo(line)
        sys.exit(code)


def _load(ref: str) -> Minion:
    try:
        return open_minion(ref)
    except SpecSyntaxError as e:
        raise click.UsageError(f"{ref}: {e}") from None
    except (ValueError, OSError) as e:
        raise click.UsageError(str(e)) from None


def _images(data) -> dict | None:
    if isinstance(data, dict) and data and all(isinstance(k, str) for k in data):
        return {k: data[k].owner.describe(data[k]) for k in sorted(data)}
    return None


def _verdict(v: Verdict) -> dict:
    out = v.as_dict()
    out["symbol"] = v.symbol
    if v.witness is not None:
        out["witness"] = {"kind": v.witness.kind}
        gens = _images(v.witness.data)
        if gens is not None:
            out["witness"]["generators"] = gens
    return out


def _code(*vs: Verdict) -> int:
    return EXIT_BUDGET if any(v.symbol == "?" for v in vs) else EXIT_OK


def local_options(fn):
    """Accept --json/--text and --max-arity after the command name too."""
    fn = click.option("--json/--text", "as_json", default=None, help="Output format; overrides the global flag.")(fn)
    fn = click.option("--max-arity", "--n", "local_arity", type=click.IntRange(1), default=None, help="Arity horizon; overrides the global flag.")(fn)
    return click.pass_context(fn)


def _reporter(ctx: click.Context, as_json: bool | None, local_arity: int | None) -> Reporter:
    r = ctx.obj
    if as_json is not None:
        r = replace(r, as_json=as_json)
    if local_arity is not None:
        r = replace(r, max_arity=local_arity)
    return r


class _Group(click.Group):
    """Budget exhaustion and unknown verdicts exit with code 3."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except (ResourceError, CutoffError, UnknownVerdictError) as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_BUDGET)


@click.group(cls=_Group)
@click.option("--max-arity", type=click.IntRange(1), default=None, help="Arity horizon for enumeration and bounded search.")
@click.option("--element-budget", type=click.IntRange(1), default=LIMITS.element_budget, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for randomized suites.")
@click.option("--json/--text", "as_json", default=True, show_default=True)
@click.pass_context
def main(ctx: click.Context, max_arity: int | None, element_budget: int, seed: int, as_json: bool) -> None:
    """Finite computations with minions."""
    ctx.with_resource(limits(element_budget=element_budget))
    ctx.obj = Reporter(as_json, max_arity, element_budget, seed)


@main.command()
@click.argument("spec")
@local_options
def info(ctx, spec: str, as_json, local_arity) -> None:
    """Growth, essential arity, representability and constants."""
    r = _reporter(ctx, as_json, local_arity)
    M = _load(spec)
    N = r.arity(4, M)
    prof = growth(M, N)
    try:
        ess = essential_arity(M)
    except UnsupportedError:
        ess = None
    rep, w = is_n_representable(M, 2, max_arity=None if ess is not None else N)
    result = {
        "name": M.name,
        "alpha": prof.alpha,
        "gamma": prof.gamma,
        "bound": N,
        "essential_arity": ess,
        "constants": constants_per_arity(M, N),
        "representable": {"n": 2, "holds": rep, "k": w.k if w else None, "exact": ess is not None},
        "classification": prof.classification,
    }
    text = [
        f"{M.name}",
        f"  alpha (n = 0 constants, n <= {N}): {prof.alpha}",
        f"  gamma: {prof.gamma}",
        f"  essential arity: {ess if ess is not None else 'unknown'}",
        f"  constants per arity: {result['constants']}",
        f"  2-representable: {rep}" + (f" into O(2,{w.k})" if w else ""),
        f"  {prof.classification}",
    ]
    r.emit("info", {"spec": spec, "max_arity": N}, result, text)


@main.command("growth")
@click.argument("spec")
@local_options
def growth_cmd(ctx, spec: str, as_json, local_arity) -> None:
    """Growth sequences and the subexponential/exponential probe."""
    r = _reporter(ctx, as_json, local_arity)
    M = _load(spec)
    N = r.arity(6, M)
    probe = dichotomy_probe(M, N)
    probe["bound"] = N
    text = [f"{M.name}: alpha {probe['alpha']}", f"  gamma {probe['gamma']}", f"  {probe['classification']}"]
    r.emit("growth", {"spec": spec, "max_arity": N}, probe, text)


@main.command()
@click.argument("source")
@click.argument("target")
@click.option("--bound", type=click.IntRange(1), default=None, help="Arity bound for truncated search.")
@click.option("--enumerate", "enum", is_flag=True, help="Count homomorphisms and list generator images.")
@click.option("--limit", type=click.IntRange(1), default=20, show_default=True, help="Witnesses listed with --enumerate.")
@local_options
def hom(ctx, source: str, target: str, bound, enum: bool, limit: int, as_json, local_arity) -> None:
    """Is there a homomorphism SOURCE -> TARGET?"""
    r = _reporter(ctx, as_json, local_arity)
    M, N = _load(source), _load(target)
    bound = bound if bound is not None else r.max_arity
    query = {"source": source, "target": target, "bound": bound, "enumerate": enum}
    if not enum:
        v = decide(M, N, bound)
        r.emit("hom", query, _verdict(v), [f"{M.name} -> {N.name}: {v.symbol} ({v.method})"], _code(v))
    count, exact = count_homs(M, N, bound)
    result = {"count": count, "exact": exact}
    if not exact:
        result["bound"] = bound
    text = [f"{M.name} -> {N.name}: {count} homomorphisms" + ("" if exact else " (truncated search)")]
    if M.presentation() is not None:
        rows = [_images(h.data) or {} for h in hom_presented(M, N, enumerate=True, limit=limit)]
        result["witnesses"] = rows
        text += ["  " + ", ".join(f"{k} -> {v}" for k, v in row.items()) for row in rows]
    r.emit("hom", query, result, text, EXIT_OK if exact else EXIT_BUDGET)


@main.command()
@click.argument("left")
@click.argument("right")
@local_options
def equiv(ctx, left: str, right: str, as_json, local_arity) -> None:
    """Homomorphisms in both directions."""
    r = _reporter(ctx, as_json, local_arity)
    M, N = _load(left), _load(right)
    a, b = decide(M, N, r.max_arity), decide(N, M, r.max_arity)
    both = "yes" if a.symbol == b.symbol == "yes" else ("no" if "no" in (a.symbol, b.symbol) else "?")
    result = {"forward": _verdict(a), "backward": _verdict(b), "equivalent": both}
    text = [f"{M.name} -> {N.name}: {a.symbol}", f"{N.name} -> {M.name}: {b.symbol}", f"equivalent: {both}"]
    r.emit("equiv", {"left": left, "right": right}, result, text, EXIT_BUDGET if both == "?" else EXIT_OK)


@main.command("core")
@click.argument("spec")
@local_options
def core_cmd(ctx, spec: str, as_json, local_arity) -> None:
    """The core, listed to the arity horizon."""
    r = _reporter(ctx, as_json, local_arity)
    M = _load(spec)
    res = core(M, r.max_arity)
    C = res.core
    N = r.arity(2, C)
    elems = {str(n): [C.describe(f) for f in C.elements(n)] for n in range(1, N + 1)}
    result = {
        "name": C.name,
        "sizes": [C.size(n) for n in range(1, N + 1)],
        "elements": elems,
        "endomorphisms": len(res.monoid),
        "exact": res.exact,
        "bound": res.monoid.bound,
    }
    text = [f"{C.name}: sizes {result['sizes']} ({len(res.monoid)} endomorphisms of {M.name})"]
    text += [f"  arity {n}: {' '.join(v)}" for n, v in elems.items()]
    r.emit("core", {"spec": spec}, result, text, EXIT_OK if res.exact else EXIT_BUDGET)


@main.command("exp")
@click.argument("base")
@click.argument("exponent")
@local_options
def exp_cmd(ctx, base: str, exponent: str, as_json, local_arity) -> None:
    """Sizes of BASE ^ EXPONENT (the exponent needs a finite presentation)."""
    r = _reporter(ctx, as_json, local_arity)
    N, M = _load(base), _load(exponent)
    try:
        E = ExponentialMinion(N, M)
    except UnsupportedError as e:
        raise click.UsageError(str(e)) from None
    top = r.arity(3, E)
    sizes = [E.size(n) for n in range(1, top + 1)]
    result = {"name": E.name, "sizes": sizes, "bound": top}
    r.emit("exp", {"base": base, "exponent": exponent}, result, [f"{E.name}: sizes {sizes}"])


@main.command("sub")
@click.argument("left")
@click.argument("right")
@local_options
def sub_cmd(ctx, left: str, right: str, as_json, local_arity) -> None:
    """LEFT minus RIGHT: the components of LEFT with no map to RIGHT."""
    r = _reporter(ctx, as_json, local_arity)
    L, M = _load(left), _load(right)
    D = subtract(L, M, r.max_arity)
    parts = list(D.summands) if isinstance(D, SumMinion) else ([] if D.is_empty() else [D])
    while any(isinstance(p, SumMinion) for p in parts):
        parts = [q for p in parts for q in (p.summands if isinstance(p, SumMinion) else (p,))]
    result = {"name": D.name, "components": [p.name for p in parts], "empty": D.is_empty()}
    r.emit("sub", {"left": left, "right": right}, result, [f"{L.name} \\ {M.name} = " + (" + ".join(result["components"]) or "EMPTY")])


@main.command()
@click.argument("specs", nargs=-1, required=True)
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False), default=None, help="Write the Hasse diagram in DOT to this file ('-' for stdout).")
@local_options
def order(ctx, specs: tuple[str, ...], dot_path: str | None, as_json, local_arity) -> None:
    """Pairwise homomorphism order, classes and covers."""
    r = _reporter(ctx, as_json, local_arity)
    ms = [_load(s) for s in specs]
    rep = order_compare(ms, r.max_arity)
    dot = rep.dot()
    code = EXIT_BUDGET if rep.uncertain else EXIT_OK
    if dot_path == "-":
        click.echo(dot, nl=False)
        sys.exit(code)
    if dot_path is not None:
        with open(dot_path, "w") as fh:
            fh.write(dot)
    result = {
        "names": rep.names,
        "matrix": rep.matrix,
        "classes": [[rep.names[i] for i in c] for c in rep.classes],
        "covers": [[lo, hi] for lo, hi in rep.covers],
        "dot": dot,
    }
    width = max(len(n) for n in rep.names)
    text = [" " * width + "  " + " ".join(f"{i:>3}" for i in range(len(ms)))]
    for i, row in enumerate(rep.matrix):
        text.append(f"{rep.names[i]:>{width}}  " + " ".join(f"{c:>3}" for c in row))
    r.emit("order", {"specs": list(specs), "dot": dot_path}, result, text, code)


@main.command()
@click.argument("sentence")
@click.option("--test", "spec", required=True, help="The minion to test: a spec file or catalog name.")
@local_options
def pp(ctx, sentence: str, spec: str, as_json, local_arity) -> None:
    """Does a minion satisfy SENTENCE?

    SENTENCE is a pp-sentence such as 'exists f:2 . f(0 1|2) = f(1 0|2)'
    or a named condition such as siggers or qnu-3.
    """
    r = _reporter(ctx, as_json, local_arity)
    table = named_conditions()
    sentence = table.get(sentence, sentence)
    try:
        P = pp_parse(sentence)
    except PPSyntaxError as e:
        raise click.UsageError(f"{e}; named conditions: {', '.join(sorted(table))}") from None
    M = _load(spec)
    v = satisfies_pp(M, P)
    r.emit("pp", {"spec": spec, "sentence": sentence}, _verdict(v), [f"{M.name} satisfies {sentence}: {v.symbol}"], _code(v))


@main.command()
@click.argument("suites", nargs=-1)
@local_options
def check(ctx, suites: tuple[str, ...], as_json, local_arity) -> None:
    """Run acceptance criteria by number (all by default)."""
    r = _reporter(ctx, as_json, local_arity)
    try:
        numbers = sorted({int(s) for s in suites}) if suites and suites != ("all",) else sorted(acceptance.CRITERIA)
    except ValueError:
        raise click.UsageError("suites are criterion numbers or 'all'") from None
    bad = [n for n in numbers if n not in acceptance.CRITERIA]
    if bad:
        raise click.UsageError(f"no criteria {bad}; known 1..{len(acceptance.CRITERIA)}")
    results = []
    for n in numbers:
        res = acceptance.run_criterion(n, r.seed)
        results.append(res)
        if not r.as_json:
            click.echo(res.line())
    code = EXIT_OK if all(x.passed for x in results) else EXIT_PROPERTY
    if r.as_json:
        doc = [x.as_dict() for x in results]
        r.emit("check", {"suites": numbers, "seed": r.seed}, {"criteria": doc, "passed": code == EXIT_OK}, [], code)
    sys.exit(code)


def run(argv=None) -> int:
    """Invoke the command line without exiting; returns the exit code."""
    try:
        main.main(args=argv, prog_name="minionlab", standalone_mode=True)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else (0 if e.code is None else 1)
    return EXIT_OK


def entry() -> None:
    main(prog_name="minionlab")


__all__ = ["entry", "main", "run"]
