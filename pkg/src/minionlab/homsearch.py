"""Deciding and enumerating homomorphisms, cores, the homomorphism order and pp-satisfaction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .base import (
    LIMITS,
    ConsistencyError,
    CutoffError,
    Element,
    Minion,
    ResourceError,
    UnsupportedError,
)
from .basic import ProjectionMinion, TerminalMinion
from .construct import ExponentialMinion, ProductMinion, SumMinion, subtract, unary_decompose
from .funmin import FunctionMinion, generated, tuples
from .minors import MinorOp, monoid_generators, retraction
from .morphisms import Hom
from .presented import Presentation, PresentedMinion, assignments, pp_gadget

DEFAULT_BOUND = 3
_enum = enumerate
SEED_ARITY = 5


@dataclass
class Verdict:
    """yes, no or unknown, with a witness for yes and the arity bound for truncated answers.

    ``exact`` is False when the answer only holds for the truncation at ``bound``.
    """

    value: str
    witness: Hom | None = None
    bound: int | None = None
    exact: bool = True
    method: str = ""
    certificate: object = None

    def __bool__(self) -> bool:
        return self.value == "yes"

    @property
    def symbol(self) -> str:
        if self.value == "unknown" or not self.exact:
            return "?"
        return self.value

    def as_dict(self) -> dict:
        out = {"value": self.value, "exact": self.exact, "method": self.method}
        if self.bound is not None:
            out["bound"] = self.bound
        return out


def _yes(witness=None, method="", bound=None, exact=True) -> Verdict:
    return Verdict("yes", witness, bound, exact, method)


def _no(method="", bound=None, certificate=None) -> Verdict:
    return Verdict("no", None, bound, True, method, certificate)


# generator assignments


def _assignment_hom(M: Minion, N: Minion, P: Presentation, asg: dict) -> Hom:
    syms = [s for s, _ in P.normalized().generators]
    images = [asg[s] for s in syms]

    def fn(f: Element) -> Element:
        i, al = M.word_of(f)
        return N.act(images[i], al)

    return Hom(M, N, fn, "generator-assignment", data=asg)


def hom_presented(M: Minion, N: Minion, enumerate: bool = False, limit: int | None = None):
    """Exact search over images of generators; all witnesses when enumerating."""
    P = M.presentation()
    if P is None:
        raise UnsupportedError(f"{M.name} has no finite presentation")
    it = assignments(P, N)
    if enumerate:
        out = []
        for asg in it:
            out.append(_assignment_hom(M, N, P, asg))
            if limit is not None and len(out) >= limit:
                break
        return out
    for asg in it:
        return _yes(_assignment_hom(M, N, P, asg), "generator-assignment")
    return _no("generator-assignment")


# representation into function minions


class _TableCSP:
    """Variables valued in range(b); each constraint lists allowed tuples over distinct variables."""

    def __init__(self, nvars: int, b: int) -> None:
        self.nvars = nvars
        self.b = b
        self.constraints: list[tuple[tuple[int, ...], list[tuple[int, ...]]]] = []
        self.checks: list = []
        self.fixed: dict[int, set[int]] = {}

    def add(self, scope: Sequence[int], allowed: Iterable[bytes]) -> None:
        """scope may repeat variables; allowed tuples must agree on repeated positions."""
        distinct = sorted(set(scope))
        where = {v: [i for i, s in enumerate(scope) if s == v] for v in distinct}
        proj = set()
        for t in allowed:
            ok = True
            row = []
            for v in distinct:
                ps = where[v]
                x = t[ps[0]]
                if any(t[p] != x for p in ps[1:]):
                    ok = False
                    break
                row.append(x)
            if ok:
                proj.add(tuple(row))
        if len(distinct) == 1:
            v = distinct[0]
            dom = {r[0] for r in proj}
            self.fixed[v] = self.fixed.get(v, set(range(self.b))) & dom
            return
        self.constraints.append((tuple(distinct), sorted(proj)))

    def add_check(self, scope: Sequence[int], test) -> None:
        self.checks.append((tuple(scope), test))

    def solve(self) -> Iterator[list[int]]:
        n, b = self.nvars, self.b
        domains = [set(self.fixed.get(v, range(b))) for v in range(n)]
        if any(not d for d in domains):
            return
        involved = set()
        by_var: list[list[int]] = [[] for _ in range(n)]
        for ci, (scope, _) in enumerate(self.constraints):
            for v in scope:
                by_var[v].append(ci)
                involved.add(v)
        for scope, _ in self.checks:
            involved.update(scope)
        live = [list(allowed) for _, allowed in self.constraints]
        value = [-1] * n
        order_free = [v for v in range(n) if v not in involved]
        budget = [LIMITS.search_budget]

        def prune(ci: int, trail: list) -> bool:
            scope, _ = self.constraints[ci]
            doms = [domains[v] for v in scope]
            rows = [r for r in live[ci] if all(x in d for x, d in zip(r, doms))]
            if len(rows) != len(live[ci]):
                trail.append(("live", ci, live[ci]))
                live[ci] = rows
            if not rows:
                return False
            for k, v in enumerate(scope):
                sup = {r[k] for r in rows}
                if not domains[v] <= sup:
                    trail.append(("dom", v, domains[v]))
                    domains[v] = domains[v] & sup
                    if not domains[v]:
                        return False
            return True

        def undo(trail: list) -> None:
            for kind, i, old in reversed(trail):
                if kind == "live":
                    live[i] = old
                else:
                    domains[i] = old

        def checks_ok() -> bool:
            return all(test([value[v] for v in scope]) for scope, test in self.checks)

        pending = [v for v in range(n) if v in involved]

        def search() -> Iterator[None]:
            budget[0] -= 1
            if budget[0] < 0:
                raise ResourceError("representation search exceeded the search budget")
            free = [v for v in pending if value[v] < 0]
            if not free:
                if checks_ok():
                    yield None
                return
            v = min(free, key=lambda u: (len(domains[u]), u))
            for x in sorted(domains[v]):
                trail: list = [("dom", v, domains[v])]
                value[v] = x
                domains[v] = {x}
                ok = True
                queue = list(by_var[v])
                while queue and ok:
                    ci = queue.pop()
                    before = {u: len(domains[u]) for u in self.constraints[ci][0]}
                    ok = prune(ci, trail)
                    if ok:
                        for u in self.constraints[ci][0]:
                            if len(domains[u]) < before[u]:
                                queue.extend(c for c in by_var[u] if c != ci)
                if ok:
                    yield from search()
                value[v] = -1
                undo(trail)

        for _ in search():
            base = list(value)
            if not order_free:
                yield base
                continue
            for combo in itertools.product(*(sorted(domains[v]) for v in order_free)):
                for v, x in zip(order_free, combo):
                    base[v] = x
                yield list(base)

    def count(self) -> int:
        """Number of solutions, multiplying out unconstrained variables."""
        involved = {v for scope, _ in self.constraints for v in scope}
        involved |= {v for scope, _ in self.checks for v in scope}
        mult = 1
        saved = dict(self.fixed)
        for v in range(self.nvars):
            if v not in involved:
                mult *= len(self.fixed.get(v, range(self.b)))
                self.fixed[v] = {0}
        try:
            total = sum(1 for _ in self.solve())
        finally:
            self.fixed = saved
        return total * mult


def _induced_hom(M: Minion, N: FunctionMinion, phi: dict, bound: int | None = None) -> Hom:
    """phi: payload of M_a -> value; f -> (x -> phi(f x))."""
    a = N.a
    cache: dict[int, list[MinorOp]] = {}

    def fn(f: Element) -> Element:
        xs = cache.get(f.arity)
        if xs is None:
            xs = [MinorOp(x, a) for x in tuples(a, f.arity)]
            cache[f.arity] = xs
        return Element(f.arity, bytes(phi[M.act(f, x).payload] for x in xs), N)

    return Hom(M, N, fn, "representation", data=phi, bound=bound)


def _check_elements(M: Minion, N: FunctionMinion, bound: int | None) -> tuple[list[Element], bool, int | None]:
    """Elements whose images must lie in N, whether that suffices, and the arity bound used."""
    if N.unary_determined:
        return M.elements(1), True, None
    if isinstance(M, FunctionMinion) and M.mode == "generated" and M.unaries is None:
        return M.generators(), True, None
    if isinstance(M, PresentedMinion):
        return M.generators(), True, None
    g = M.essential_bound()
    if g is not None and M.cutoff is None:
        return M.elements(max(g, 1)), True, None
    top = bound or DEFAULT_BOUND
    if M.cutoff is not None:
        top = min(top, M.cutoff)
    out = []
    for n in range(1, top + 1):
        out.extend(M.elements(n))
    return out, False, top


def _representation_csp(M: Minion, N: FunctionMinion, bound: int | None):
    a, b = N.a, N.b
    xs_cache: dict[int, list[MinorOp]] = {}
    vars_ = M.elements(a)
    index = {f.payload: i for i, f in _enum(vars_)}
    checks, exact, top = _check_elements(M, N, bound)
    csp = _TableCSP(len(vars_), b)
    by_arity: dict[int, list[bytes] | None] = {}
    for f in checks:
        n = f.arity
        xs = xs_cache.get(n)
        if xs is None:
            xs = [MinorOp(x, a) for x in tuples(a, n)]
            xs_cache[n] = xs
        scope = [index[M.act(f, x).payload] for x in xs]
        if n not in by_arity:
            try:
                if N.mode == "full" and N.unaries is None and N.predicate is None:
                    by_arity[n] = None
                else:
                    by_arity[n] = [e.payload for e in N.elements(n)]
            except ResourceError:
                by_arity[n] = "check"
        allowed = by_arity[n]
        if allowed is None:
            continue
        if allowed == "check":
            csp.add_check(scope, lambda vals, n=n: N.contains_table(bytes(vals), n))
        else:
            csp.add(scope, allowed)
    return csp, vars_, exact, top


def hom_representation(M: Minion, N: FunctionMinion, bound: int | None = None, enumerate: bool = False, limit: int | None = None):
    """Homs into a function minion over (A, B) as maps M_|A| -> B whose induced maps land in N."""
    if N.cutoff is not None:
        raise CutoffError(f"{N.name} is truncated; use bounded search")
    csp, vars_, exact, top = _representation_csp(M, N, bound)
    if enumerate:
        out = []
        for sol in csp.solve():
            phi = {f.payload: sol[i] for i, f in _enum(vars_)}
            out.append(_induced_hom(M, N, phi, None if exact else top))
            if limit is not None and len(out) >= limit:
                break
        return out
    for sol in csp.solve():
        phi = {f.payload: sol[i] for i, f in _enum(vars_)}
        return _yes(_induced_hom(M, N, phi, None if exact else top), "representation", top, exact)
    return _no("representation", top)


def count_representation(M: Minion, N: FunctionMinion, bound: int | None = None) -> tuple[int, bool]:
    csp, _, exact, _ = _representation_csp(M, N, bound)
    return csp.count(), exact


# bounded search over T_B-sets


def _tb_search(M: Minion, N: Minion, B: int, count_only: bool = False):
    """Maps M_B -> N_B commuting with a generating set of the maps B -> B."""
    src = M.elements(B)
    tgt = N.elements(B)
    gens = monoid_generators(B)
    sidx = {f.payload: i for i, f in enumerate(src)}
    succ = [[sidx[M._act(f.payload, B, g)] for g in gens] for f in src]
    tidx = {f.payload: i for i, f in enumerate(tgt)}
    tsucc = [[tidx[N._act(f.payload, B, g)] for g in gens] for f in tgt]
    G = nx.DiGraph()
    G.add_nodes_from(range(len(src)))
    for i, row in enumerate(succ):
        for j in row:
            if j != i:
                G.add_edge(i, j)
    C = nx.condensation(G)
    reps = sorted(min(C.nodes[c]["members"]) for c in C.nodes if C.in_degree(c) == 0)
    h = [-1] * len(src)
    budget = [LIMITS.search_budget]

    def assign(x: int, y: int, trail: list) -> bool:
        stack = [(x, y)]
        while stack:
            u, v = stack.pop()
            if h[u] >= 0:
                if h[u] != v:
                    return False
                continue
            h[u] = v
            trail.append(u)
            for k in range(len(gens)):
                stack.append((succ[u][k], tsucc[v][k]))
        return True

    def search(k: int):
        budget[0] -= 1
        if budget[0] < 0:
            raise ResourceError(f"bounded search at arity {B} exceeded the search budget")
        if k == len(reps):
            yield list(h)
            return
        x = reps[k]
        if h[x] >= 0:
            yield from search(k + 1)
            return
        for y in range(len(tgt)):
            trail: list = []
            if assign(x, y, trail):
                yield from search(k + 1)
            for u in trail:
                h[u] = -1

    return src, tgt, search(0)


def _extend_down(M: Minion, N: Minion, B: int, src, tgt, sol) -> Hom:
    table = {src[i].payload: tgt[sol[i]].payload for i in range(len(src))}

    def fn(f: Element) -> Element:
        n = f.arity
        if n == B:
            return Element(B, table[f.payload], N)
        iota = MinorOp(tuple(range(n)), B)
        rho = retraction(B, n)
        return Element(n, N._act(table[M._act(f.payload, n, iota)], B, rho), N)

    return Hom(M, N, fn, "arity-family", data=table, bound=B)


def _bounded_exact(M: Minion, B: int) -> bool:
    g = M.essential_bound()
    return g is not None and B >= 2 * max(g, 1) and (M.cutoff is None or M.cutoff >= B)


def hom_bounded(M: Minion, N: Minion, bound: int, enumerate: bool = False, limit: int | None = None):
    """Search maps of the arity-bound sets commuting with every minor operation bound -> bound."""
    try:
        src, tgt, sols = _tb_search(M, N, bound)
    except ResourceError:
        if enumerate:
            raise
        return Verdict("unknown", None, bound, False, "arity-family")
    exact = _bounded_exact(M, bound)
    if enumerate:
        out = []
        for sol in sols:
            out.append(_extend_down(M, N, bound, src, tgt, sol))
            if limit is not None and len(out) >= limit:
                break
        return out
    try:
        for sol in sols:
            return _yes(_extend_down(M, N, bound, src, tgt, sol), "arity-family", bound, exact)
    except ResourceError:
        return Verdict("unknown", None, bound, False, "arity-family")
    return _no("arity-family", bound)


def count_bounded(M: Minion, N: Minion, bound: int) -> tuple[int, bool]:
    _, _, sols = _tb_search(M, N, bound)
    return sum(1 for _ in sols), _bounded_exact(M, bound)


# generated function minions


def hom_exact_from_generated(M: FunctionMinion, N: Minion, enumerate: bool = False):
    """Assign images to the seeds and check every identity among seed minors up to twice the seed arity."""
    if not isinstance(M, FunctionMinion) or M.mode != "generated":
        raise UnsupportedError(f"{M.name} is not a generated function minion")
    seeds = M.generators()
    classes = M.identities()
    order = sorted(range(len(seeds)), key=lambda i: (-seeds[i].arity, i))
    pos = {i: k for k, i in _enum(order)}
    due: list[list[list[tuple[int, MinorOp]]]] = [[] for _ in order]
    for cls in classes:
        k = max(pos[i] for i, _ in cls)
        due[k].append(cls)
    chosen: dict[int, Element] = {}
    pools = [N.elements(seeds[i].arity) for i in order]

    def ok(k: int) -> bool:
        for cls in due[k]:
            vals = {N.act(chosen[i], al) for i, al in cls}
            if len(vals) > 1:
                return False
        return True

    def search(k: int):
        if k == len(order):
            yield dict(chosen)
            return
        i = order[k]
        for cand in pools[k]:
            chosen[i] = cand
            if ok(k):
                yield from search(k + 1)
        chosen.pop(i, None)

    def witness(asg: dict) -> Hom:
        def fn(f: Element) -> Element:
            i, al = M.word_of(f)
            return N.act(asg[i], al)

        return Hom(M, N, fn, "generator-assignment", data={M.describe(seeds[i]): asg[i] for i in asg})

    if enumerate:
        return [witness(a) for a in search(0)]
    for asg in search(0):
        return _yes(witness(asg), "seed-identities")
    return _no("seed-identities")


def _symmetric_tables(a: int, b: int, k: int) -> Iterator[bytes]:
    """Tables of the functions A^k -> B invariant under permuting coordinates."""
    multisets = list(itertools.combinations_with_replacement(range(a), k))
    pos = {m: i for i, m in enumerate(multisets)}
    key = [pos[tuple(sorted(x))] for x in tuples(a, k)]
    for vals in itertools.product(range(b), repeat=len(multisets)):
        yield bytes(vals[c] for c in key)


def symmetric_seed_obstruction(M: FunctionMinion, N: Minion, max_arity: int = SEED_ARITY):
    """A symmetric element of M whose generated subminion has no hom to N, if one exists up to max_arity."""
    for k in range(2, max_arity + 1):
        if M.b ** len(list(itertools.combinations_with_replacement(range(M.a), k))) > 1 << 16:
            break
        for t in _symmetric_tables(M.a, M.b, k):
            if not M.contains_table(t, k):
                continue
            sub = generated(M.a, M.b, [(k, t)], name=f"<{M.describe(Element(k, t, M))}>")
            v = decide(sub, N)
            if v.value == "no" and v.exact:
                return Element(k, t, M)
    return None


# dispatcher


def _is_terminal(N: Minion) -> bool:
    return isinstance(N, TerminalMinion)


def _connected(M: Minion) -> bool:
    return M.size(1) == 1


def decide(M: Minion, N: Minion, bound: int | None = None, structural: bool = True) -> Verdict:
    """Decide whether a homomorphism M -> N exists, exactly when possible."""
    if M.is_empty():
        return _yes(Hom(M, N, lambda f: f, "empty"), "empty-source")
    if N.is_empty():
        return _no("empty-target")
    if _is_terminal(N):
        return _yes(Hom(M, N, lambda f: Element(f.arity, 0, N), "terminal"), "terminal-target")
    if M is N:
        return _yes(Hom(M, M, lambda f: f, "identity"), "identity")
    if structural:
        if isinstance(N, ProductMinion):
            parts = [decide(M, N.left, bound), decide(M, N.right, bound)]
            return _combine_all(parts, "product-target")
        if isinstance(M, SumMinion):
            parts = [decide(S, N, bound) for S in M.summands]
            return _combine_all(parts, "sum-source")
        if isinstance(N, SumMinion) and _connected(M):
            parts = [decide(M, S, bound) for S in N.summands]
            return _combine_any(parts, "sum-target")
        if isinstance(N, SumMinion) and not _connected(M) and M.presentation() is None:
            parts = [decide(C, N, bound) for _, C in unary_decompose(M)]
            return _combine_all(parts, "component-source")
    return _direct(M, N, bound)


def _combine_all(parts: list[Verdict], method: str) -> Verdict:
    if any(p.value == "no" and p.exact for p in parts):
        return _no(method, max((p.bound or 0 for p in parts), default=None) or None)
    if all(p.value == "yes" for p in parts):
        exact = all(p.exact for p in parts)
        bounds = [p.bound for p in parts if p.bound is not None]
        return _yes(None, method, max(bounds) if bounds else None, exact)
    bounds = [p.bound for p in parts if p.bound is not None]
    return Verdict("unknown", None, max(bounds) if bounds else None, False, method)


def _combine_any(parts: list[Verdict], method: str) -> Verdict:
    for p in parts:
        if p.value == "yes" and p.exact:
            return _yes(None, method, p.bound, True)
    if all(p.value == "no" and p.exact for p in parts):
        return _no(method)
    bounds = [p.bound for p in parts if p.bound is not None]
    return Verdict("unknown", None, max(bounds) if bounds else None, False, method)


def _direct(M: Minion, N: Minion, bound: int | None) -> Verdict:
    if isinstance(N, FunctionMinion) and N.cutoff is None and M.cutoff is None:
        v = hom_representation(M, N, bound)
        if v.exact:
            return v
        return _refine(M, N, v)
    if isinstance(M, FunctionMinion) and M.mode == "generated":
        try:
            return hom_exact_from_generated(M, N)
        except ResourceError:
            pass
    if M.presentation() is not None:
        return hom_presented(M, N)
    g = M.essential_bound()
    if g is not None and M.cutoff is None:
        B = 2 * max(g, 1)
        if bound is not None:
            B = min(B, bound) if bound < B else B
    else:
        B = bound or DEFAULT_BOUND
    if M.cutoff is not None:
        B = min(B, M.cutoff)
    if N.cutoff is not None:
        B = min(B, N.cutoff)
    v = hom_bounded(M, N, B)
    if v.value == "yes" and not v.exact:
        return _refine(M, N, v)
    return v


def _refine(M: Minion, N: Minion, v: Verdict) -> Verdict:
    """Look for an exact obstruction behind a truncation-relative yes."""
    if isinstance(M, FunctionMinion) and v.value == "yes":
        bad = symmetric_seed_obstruction(M, N)
        if bad is not None:
            return _no("symmetric-seed", v.bound, certificate=bad)
    return v


def count_homs(M: Minion, N: Minion, bound: int | None = None) -> tuple[int, bool]:
    """The number of homs M -> N and whether the count is exact."""
    if isinstance(N, FunctionMinion) and N.cutoff is None and M.cutoff is None:
        return count_representation(M, N, bound)
    if M.presentation() is not None:
        return sum(1 for _ in assignments(M.presentation(), N)), True
    g = M.essential_bound()
    B = 2 * max(g, 1) if g is not None else (bound or DEFAULT_BOUND)
    return count_bounded(M, N, B)


def hom_equivalent(M: Minion, N: Minion, bound: int | None = None) -> tuple[Verdict, Verdict]:
    return decide(M, N, bound), decide(N, M, bound)


# the homomorphism order


@dataclass
class OrderReport:
    names: list[str]
    matrix: list[list[str]]
    classes: list[list[int]]
    covers: list[tuple[int, int]]
    uncertain: list[tuple[int, int]]

    def dot(self) -> str:
        lines = ["digraph order {", "  rankdir=BT;"]
        label = {}
        for k, cls in enumerate(self.classes):
            label[k] = ", ".join(self.names[i] for i in cls)
            lines.append(f'  c{k} [label="{label[k]}"];')
        for lo, hi in self.covers:
            lines.append(f"  c{lo} -> c{hi};")
        for lo, hi in self.uncertain:
            lines.append(f"  c{lo} -> c{hi} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def order_compare(minions: Sequence[Minion], bound: int | None = None) -> OrderReport:
    """Pairwise verdicts, equivalence classes and the covering relation between classes."""
    n = len(minions)
    verdicts = [[decide(minions[i], minions[j], bound) if i != j else _yes(method="identity") for j in range(n)] for i in range(n)]
    matrix = [[v.symbol for v in row] for row in verdicts]
    cls_of = list(range(n))
    for i in range(n):
        for j in range(i):
            if matrix[i][j] == "yes" and matrix[j][i] == "yes":
                cls_of[i] = cls_of[j]
                break
    reps = sorted(set(cls_of))
    classes = [[i for i in range(n) if cls_of[i] == r] for r in reps]
    k = len(classes)
    le = [[matrix[classes[x][0]][classes[y][0]] == "yes" for y in range(k)] for x in range(k)]
    covers = []
    for x in range(k):
        for y in range(k):
            if x == y or not le[x][y]:
                continue
            if any(z not in (x, y) and le[x][z] and le[z][y] for z in range(k)):
                continue
            covers.append((x, y))
    uncertain = [
        (x, y) for x in range(k) for y in range(k) if x != y and matrix[classes[x][0]][classes[y][0]] == "?"
    ]
    return OrderReport([m.name for m in minions], matrix, classes, covers, uncertain)


# endomorphisms and cores


@dataclass
class Monoid:
    elements: list[Hom]
    table: list[list[int]]
    bound: int
    exact: bool

    def __len__(self) -> int:
        return len(self.elements)

    def identity_index(self) -> int:
        for i, row in enumerate(self.table):
            if all(row[j] == j for j in range(len(row))):
                return i
        raise ConsistencyError("endomorphism monoid without identity")


def _fingerprint(h: Hom, bound: int) -> tuple:
    M = h.source
    return tuple(h(f).payload for n in range(1, bound + 1) for f in M.elements(n))


def endomorphisms(M: Minion, bound: int | None = None) -> Monoid:
    """All endomorphisms, with composition compared on arities <= the verification bound."""
    exact = True
    if isinstance(M, FunctionMinion) and M.cutoff is None:
        homs = hom_representation(M, M, bound, enumerate=True)
        _, exact, top = _check_elements(M, M, bound)
        vb = max(M.essential_bound() or 0, 2) if exact else top
    elif M.presentation() is not None:
        homs = hom_presented(M, M, enumerate=True)
        vb = max(M.essential_bound() or 1, 2)
    else:
        g = M.essential_bound()
        B = 2 * max(g, 1) if g is not None else (bound or DEFAULT_BOUND)
        if M.cutoff is not None:
            B = min(B, M.cutoff)
        homs = hom_bounded(M, M, B, enumerate=True)
        exact = _bounded_exact(M, B)
        vb = B
    if bound is not None and not exact:
        vb = min(vb, bound)
    prints = [_fingerprint(h, vb) for h in homs]
    if len(set(prints)) != len(prints):
        raise ConsistencyError("distinct endomorphisms agree up to the verification bound")
    index = {p: i for i, p in enumerate(prints)}
    flat = [f for n in range(1, vb + 1) for f in M.elements(n)]
    table = []
    for h in homs:
        row = []
        for k in homs:
            p = tuple(k(h(f)).payload for f in flat)
            if p not in index:
                raise ConsistencyError("endomorphisms not closed under composition")
            row.append(index[p])
        table.append(row)
    for h in homs:
        h.bound = None if exact else vb
    return Monoid(homs, table, vb, exact)


@dataclass
class TruncationReport:
    """Endomorphisms of the arity-n part versus restrictions of full endomorphisms."""

    arity: int
    truncated: int
    restricted: int
    non_extending: list[dict]
    exact: bool


def truncated_endomorphisms(M: Minion, n: int, bound: int | None = None) -> TruncationReport:
    """List the maps M_n -> M_n commuting with every n -> n minor that no endomorphism restricts to.

    Only reports what it finds: ``exact`` is False when the endomorphism monoid is truncated.
    """
    src, _, sols = _tb_search(M, M, n)
    truncated = {tuple(sol) for sol in sols}
    mon = endomorphisms(M, bound)
    pos = {f.payload: i for i, f in enumerate(src)}
    restricted = {tuple(pos[h(f).payload] for f in src) for h in mon.elements}
    missing = sorted(truncated - restricted)
    rows = [{M.describe(src[i]): M.describe(src[j]) for i, j in enumerate(sol)} for sol in missing]
    return TruncationReport(n, len(truncated), len(restricted), rows, mon.exact)


class ImageMinion(Minion):
    """The image of an idempotent endomorphism, as the set of its fixed points."""

    kind = "derived"
    constructor = "reflectionImage"

    def __init__(self, M: Minion, e: Hom, name: str | None = None) -> None:
        super().__init__(name or f"core({M.name})", M.cutoff)
        self.base, self.retraction_map = M, e

    def _payloads(self, n: int):
        return {self.retraction_map(f).payload for f in self.base.elements(n)}

    def sort_key(self, payload):
        return self.base.sort_key(payload)

    def _act(self, payload, n: int, alpha: MinorOp):
        return self.base._act(payload, n, alpha)

    def _valid(self, payload, arity: int) -> bool:
        if not self.base._valid(payload, arity):
            return False
        f = Element(arity, payload, self.base)
        return self.retraction_map(f).payload == payload

    def essential_bound(self) -> int | None:
        return self.base.essential_bound()

    def describe(self, f: Element) -> str:
        return self.base.describe(Element(f.arity, f.payload, self.base))


@dataclass
class CoreResult:
    core: Minion
    retraction: Hom
    endomorphism_index: int
    monoid: Monoid
    exact: bool
    rigid_check: bool = field(default=False)


def _power_idempotent(monoid: Monoid, i: int) -> int:
    seen = [i]
    cur = i
    while True:
        if monoid.table[cur][cur] == cur:
            return cur
        cur = monoid.table[cur][i]
        if cur in seen:
            break
        seen.append(cur)
    for p in seen:
        if monoid.table[p][p] == p:
            return p
    raise ConsistencyError("no idempotent power found")


def core(M: Minion, bound: int | None = None) -> CoreResult:
    """A retract with every endomorphism an automorphism, by minimal image and idempotent power."""
    mon = endomorphisms(M, bound)
    vb = mon.bound

    def weight(i: int):
        h = mon.elements[i]
        sizes = sum(len({h(f).payload for f in M.elements(n)}) for n in range(1, vb + 1))
        return (sizes, _fingerprint(h, vb))

    best = min(range(len(mon)), key=weight)
    e_idx = _power_idempotent(mon, best)
    e = mon.elements[e_idx]
    if isinstance(M, FunctionMinion):
        C = FunctionMinion(
            M.a,
            M.b,
            "predicate",
            predicate=lambda t, n: M.contains_table(t, n) and e(Element(n, t, M)).payload == t,
            unaries={e(u).payload for u in M.elements(1)},
            cutoff=M.cutoff,
            name=f"core({M.name})",
        )
    else:
        C = ImageMinion(M, e)
    retr = Hom(M, C, lambda f: Element(f.arity, e(f).payload, C), "retraction", bound=None if mon.exact else vb)
    inner = endomorphisms(C, vb)
    for h in inner.elements:
        if not h.is_injective(vb):
            raise ConsistencyError(f"core candidate for {M.name} has a non-injective endomorphism")
    return CoreResult(C, retr, e_idx, mon, mon.exact, True)


# pp conditions, gaps and the meet-prime factor


def satisfies_pp(M: Minion, phi) -> Verdict:
    gadget = phi if isinstance(phi, Minion) else pp_gadget(phi)
    return hom_presented(gadget, M)


def gap_evidence(a: Minion, c: Minion, catalog: Sequence[Minion], bound: int | None = None) -> dict:
    """Test the candidate duality pair (c minus a, a to the c) against catalog members."""
    if a is c:
        raise ValueError("the interval is not proper")
    up = decide(a, c, bound)
    down = decide(c, a, bound)
    if not (up.value == "yes" and down.value == "no"):
        raise ValueError(f"{a.name} < {c.name} does not hold ({up.symbol}, {down.symbol})")
    d1 = subtract(c, a, bound)
    d2 = ExponentialMinion(a, c)
    rows = []
    violations = []
    for b in catalog:
        left = decide(d1, b, bound)
        right = decide(b, d2, bound)
        ok = left.value == "yes" or right.value == "yes"
        certain = (left.value == "yes" and left.exact) or (right.value == "yes" and right.exact)
        refuted = left.symbol == "no" and right.symbol == "no"
        rows.append({"member": b.name, "left": left.symbol, "right": right.symbol, "holds": ok, "certain": certain})
        if refuted:
            violations.append(b.name)
    return {
        "pair": [d1.name, d2.name],
        "rows": rows,
        "violations": violations,
        "conclusion": "refuted" if violations else "consistent with the catalog (evidence, not a proof)",
    }


def extract_factor_hom(h: Hom) -> Hom:
    """From h: M x N -> P with connected factors, a hom M -> P or N -> P."""
    Pr = h.source
    if not isinstance(Pr, ProductMinion) or not isinstance(h.target, ProjectionMinion):
        raise ValueError("expected a map from a product into the projection minion")
    M, N = Pr.left, Pr.right
    if not (_connected(M) and _connected(N)):
        raise ValueError("factors must have a single unary; decompose first")
    P = h.target
    u, v = M.elements(1)[0], N.elements(1)[0]
    uv = Pr.pair(M.act(u, MinorOp((0,), 2)), N.act(v, MinorOp((1,), 2)))
    if h(uv).payload == 0:

        def fm(f: Element) -> Element:
            l = f.arity
            x = Pr.pair(M.act(f, MinorOp(tuple(range(l)), l + 1)), N.act(v, MinorOp((l,), l + 1)))
            return P.element(h(x).payload, l)

        return Hom(M, P, fm, "factor")

    def fn(g: Element) -> Element:
        k = g.arity
        x = Pr.pair(M.act(u, MinorOp((0,), k + 1)), N.act(g, MinorOp(tuple(range(1, k + 1)), k + 1)))
        return P.element(h(x).payload - 1, k)

    return Hom(N, P, fn, "factor")


__all__ = [
    "CoreResult",
    "ImageMinion",
    "Monoid",
    "OrderReport",
    "Verdict",
    "core",
    "count_homs",
    "decide",
    "endomorphisms",
    "extract_factor_hom",
    "gap_evidence",
    "hom_bounded",
    "hom_equivalent",
    "hom_exact_from_generated",
    "hom_presented",
    "hom_representation",
    "order_compare",
    "satisfies_pp",
    "symmetric_seed_obstruction",
    "TruncationReport",
    "truncated_endomorphisms",
]
