"""Function minions over finite sets, preservation, and the Pol-Inv connection."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .base import (
    LIMITS,
    Element,
    ForeignElementError,
    Minion,
    MinionError,
    ResourceError,
    check_budget,
)
from .minors import MinorOp, all_maps

_BRUTE_TABLES = 1 << 17
_MASK_LIMIT = 1 << 22


class NotACloneError(MinionError, ValueError):
    """Raised by clone_saturate when its input is not closed under composition."""

    def __init__(self, message: str, instance: object) -> None:
        super().__init__(message)
        self.instance = instance


def table_index(x: Sequence[int], a: int) -> int:
    """Position of the tuple x in the lexicographic order of A^n."""
    i = 0
    for v in x:
        i = i * a + v
    return i


def tuples(a: int, n: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(a), repeat=n))


def diagonal_positions(a: int, n: int) -> list[int]:
    """Positions of the constant tuples (c, ..., c), in order of c."""
    step = sum(a ** i for i in range(n))
    return [c * step for c in range(a)]


@dataclass(frozen=True)
class RelationPair:
    """A pair (R, S) with R a set of Y-tuples over A and S a set of Y-tuples over B."""

    y: int
    R: tuple[tuple[int, ...], ...]
    S: tuple[tuple[int, ...], ...]
    a: int
    b: int

    @classmethod
    def of(cls, R: Iterable[Sequence[int]], S: Iterable[Sequence[int]], a: int, b: int, y: int | None = None) -> "RelationPair":
        Rt = tuple(sorted({tuple(t) for t in R}))
        St = tuple(sorted({tuple(t) for t in S}))
        if y is None:
            lengths = {len(t) for t in Rt + St}
            if len(lengths) != 1:
                raise ValueError("cannot infer the pair arity; pass y explicitly")
            y = lengths.pop()
        for t in Rt:
            if len(t) != y or any(not 0 <= v < a for v in t):
                raise ValueError(f"tuple {t} is not a {y}-tuple over {a}")
        for t in St:
            if len(t) != y or any(not 0 <= v < b for v in t):
                raise ValueError(f"tuple {t} is not a {y}-tuple over {b}")
        return cls(y, Rt, St, a, b)

    @classmethod
    def diagonal(cls, R: Iterable[Sequence[int]], a: int, y: int | None = None) -> "RelationPair":
        R = list(R)
        return cls.of(R, R, a, a, y)

    @cached_property
    def S_set(self) -> frozenset:
        return frozenset(self.S)

    @cached_property
    def encoded(self):
        rel = bytes(v for t in self.R for v in t)
        mask = None
        if self.b ** self.y <= _MASK_LIMIT:
            buf = bytearray(self.b ** self.y)
            for t in self.S:
                buf[table_index(t, self.b)] = 1
            mask = bytes(buf)
        return rel, self.y, len(self.R), mask

    def product(self, other: "RelationPair") -> "RelationPair":
        """The pair (R x R', S x S') on the concatenated index set."""
        if (self.a, self.b) != (other.a, other.b):
            raise ValueError("pairs over different carriers")
        R = [r + r2 for r in self.R for r2 in other.R]
        S = [s + s2 for s in self.S for s2 in other.S]
        return RelationPair.of(R, S, self.a, self.b, self.y + other.y)

    def text(self) -> str:
        fmt = lambda ts: ";".join(",".join(map(str, t)) for t in ts)
        return f"{self.y} R={fmt(self.R)} S={fmt(self.S)}"


def projection_relation(a: int, l: int) -> list[tuple[int, ...]]:
    """The l projections A^l -> A written as tuples indexed by A^l."""
    xs = tuples(a, l)
    return [tuple(x[i] for x in xs) for i in range(l)]


def _preserves_table(table: bytes, n: int, pair: RelationPair, budget: int | None = None) -> bool:
    budget = LIMITS.column_budget if budget is None else budget
    rel, y, m, mask = pair.encoded
    if m == 0:
        return True
    if m ** n > budget:
        raise ResourceError(f"{m}^{n} column choices exceed the column budget {budget}")
    if mask is not None:
        return kernels.preserves(table, pair.a, n, rel, y, m, mask, pair.b, budget) == 1
    place = [pair.a ** (n - 1 - i) for i in range(n)]
    S = pair.S_set
    for choice in itertools.product(pair.R, repeat=n):
        row = tuple(table[sum(c[r] * place[i] for i, c in enumerate(choice))] for r in range(y))
        if row not in S:
            return False
    return True


def _pol_csp(a: int, b: int, n: int, pairs: Sequence[RelationPair], diag: dict[int, set[int]] | None = None) -> Iterator[bytes]:
    """Tables preserving every pair, by backtracking with forward checking."""
    size = a ** n
    domains = [set(range(b)) for _ in range(size)]
    if diag:
        for pos, allowed in diag.items():
            domains[pos] &= allowed
    place = [a ** (n - 1 - i) for i in range(n)]
    constraints: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
    for p in pairs:
        m = len(p.R)
        if m == 0:
            continue
        if m ** n > LIMITS.column_budget:
            raise ResourceError(f"{m}^{n} column choices exceed the column budget")
        S = p.S_set
        for choice in itertools.product(p.R, repeat=n):
            scope = tuple(sum(c[r] * place[i] for i, c in enumerate(choice)) for r in range(p.y))
            key = scope
            if key in constraints:
                constraints[key] &= S
            else:
                constraints[key] = set(S)
    by_var: list[list[tuple[tuple[int, ...], set]]] = [[] for _ in range(size)]
    for scope, allowed in constraints.items():
        distinct = set(scope)
        if len(distinct) == 1:
            v = scope[0]
            domains[v] &= {t[0] for t in allowed if len(set(t)) == 1}
            continue
        for v in distinct:
            by_var[v].append((scope, allowed))
    if any(not d for d in domains):
        return
    values: list[int | None] = [None] * size

    def consistent(var: int, trail: list) -> bool:
        for scope, allowed in by_var[var]:
            unknown = [v for v in set(scope) if values[v] is None]
            if not unknown:
                if tuple(values[v] for v in scope) not in allowed:
                    return False
            elif len(unknown) == 1:
                u = unknown[0]
                keep = set()
                for w in domains[u]:
                    values[u] = w
                    if tuple(values[v] for v in scope) in allowed:
                        keep.add(w)
                values[u] = None
                if keep != domains[u]:
                    trail.append((u, domains[u]))
                    domains[u] = keep
                    if not keep:
                        return False
        return True

    unassigned = set(range(size))

    def search() -> Iterator[bytes]:
        if not unassigned:
            yield bytes(values)  # type: ignore[arg-type]
            return
        var = min(unassigned, key=lambda v: (len(domains[v]), v))
        unassigned.discard(var)
        for w in sorted(domains[var]):
            values[var] = w
            trail: list = []
            if consistent(var, trail):
                yield from search()
            for u, old in reversed(trail):
                domains[u] = old
            values[var] = None
        unassigned.add(var)

    yield from search()


def _slot_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length n."""
    word = [0] * n

    def grow(i: int, top: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(word)
            return
        for v in range(top + 2):
            word[i] = v
            yield from grow(i + 1, max(top, v))

    if n:
        yield from grow(1, 0)


def _minor_value(table: bytes, a: int, alpha: tuple[int, ...], x: Sequence[int]) -> int:
    idx = 0
    for v in alpha:
        idx = idx * a + x[v]
    return table[idx]


def _probe_points(a: int, c: int) -> list[tuple[int, ...]]:
    pts = [(v,) * c for v in range(a)]
    for v in range(a):
        for w in range(a):
            if v != w:
                pts.extend(tuple(w if k == i else v for k in range(c)) for i in range(c))
    return pts


_IDENTITY_CACHE: dict[tuple, list[tuple[MinorOp, MinorOp]]] = {}


def seed_identities(a: int, ar_i: int, t_i: bytes, ar_j: int, t_j: bytes, same: bool = False) -> list[tuple[MinorOp, MinorOp]]:
    """All jointly surjective (alpha, beta), up to relabelling, with t_i alpha = t_j beta."""
    key = (a, ar_i, t_i, ar_j, t_j, same)
    hit = _IDENTITY_CACHE.get(key)
    if hit is not None:
        return hit
    out = []
    probes: dict[int, list] = {}
    for rgs in _slot_partitions(ar_i + ar_j):
        al, be = rgs[:ar_i], rgs[ar_i:]
        if same and al == be:
            continue
        c = max(rgs) + 1
        pts = probes.get(c)
        if pts is None:
            pts = probes[c] = _probe_points(a, c)
        if any(_minor_value(t_i, a, al, x) != _minor_value(t_j, a, be, x) for x in pts):
            continue
        if all(_minor_value(t_i, a, al, x) == _minor_value(t_j, a, be, x) for x in itertools.product(range(a), repeat=c)):
            out.append((MinorOp(al, c), MinorOp(be, c)))
    _IDENTITY_CACHE[key] = out
    return out


class FunctionMinion(Minion):
    """A subminion of O(a, b); elements are byte tables indexed lexicographically.

    Modes: ``full`` (every function), ``generated`` (minors of seeds),
    ``pol`` (preserving relation pairs) and ``predicate`` (a membership test).
    ``unaries`` optionally restricts to elements whose unary minor lies in a set.
    """

    kind = "function"

    def __init__(
        self,
        a: int,
        b: int,
        mode: str = "full",
        seeds: Iterable = (),
        pairs: Iterable[RelationPair] = (),
        predicate: Callable[[bytes, int], bool] | None = None,
        unaries: Iterable[bytes] | None = None,
        cutoff: int | None = None,
        name: str | None = None,
        unary_determined: bool | None = None,
    ) -> None:
        if a < 1 or b < 1:
            raise ValueError("carriers must be nonempty")
        if mode not in ("full", "generated", "pol", "predicate"):
            raise ValueError(f"unknown mode {mode!r}")
        super().__init__(name or f"O({a},{b})", cutoff)
        self.a, self.b, self.mode = a, b, mode
        self.seeds: list[tuple[int, bytes]] = []
        for s in seeds:
            if isinstance(s, Element):
                s = (s.arity, s.payload)
            arity, table = s
            table = _as_table(table)
            if len(table) != a ** arity or any(v >= b for v in table):
                raise ValueError(f"seed table of length {len(table)} is not an arity-{arity} function {a}->{b}")
            self.seeds.append((arity, table))
        self.pairs = list(pairs)
        for p in self.pairs:
            if (p.a, p.b) != (a, b):
                raise ValueError("relation pair over different carriers")
        self.pairs.sort(key=lambda p: (len(p.R), p.y))
        self.predicate = predicate
        self.unaries = None if unaries is None else frozenset(_as_table(u) for u in unaries)
        if mode == "predicate" and predicate is None:
            raise ValueError("predicate mode needs a predicate")
        if unary_determined is None:
            unary_determined = mode == "full"
        self.unary_determined = unary_determined
        self._seed_cache: dict[int, frozenset] = {}
        self._identities = None
        self._words: dict[int, dict] = {}

    # enumeration

    def _diag(self, n: int) -> dict[int, set[int]] | None:
        if self.unaries is None:
            return None
        pos = diagonal_positions(self.a, n)
        return {p: {u[c] for u in self.unaries} for c, p in enumerate(pos)}

    def _candidates(self, n: int) -> Iterator[bytes]:
        """All tables passing the unary restriction (no mode filtering)."""
        size = self.a ** n
        if self.unaries is None:
            total = self.b ** size
            check_budget(total, n, "candidate tables")
            for t in itertools.product(range(self.b), repeat=size):
                yield bytes(t)
            return
        diag = diagonal_positions(self.a, n)
        free = [i for i in range(size) if i not in set(diag)]
        total = len(self.unaries) * self.b ** len(free)
        check_budget(total, n, "candidate tables")
        buf = bytearray(size)
        for u in sorted(self.unaries):
            for c, p in enumerate(diag):
                buf[p] = u[c]
            for t in itertools.product(range(self.b), repeat=len(free)):
                for i, v in zip(free, t):
                    buf[i] = v
                yield bytes(buf)

    def _payloads(self, n: int) -> Iterable[bytes]:
        if self.mode == "full" or self.mode == "predicate":
            pred = self.predicate
            for t in self._candidates(n):
                if pred is None or pred(t, n):
                    yield t
        elif self.mode == "generated":
            yield from self._generated(n)
        else:
            yield from self._pol(n)

    def _generated(self, n: int) -> frozenset:
        cached = self._seed_cache.get(n)
        if cached is None:
            total = sum(n ** ar for ar, _ in self.seeds)
            check_budget(total, n, "seed minors")
            out = set()
            for ar, table in self.seeds:
                for alpha in all_maps(ar, n):
                    out.add(kernels.apply_index(table, kernels.minor_index(self.a, alpha.values, n)))
            if self.unaries is not None:
                out = {t for t in out if self._unary_ok(t, n)}
            cached = frozenset(out)
            self._seed_cache[n] = cached
        return cached

    def _pol(self, n: int) -> list[bytes]:
        size = self.a ** n
        brute = self.b ** size <= _BRUTE_TABLES and all(p.encoded[3] is not None for p in self.pairs)
        if brute:
            rels = [p.encoded for p in self.pairs]
            try:
                out = kernels.pol_tables(self.a, self.b, n, rels, LIMITS.column_budget)
            except OverflowError as exc:
                raise ResourceError(f"arity {n}: {exc}") from None
            if self.unaries is not None:
                out = [t for t in out if self._unary_ok(t, n)]
        else:
            out = []
            for t in _pol_csp(self.a, self.b, n, self.pairs, self._diag(n)):
                out.append(t)
                check_budget(len(out), n)
        if self.predicate is not None:
            out = [t for t in out if self.predicate(t, n)]
        return out

    # action and membership

    def _act(self, payload: bytes, n: int, alpha: MinorOp) -> bytes:
        return kernels.apply_index(payload, kernels.minor_index(self.a, alpha.values, alpha.codomain))

    def _unary_ok(self, table: bytes, n: int) -> bool:
        if self.unaries is None:
            return True
        return bytes(table[p] for p in diagonal_positions(self.a, n)) in self.unaries

    def _valid(self, payload: Hashable, arity: int) -> bool:
        if not isinstance(payload, bytes) or len(payload) != self.a ** arity:
            return False
        if payload and max(payload) >= self.b:
            return False
        if not self._unary_ok(payload, arity):
            return False
        if self.mode == "generated":
            return payload in self._generated(arity)
        if self.mode == "pol":
            if not all(_preserves_table(payload, arity, p) for p in self.pairs):
                return False
        if self.predicate is not None:
            return bool(self.predicate(payload, arity))
        return True

    def contains_table(self, table: bytes | Sequence[int], n: int) -> bool:
        return self._valid(_as_table(table), n)

    def fn(self, table, n: int) -> Element:
        """The element with the given table (bytes, digit string, sequence or callable)."""
        if callable(table):
            table = bytes(int(table(*x)) for x in tuples(self.a, n))
        return self.element(_as_table(table), n)

    def evaluate(self, f: Element, x: Sequence[int]) -> int:
        return f.payload[table_index(x, self.a)]

    def same_ambient(self, other: "FunctionMinion") -> bool:
        return (self.a, self.b) == (other.a, other.b)

    def ambient(self) -> "FunctionMinion":
        return FunctionMinion(self.a, self.b)

    def generators(self) -> list[Element]:
        if self.mode != "generated":
            raise ValueError(f"{self.name} is not given by generators")
        return [Element(ar, t, self) for ar, t in self.seeds]

    def identities(self) -> list[list[tuple[int, MinorOp]]]:
        """Pairs of equal seed minors s_i alpha = s_j beta, one per joint kernel.

        Every identity among seed minors is the image of one whose two maps
        jointly cover their codomain, taken up to relabelling the codomain, so
        the set partitions of the ar(s_i) + ar(s_j) argument slots cover them all.
        """
        if self.mode != "generated":
            raise ValueError(f"{self.name} is not given by generators")
        if self._identities is None:
            out = []
            for i, (ar_i, t_i) in enumerate(self.seeds):
                for j in range(i, len(self.seeds)):
                    ar_j, t_j = self.seeds[j]
                    for al, be in seed_identities(self.a, ar_i, t_i, ar_j, t_j, same=i == j):
                        out.append([(i, al), (j, be)])
            self._identities = out
        return self._identities

    def presentation(self):
        if self.mode != "generated" or self.unaries is not None:
            return None
        from .presented import Presentation

        try:
            classes = self.identities()
        except ResourceError:
            return None
        gens = [(f"s{i}", ar) for i, (ar, _) in enumerate(self.seeds)]
        rels = []
        for cls in classes:
            (i, al) = cls[0]
            for j, be in cls[1:]:
                rels.append(((f"s{i}", al), (f"s{j}", be)))
        return Presentation.of(gens, rels)

    def word_of(self, f: Element) -> tuple[int, MinorOp]:
        if self.mode != "generated":
            return super().word_of(f)
        self.check(f)
        words = self._words.get(f.arity)
        if words is None:
            words = {}
            for i, (ar, table) in enumerate(self.seeds):
                for alpha in all_maps(ar, f.arity):
                    t = kernels.apply_index(table, kernels.minor_index(self.a, alpha.values, f.arity))
                    words.setdefault(t, (i, alpha))
            self._words[f.arity] = words
        return words[f.payload]

    def essential_bound(self) -> int | None:
        if self.mode == "generated":
            return max((ar for ar, _ in self.seeds), default=1)
        if self.a == 1:
            return 0
        return None

    def describe(self, f: Element) -> str:
        if self.b <= 10:
            return "".join(map(str, f.payload))
        return ",".join(map(str, f.payload))

    def encode(self, f: Element):
        return self.describe(f)


def _as_table(t) -> bytes:
    if isinstance(t, bytes):
        return t
    if isinstance(t, str):
        s = t.replace(" ", "")
        return bytes(int(c) for c in s.split(",")) if "," in s else bytes(int(c) for c in s)
    return bytes(int(v) for v in t)


def full(a: int, b: int, cutoff: int | None = None, name: str | None = None) -> FunctionMinion:
    return FunctionMinion(a, b, "full", cutoff=cutoff, name=name)


def generated(a: int, b: int, seeds: Iterable, name: str | None = None) -> FunctionMinion:
    return FunctionMinion(a, b, "generated", seeds=seeds, name=name)


def preserves(f: Element, pair: RelationPair, budget: int | None = None) -> bool:
    """True iff every choice of n columns from R is sent row-wise into S."""
    owner = f.owner
    if isinstance(owner, FunctionMinion) and (owner.a, owner.b) != (pair.a, pair.b):
        raise ValueError(f"element over ({owner.a},{owner.b}) against a pair over ({pair.a},{pair.b})")
    if len(f.payload) != pair.a ** f.arity:
        raise ValueError("table length does not match the pair's domain")
    return _preserves_table(f.payload, f.arity, pair, budget)


def pol(pairs: Iterable[RelationPair], a: int | None = None, b: int | None = None, max_arity: int | None = None, name: str | None = None, unaries=None) -> FunctionMinion:
    pairs = list(pairs)
    if pairs:
        carriers = {(p.a, p.b) for p in pairs}
        if len(carriers) != 1:
            raise ValueError("pairs over different carriers")
        a2, b2 = carriers.pop()
        if (a is not None and a != a2) or (b is not None and b != b2):
            raise ValueError("pairs over different carriers")
        a, b = a2, b2
    if a is None or b is None:
        raise ValueError("carriers unknown for an empty pair list")
    return FunctionMinion(a, b, "pol", pairs=pairs, cutoff=max_arity, name=name or "Pol", unaries=unaries)


def min_invariant_companion(F: Minion, R: Iterable[Sequence[int]], max_arity: int | None = None) -> frozenset:
    """The smallest S with F preserving (R, S): all row-wise images of R-columns."""
    R = sorted({tuple(t) for t in R})
    if not R:
        return frozenset()
    y = len(R[0])
    a = getattr(F, "a")
    top = len(R) if max_arity is None else min(len(R), max_arity)
    out = set()
    for n in range(1, top + 1):
        place = [a ** (n - 1 - i) for i in range(n)]
        choices = list(itertools.product(R, repeat=n))
        positions = [tuple(sum(c[r] * place[i] for i, c in enumerate(ch)) for r in range(y)) for ch in choices]
        for f in F.elements(n):
            t = f.payload
            for pos in positions:
                out.add(tuple(t[p] for p in pos))
    return frozenset(out)


def in_inv(F: Minion, pair: RelationPair) -> bool:
    """(R, S) is an invariant pair of F iff S contains the companion of R."""
    return min_invariant_companion(F, pair.R) <= pair.S_set


@dataclass
class CloneCheck:
    holds: bool
    counterexample: object = None

    def __bool__(self) -> bool:
        return self.holds


def is_clone(F: FunctionMinion, max_arity: int = 3) -> CloneCheck:
    """Projections present and closure under composition at arities <= max_arity."""
    if F.a != F.b:
        raise ValueError("clones live on a single carrier")
    a = F.a
    for n in range(1, max_arity + 1):
        for i in range(n):
            proj = bytes(x[i] for x in tuples(a, n))
            if not F.contains_table(proj, n):
                return CloneCheck(False, ("projection", n, i))
    for m in range(1, max_arity + 1):
        G = F.elements(m)
        if not G:
            continue
        garr = np.array([list(g.payload) for g in G], dtype=np.int64)
        L = a ** m
        weights = a ** np.arange(L - 1, -1, -1, dtype=np.int64)
        members = np.array(sorted(int(np.dot(row, weights)) for row in garr), dtype=np.int64)
        for n in range(1, max_arity + 1):
            count = len(G) ** n
            if count * L > 5 * 10 ** 7:
                raise ResourceError(f"composition check at arities {n},{m} needs {count} tuples")
            idx = np.array(list(itertools.product(range(len(G)), repeat=n)), dtype=np.int64)
            codes = np.zeros((count, L), dtype=np.int64)
            for i in range(n):
                codes = codes * a + garr[idx[:, i]]
            for f in F.elements(n):
                farr = np.frombuffer(f.payload, dtype=np.uint8).astype(np.int64)
                res = farr[codes]
                keys = res @ weights
                ok = np.isin(keys, members)
                if not ok.all():
                    bad = int(np.argmin(ok))
                    gs = tuple(G[j] for j in idx[bad])
                    return CloneCheck(False, ("composition", f, gs, bytes(res[bad].astype(np.uint8))))
    return CloneCheck(True)


def clone_saturate(C: FunctionMinion, R: Iterable[Sequence[int]], max_arity: int = 3) -> frozenset:
    """C[R]: the least set containing R closed under row-wise application of C."""
    check = is_clone(C, max_arity)
    if not check:
        raise NotACloneError(f"{C.name} is not a clone: {check.counterexample!r}", check.counterexample)
    T = frozenset(tuple(t) for t in R)
    while True:
        nxt = T | min_invariant_companion(C, T, max_arity)
        if nxt == T:
            return T
        T = nxt


def reconstruct_from_projection_pairs(M: FunctionMinion, l: int) -> bool:
    """Check that M_m = {f : f preserves (p_m, M_m)} for every m <= l."""
    ambient = FunctionMinion(M.a, M.b)
    for m in range(1, l + 1):
        Mm = {e.payload for e in M.elements(m)}
        pair = RelationPair.of(projection_relation(M.a, m), [tuple(t) for t in Mm], M.a, M.b, M.a ** m)
        got = {f.payload for f in ambient.elements(m) if _preserves_table(f.payload, m, pair)}
        if got != Mm:
            return False
    return True


@dataclass
class StrengthReport:
    holds: bool
    counterexamples: list = field(default_factory=list)
    checked: int = 0

    def __bool__(self) -> bool:
        return self.holds


def r_strong_test(M: FunctionMinion, N: FunctionMinion, r: int, probe_arity: int, limit: int = 50) -> StrengthReport:
    """Test whether membership in M at arities <= probe_arity is decided by r-ary minors.

    Elements of N with a minor outside M_r are outside M because M is minor
    closed, so membership is only evaluated when every r-minor lies in M_r.
    """
    if (M.a, M.b) != (N.a, N.b):
        raise ValueError("different ambient carriers")
    if probe_arity < r:
        raise ValueError("probe arity below r")
    Mr = {e.payload for e in M.elements(r)}
    report = StrengthReport(True)
    for k in range(1, probe_arity + 1):
        idxs = [kernels.minor_index(N.a, alpha.values, r) for alpha in all_maps(k, r)]
        for f in N.elements(k):
            report.checked += 1
            if all(kernels.apply_index(f.payload, ix) in Mr for ix in idxs):
                if not M.contains_table(f.payload, k):
                    report.holds = False
                    if len(report.counterexamples) < limit:
                        report.counterexamples.append(f)
    return report


# relational structures


@dataclass(frozen=True)
class Structure:
    """A finite relational structure on {0, ..., size-1}."""

    size: int
    relations: tuple[tuple[str, int, tuple[tuple[int, ...], ...]], ...]

    @classmethod
    def of(cls, size: int, relations: dict[str, Iterable[Sequence[int]]], arities: dict[str, int] | None = None) -> "Structure":
        rels = []
        for name in sorted(relations):
            ts = tuple(sorted({tuple(t) for t in relations[name]}))
            ar = (arities or {}).get(name)
            if ar is None:
                if not ts:
                    raise ValueError(f"arity of empty relation {name} unknown")
                ar = len(ts[0])
            for t in ts:
                if len(t) != ar or any(not 0 <= v < size for v in t):
                    raise ValueError(f"bad tuple {t} in {name}")
            rels.append((name, ar, ts))
        return cls(size, tuple(rels))

    def signature(self) -> tuple[tuple[str, int], ...]:
        return tuple((n, ar) for n, ar, _ in self.relations)


def structure_pairs(A: Structure, B: Structure) -> list[RelationPair]:
    if A.signature() != B.signature():
        raise ValueError("structures of different signatures")
    return [RelationPair.of(ra, rb, A.size, B.size, ar) for (_, ar, ra), (_, _, rb) in zip(A.relations, B.relations)]


def pol_structures(A: Structure, B: Structure, max_arity: int | None = None, name: str | None = None) -> FunctionMinion:
    return FunctionMinion(A.size, B.size, "pol", pairs=structure_pairs(A, B), cutoff=max_arity, name=name or "Pol(A,B)")


def structure_homs(A: Structure, B: Structure) -> list[tuple[int, ...]]:
    """All homomorphisms A -> B as value tuples, by exhaustive search."""
    if A.signature() != B.signature():
        raise ValueError("structures of different signatures")
    targets = [set(rb) for _, _, rb in B.relations]
    out = []
    for h in itertools.product(range(B.size), repeat=A.size):
        if all(tuple(h[v] for v in t) in tb for (_, _, ra), tb in zip(A.relations, targets) for t in ra):
            out.append(h)
    return out


def free_structure(M: Minion, A: Structure) -> tuple[Structure, list[Element]]:
    """The free structure of M generated by A, on the set M_n with n = |A|."""
    n = A.size
    if n < 1:
        raise ValueError("empty structures have no free structure")
    dom = M.elements(n)
    index = {e.payload: i for i, e in enumerate(dom)}
    rels = {}
    arities = {}
    for name, ar, ts in A.relations:
        arities[name] = ar
        s = len(ts)
        if s == 0:
            rels[name] = []
            continue
        eps = [MinorOp(tuple(t[i] for t in ts), n) for i in range(ar)]
        rels[name] = [tuple(index[M.act(f, e).payload] for e in eps) for f in M.elements(s)]
    return Structure.of(len(dom), rels, arities), dom
