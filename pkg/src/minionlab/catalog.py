"""Named minions and named minor conditions."""

from __future__ import annotations

import itertools
import re
from typing import Iterable

from .base import CutoffError, Element, Minion, TabulatedMinion, check_budget, tabulate
from .basic import EmptyMinion, ProjectionMinion, TerminalMinion
from .funmin import FunctionMinion, RelationPair, Structure, generated, pol, pol_structures, tuples
from .minors import MinorOp, all_maps, compose, image_factorization
from .presented import Presentation, PresentedMinion, pp_parse

# boolean building blocks


def near_unanimity_table(s: int) -> bytes:
    """n_s: 1 exactly when at most one input is zero."""
    if s < 1:
        raise ValueError("arity must be positive")
    return bytes(int(sum(x) >= s - 1) for x in tuples(2, s))


def not_all_zero(k: int) -> list[tuple[int, ...]]:
    return [x for x in tuples(2, k) if any(x)]


def identity_table(n: int) -> bytes:
    return bytes(range(n))


# named minions


def projections(name: str = "P") -> ProjectionMinion:
    return ProjectionMinion(name)


def terminal(name: str = "CONST") -> TerminalMinion:
    return TerminalMinion(name)


def empty(name: str = "EMPTY") -> EmptyMinion:
    return EmptyMinion(name)


def functions(n: int, k: int) -> FunctionMinion:
    _positive(n, k)
    return FunctionMinion(n, k, name=f"O({n},{k})")


def idempotents(n: int) -> FunctionMinion:
    """J_n: the functions n^m -> n whose diagonal is the identity."""
    _positive(n)
    return FunctionMinion(n, n, unaries=[identity_table(n)], name=f"J({n})")


def nonconstant_part(n: int, k: int) -> FunctionMinion:
    """O(n, k) restricted to elements with a nonconstant unary minor."""
    _positive(n, k)
    us = [bytes(t) for t in itertools.product(range(k), repeat=n) if len(set(t)) > 1]
    return FunctionMinion(n, k, unaries=us, name=f"NC({n},{k})")


def near_unanimity_minion(S: Iterable[int]) -> FunctionMinion:
    """The subminion of O(2, 2) generated by n_s for s in S."""
    S = sorted(set(int(s) for s in S))
    if not S:
        raise ValueError("KM needs at least one arity")
    if S[0] < 3:
        raise ValueError(f"n_{S[0]} does not satisfy its quasi-near-unanimity identities; arities start at 3")
    label = ",".join(map(str, S))
    return generated(2, 2, [(s, near_unanimity_table(s)) for s in S], name=f"KM({label})")


def binf(K: int) -> FunctionMinion:
    """Pol of the not-all-zero pairs up to arity K and both constants, truncated at K."""
    _positive(K)
    pairs = [RelationPair.of(not_all_zero(k), not_all_zero(k), 2, 2, k) for k in range(1, K + 1)]
    pairs += [RelationPair.of([(0,)], [(0,)], 2, 2), RelationPair.of([(1,)], [(1,)], 2, 2)]
    return pol(pairs, max_arity=K, name=f"BINF({K})")


def binf_member(table: bytes, n: int) -> bool:
    """Idempotent with some coordinate below it pointwise."""
    xs = tuples(2, n)
    if table[0] != 0 or table[-1] != 1:
        return False
    return any(all(table[p] >= x[i] for p, x in enumerate(xs)) for i in range(n))


def k3(oriented: bool = False) -> Structure:
    """K3 as the inequality graph; oriented adds the directed 3-cycle as a second relation."""
    rels = {"E": [(x, y) for x in range(3) for y in range(3) if x != y]}
    if oriented:
        rels["R"] = [(0, 1), (1, 2), (2, 0)]
    return Structure.of(3, rels)


def pol_k3(oriented: bool = False) -> FunctionMinion:
    A = k3(oriented)
    return pol_structures(A, A, name="Pol(K3,C3)" if oriented else "Pol(K3)")


def symmetric_binary() -> PresentedMinion:
    return PresentedMinion(Presentation.of([("f", 2)], [(("f", "(1 0 | 2)"), ("f", "(0 1 | 2)"))]), "C2")


def free(arity: int) -> PresentedMinion:
    return PresentedMinion(Presentation.of([("f", arity)]), f"<f:{arity}>")


# cosieves


def _kernel(values: tuple[int, ...]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(v, len(seen)) for v in values)


def partitions(n: int) -> list[tuple[int, ...]]:
    """Set partitions of n as restricted growth strings."""
    out = []

    def grow(prefix: list[int], top: int) -> None:
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in range(top + 2):
            grow(prefix + [v], max(top, v))

    grow([], -1)
    return sorted(out)


def _coarser(p: tuple[int, ...], q: tuple[int, ...]) -> bool:
    """q identifies everything p identifies."""
    return all(q[i] == q[j] for i in range(len(p)) for j in range(i) if p[i] == p[j])


class OmegaMinion(Minion):
    """Cosieves: arity n holds the sets of maps out of n closed under postcomposition.

    A payload is the sorted tuple of members with codomain at most n; a map
    with larger codomain is a member exactly when its image factorization's
    surjective part is.
    """

    kind = "tabulated"

    def __init__(self, name: str = "OMEGA", cutoff: int | None = None) -> None:
        super().__init__(name, cutoff)

    @staticmethod
    def holds(payload: tuple[MinorOp, ...], beta: MinorOp) -> bool:
        surj, _ = image_factorization(beta)
        return surj in payload

    def from_kernels(self, n: int, kernels: Iterable[tuple[int, ...]]) -> tuple[MinorOp, ...]:
        ks = set(kernels)
        return tuple(sorted(b for k in range(1, n + 1) for b in all_maps(n, k) if _kernel(b.values) in ks))

    def _payloads(self, n: int):
        return {self.from_kernels(n, ks) for ks in cosieve_kernel_sets(n)}

    def _act(self, payload, n: int, alpha: MinorOp):
        m = alpha.codomain
        if self.cutoff is not None and m > self.cutoff:
            raise CutoffError(f"{self.name}: arity {m} exceeds cutoff {self.cutoff}")
        return tuple(sorted(b for k in range(1, m + 1) for b in all_maps(m, k) if self.holds(payload, compose(alpha, b))))

    def _valid(self, payload, arity: int) -> bool:
        if not isinstance(payload, tuple):
            return False
        members = set(payload)
        if any(not isinstance(b, MinorOp) or b.domain != arity or b.codomain > arity for b in members):
            return False
        for b in members:
            for k in range(1, arity + 1):
                for g in all_maps(b.codomain, k):
                    if compose(b, g) not in members:
                        return False
        return list(payload) == sorted(members)

    def true(self, n: int) -> Element:
        return self.element(self.from_kernels(n, partitions(n)), n)

    def generated_by(self, gens: Iterable[MinorOp], n: int) -> Element:
        """The least cosieve containing the given maps out of n."""
        gens = list(gens)
        if any(g.domain != n for g in gens):
            raise ValueError(f"generators must start at {n}")
        ks = {p for p in partitions(n) if any(_coarser(_kernel(image_factorization(g)[0].values), p) for g in gens)}
        return self.element(self.from_kernels(n, ks), n)

    def contains_map(self, K: Element, beta: MinorOp) -> bool:
        self.check(K)
        if beta.domain != K.arity:
            raise ValueError("map does not start at the cosieve's arity")
        return self.holds(K.payload, beta)

    def describe(self, f: Element) -> str:
        ks = sorted({_kernel(b.values) for b in f.payload})
        mins = [k for k in ks if not any(j != k and _coarser(j, k) for j in ks)]
        return "<" + " ".join("".join(map(str, k)) for k in mins) + ">"


def cosieve_kernel_sets(n: int) -> list[frozenset]:
    """Up-closed sets of partitions of n, as unions of principal up-sets."""
    parts = partitions(n)
    check_budget(2 ** len(parts), n, "partition subsets")
    ups = {p: frozenset(q for q in parts if _coarser(p, q)) for p in parts}
    out = set()
    for r in range(len(parts) + 1):
        for combo in itertools.combinations(parts, r):
            u = frozenset().union(*(ups[p] for p in combo)) if combo else frozenset()
            out.add(u)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def cosieves_by_closure(n: int) -> list[frozenset]:
    """All sets of maps out of n with codomain <= n closed under postcomposition, by filtering."""
    maps = [b for k in range(1, n + 1) for b in all_maps(n, k)]
    classes: dict[tuple, list[MinorOp]] = {}
    for b in maps:
        classes.setdefault(_kernel(b.values), []).append(b)
    keys = sorted(classes)
    check_budget(2 ** len(keys), n, "kernel subsets")
    out = []
    for mask in range(1 << len(keys)):
        members = {b for i, k in enumerate(keys) if mask >> i & 1 for b in classes[k]}
        closed = all(
            compose(b, g) in members for b in members for k in range(1, n + 1) for g in all_maps(b.codomain, k)
        )
        if closed:
            out.append(frozenset(members))
    return out


def omega(nmax: int = 3, name: str | None = None) -> TabulatedMinion:
    """Omega truncated at nmax with full action tables."""
    return tabulate(OmegaMinion(cutoff=nmax), nmax, name or f"OMEGA({nmax})")


# named minor conditions


def named_conditions(max_arity: int = 5) -> dict[str, str]:
    """pp-sentences for the standard conditions; arity-indexed ones up to max_arity."""
    out = {
        "constant": "exists f:1 . f(0|2) = f(1|2)",
        "symmetric-2": "exists f:2 . f(0 1|2) = f(1 0|2)",
        "siggers": "exists f:4 . f(0 1 2 0|3) = f(1 0 1 2|3)",
        "quasi-majority": "exists f:3 . f(0 0 1|2) = f(0 1 0|2) & f(0 1 0|2) = f(1 0 0|2) & f(1 0 0|2) = f(0 0 0|2)",
        "quasi-maltsev": "exists f:3 . f(0 0 1|2) = f(1 0 0|2) & f(1 0 0|2) = f(1 1 1|2)",
    }
    for n in range(3, max_arity + 1):
        ident = " ".join(map(str, range(n)))
        shift = " ".join(str((i + 1) % n) for i in range(n))
        out[f"symmetric-{n}"] = f"exists f:{n} . f({ident}|{n}) = f({shift}|{n})"
        ones = " ".join(["1"] * n)
        eqs = []
        for i in range(n):
            chi = " ".join("0" if j == i else "1" for j in range(n))
            eqs.append(f"f({chi}|2) = f({ones}|2)")
        out[f"qnu-{n}"] = f"exists f:{n} . " + " & ".join(eqs)
    for k in out:
        pp_parse(out[k])
    return out


def core_j2_characterization(cutoff: int | None = None) -> FunctionMinion:
    """Idempotent boolean functions never taking 1 on both a tuple and its complement."""

    def member(t: bytes, n: int) -> bool:
        last = len(t) - 1
        return all(not (t[i] and t[last - i]) for i in range(len(t)))

    return FunctionMinion(2, 2, "predicate", predicate=member, unaries=[bytes([0, 1])], cutoff=cutoff, name="coreJ2")


# spec names


_NAME = re.compile(r"^\s*([A-Za-z][A-Za-z0-9]*)\s*(?:\(\s*([0-9,\s]*)\)\s*)?$")


def make(name: str) -> Minion:
    """Build a catalog minion from a name such as ``O(2,2)`` or ``KM(3,4)``."""
    m = _NAME.match(name)
    if not m:
        raise ValueError(f"unknown catalog name {name!r}")
    head = m.group(1).upper()
    args = [int(x) for x in m.group(2).split(",") if x.strip()] if m.group(2) is not None else []

    def need(k: int) -> None:
        if len(args) != k:
            raise ValueError(f"{head} takes {k} parameter(s), got {len(args)}")

    if head == "P":
        need(0)
        return projections()
    if head == "CONST":
        need(0)
        return terminal()
    if head == "EMPTY":
        need(0)
        return empty()
    if head == "O":
        need(2)
        return functions(*args)
    if head == "J":
        need(1)
        return idempotents(*args)
    if head == "NC":
        need(2)
        return nonconstant_part(*args)
    if head == "KM":
        return near_unanimity_minion(args)
    if head == "OMEGA":
        if len(args) > 1:
            need(1)
        return omega(*args)
    if head == "BINF":
        need(1)
        return binf(*args)
    if head in ("C", "C2"):
        need(0)
        return symmetric_binary()
    if head == "F":
        need(1)
        return free(*args)
    if head == "POLK3":
        need(0)
        return pol_k3()
    if head == "POLK3C3":
        need(0)
        return pol_k3(oriented=True)
    raise ValueError(f"unknown catalog name {name!r}")


def _positive(*xs: int) -> None:
    if any(x < 1 for x in xs):
        raise ValueError(f"parameters must be positive, got {xs}")


__all__ = [
    "OmegaMinion",
    "binf",
    "binf_member",
    "core_j2_characterization",
    "cosieve_kernel_sets",
    "cosieves_by_closure",
    "empty",
    "free",
    "functions",
    "idempotents",
    "k3",
    "near_unanimity_minion",
    "make",
    "named_conditions",
    "near_unanimity_table",
    "nonconstant_part",
    "not_all_zero",
    "omega",
    "partitions",
    "pol_k3",
    "projections",
    "symmetric_binary",
    "terminal",
]
