"""Minor operations: maps between the finite ordinals n = {0, ..., n-1}."""

from __future__ import annotations

import itertools
import re
from typing import Iterable, Iterator, NamedTuple


class MinorOp(NamedTuple):
    """A map n -> k stored as its value tuple and its codomain size.

    Construct through ``MinorOp.of`` (validated) or ``minor`` (alias).
    The bare NamedTuple constructor skips validation and is used on hot paths.
    """

    values: tuple[int, ...]
    codomain: int

    @classmethod
    def of(cls, values: Iterable[int], codomain: int) -> "MinorOp":
        vals = tuple(int(v) for v in values)
        if len(vals) < 1:
            raise ValueError("a minor operation needs a nonempty domain")
        if codomain < 1:
            raise ValueError("a minor operation needs a nonempty codomain")
        for v in vals:
            if not 0 <= v < codomain:
                raise ValueError(f"entry {v} outside codomain {codomain}")
        return cls(vals, int(codomain))

    @property
    def domain(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        return self.values[i]

    def then(self, beta: "MinorOp") -> "MinorOp":
        """Diagrammatic composition: first self, then beta."""
        return compose(self, beta)

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.values)))

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.codomain

    def literal(self) -> str:
        return "(" + " ".join(map(str, self.values)) + " | " + str(self.codomain) + ")"

    def __str__(self) -> str:
        return self.literal()


minor = MinorOp.of

_LITERAL = re.compile(r"^\(\s*((?:\d+\s*)+)\|\s*(\d+)\s*\)$")


def parse_minor(text: str) -> MinorOp:
    """Parse the literal ``(a0 a1 ... | k)``."""
    m = _LITERAL.match(text.strip())
    if not m:
        raise ValueError(f"not a minor operation literal: {text!r}")
    return MinorOp.of((int(t) for t in m.group(1).split()), int(m.group(2)))


def compose(alpha: MinorOp, beta: MinorOp) -> MinorOp:
    """alpha: n -> k followed by beta: k -> m."""
    if alpha.codomain != len(beta.values):
        raise ValueError(
            f"cannot compose {alpha.literal()} with {beta.literal()}: "
            f"codomain {alpha.codomain} vs domain {len(beta.values)}"
        )
    bv = beta.values
    return MinorOp(tuple(bv[i] for i in alpha.values), beta.codomain)


def identity(n: int) -> MinorOp:
    return MinorOp.of(range(n), n)


def inclusion(n: int, m: int | None = None) -> MinorOp:
    """The inclusion n -> m (default m = n + 1)."""
    m = n + 1 if m is None else m
    if m < n:
        raise ValueError(f"no inclusion {n} -> {m}")
    return MinorOp.of(range(n), m)


def retraction(n_from: int, n: int) -> MinorOp:
    """The map n_from -> n sending i to min(i, n - 1)."""
    return MinorOp.of((min(i, n - 1) for i in range(n_from)), n)


def constant_map(n: int, k: int = 1, value: int = 0) -> MinorOp:
    """The constant map n -> k with the given value (default the map n -> 1)."""
    return MinorOp.of([value] * n, k)


def point_map(i: int, j: int, n: int, k: int | None = None) -> MinorOp:
    """Send i to j and every other point to itself, as a map n -> k."""
    k = n if k is None else k
    if not 0 <= i < n:
        raise ValueError(f"point {i} not in the domain {n}")
    if not 0 <= j < k:
        raise ValueError(f"point {j} not in the codomain {k}")
    vals = list(range(n))
    vals[i] = j
    return MinorOp.of(vals, k)


def collapse(points: Iterable[int], j: int, n: int, k: int | None = None) -> MinorOp:
    """Send every point of a set to j and every other point to itself."""
    k = n if k is None else k
    pts = set(points)
    if any(not 0 <= p < n for p in pts):
        raise ValueError(f"collapsed set {sorted(pts)} not inside {n}")
    if not 0 <= j < k:
        raise ValueError(f"point {j} not in the codomain {k}")
    return MinorOp.of((j if x in pts else x for x in range(n)), k)


def transposition(n: int) -> MinorOp:
    """Swap 0 and 1 (the identity when n = 1)."""
    vals = list(range(n))
    if n >= 2:
        vals[0], vals[1] = 1, 0
    return MinorOp.of(vals, n)


def cycle(n: int) -> MinorOp:
    """The cyclic shift i -> i + 1 mod n."""
    return MinorOp.of(((i + 1) % n for i in range(n)), n)


def merge_last(n: int) -> MinorOp:
    """The map n -> n sending n - 1 to n - 2 and fixing everything else."""
    if n < 2:
        return identity(n)
    vals = list(range(n))
    vals[n - 1] = n - 2
    return MinorOp.of(vals, n)


def monoid_generators(n: int) -> list[MinorOp]:
    """Generators of the full transformation monoid on n (deduplicated)."""
    out: list[MinorOp] = []
    for g in (transposition(n), cycle(n), merge_last(n)):
        if g not in out and g != identity(n):
            out.append(g)
    return out


def extension(alpha: MinorOp) -> MinorOp:
    """alpha: n -> k extended to n + 1 -> k + 1, sending n to k."""
    return MinorOp.of(alpha.values + (alpha.codomain,), alpha.codomain + 1)


def juxtapose_maps(alpha: MinorOp, beta: MinorOp) -> MinorOp:
    """alpha + beta: n + m -> k + l acting on each summand."""
    shift = alpha.codomain
    return MinorOp.of(alpha.values + tuple(v + shift for v in beta.values), alpha.codomain + beta.codomain)


def copair(alpha: MinorOp, beta: MinorOp) -> MinorOp:
    """[alpha, beta]: n + m -> k for alpha: n -> k and beta: m -> k."""
    if alpha.codomain != beta.codomain:
        raise ValueError("copairing needs a shared codomain")
    return MinorOp.of(alpha.values + beta.values, alpha.codomain)


def all_maps(n: int, k: int) -> Iterator[MinorOp]:
    """Every map n -> k in lexicographic order of value tuples."""
    for vals in itertools.product(range(k), repeat=n):
        yield MinorOp(vals, k)


def surjections(n: int, k: int) -> Iterator[MinorOp]:
    for alpha in all_maps(n, k):
        if len(set(alpha.values)) == k:
            yield alpha


def image_factorization(alpha: MinorOp) -> tuple[MinorOp, MinorOp]:
    """Split alpha into a surjection onto its image and an order-preserving injection."""
    img = alpha.image()
    pos = {v: i for i, v in enumerate(img)}
    surj = MinorOp(tuple(pos[v] for v in alpha.values), len(img))
    inj = MinorOp(img, alpha.codomain)
    return surj, inj


def monoid_closure(gens: Iterable[MinorOp], n: int) -> set[MinorOp]:
    """All composites of the given maps n -> n, including the identity."""
    seen = {identity(n)}
    frontier = list(seen)
    gens = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = compose(a, g)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen
