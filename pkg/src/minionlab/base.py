"""The minion abstraction shared by every representation."""

from __future__ import annotations

import contextlib
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Iterator

from .minors import MinorOp, all_maps, constant_map


class MinionError(Exception):
    """Base class for library errors."""


class ForeignElementError(MinionError, ValueError):
    """An element was used with a minion that does not own it."""


class CutoffError(MinionError):
    """An arity beyond a representation's materializable range was requested."""


class ResourceError(MinionError):
    """A configured element or search budget was exceeded."""


class ConsistencyError(MinionError):
    """Two computations that must agree did not."""


class UnsupportedError(MinionError):
    """The requested construction is outside what the library computes."""


@dataclass
class Limits:
    element_budget: int = 300_000
    column_budget: int = 20_000_000
    search_budget: int = 2_000_000


LIMITS = Limits()


@contextlib.contextmanager
def limits(**changes: int) -> Iterator[Limits]:
    """Temporarily override budgets."""
    old = {k: getattr(LIMITS, k) for k in changes}
    for k, v in changes.items():
        setattr(LIMITS, k, v)
    try:
        yield LIMITS
    finally:
        for k, v in old.items():
            setattr(LIMITS, k, v)


def check_budget(count: int, n: int, what: str = "elements") -> None:
    if count > LIMITS.element_budget:
        raise ResourceError(
            f"arity {n}: {count} {what} exceed the element budget {LIMITS.element_budget}"
        )


class Element:
    """An element of a minion at a fixed arity.

    Equality and hashing use (arity, payload); the owner is carried so that
    minions can reject elements they did not produce.
    """

    __slots__ = ("arity", "payload", "owner")

    def __init__(self, arity: int, payload: Hashable, owner: "Minion") -> None:
        self.arity = arity
        self.payload = payload
        self.owner = owner

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.arity == other.arity and self.payload == other.payload

    def __hash__(self) -> int:
        return hash((self.arity, self.payload))

    def __lt__(self, other: "Element") -> bool:
        return (self.arity, self.owner.sort_key(self.payload)) < (
            other.arity,
            other.owner.sort_key(other.payload),
        )

    def __repr__(self) -> str:
        return f"<{self.owner.describe(self)} : {self.arity}>"


class Minion:
    """A functor from positive finite ordinals to finite sets.

    Subclasses implement ``_payloads`` (arity-n enumeration) and ``_act``.
    """

    kind = "abstract"

    def __init__(self, name: str, cutoff: int | None = None) -> None:
        self.name = name
        self.cutoff = cutoff
        self._elements: dict[int, list[Element]] = {}
        self._index: dict[int, dict[Hashable, int]] = {}

    # enumeration

    def _payloads(self, n: int) -> Iterable[Hashable]:
        raise NotImplementedError

    def sort_key(self, payload: Hashable) -> Any:
        return payload

    def elements(self, n: int) -> list[Element]:
        if n < 1:
            raise ValueError("arities start at 1")
        if self.cutoff is not None and n > self.cutoff:
            raise CutoffError(f"{self.name}: arity {n} exceeds cutoff {self.cutoff}")
        cached = self._elements.get(n)
        if cached is None:
            seen = set()
            for p in self._payloads(n):
                seen.add(p)
                check_budget(len(seen), n)
            cached = [Element(n, p, self) for p in sorted(seen, key=self.sort_key)]
            self._elements[n] = cached
        return cached

    def size(self, n: int) -> int:
        return len(self.elements(n))

    def index(self, f: Element) -> int:
        table = self._index.get(f.arity)
        if table is None:
            table = {e.payload: i for i, e in enumerate(self.elements(f.arity))}
            self._index[f.arity] = table
        return table[f.payload]

    def is_empty(self) -> bool:
        return self.size(1) == 0

    # action

    def _act(self, payload: Hashable, n: int, alpha: MinorOp) -> Hashable:
        raise NotImplementedError

    def check(self, f: Element) -> None:
        if f.owner is not self:
            raise ForeignElementError(f"{f!r} does not belong to {self.name}")

    def act(self, f: Element, alpha: MinorOp) -> Element:
        self.check(f)
        if len(alpha.values) != f.arity:
            raise ValueError(f"{alpha.literal()} does not start at arity {f.arity}")
        return Element(alpha.codomain, self._act(f.payload, f.arity, alpha), self)

    def element(self, payload: Hashable, arity: int) -> Element:
        """Wrap a payload as an element of this minion, checking membership."""
        f = Element(arity, payload, self)
        if not self._valid(payload, arity):
            raise ForeignElementError(f"{payload!r} is not an arity-{arity} element of {self.name}")
        return f

    def _valid(self, payload: Hashable, arity: int) -> bool:
        return any(e.payload == payload for e in self.elements(arity))

    def contains(self, f: Element) -> bool:
        if f.owner is self:
            return True
        return self._valid(f.payload, f.arity)

    def unary(self, f: Element) -> Element:
        """The unary minor f(0, ..., 0)."""
        return self.act(f, constant_map(f.arity))

    # metadata used by decision procedures

    def presentation(self):
        """A finite presentation when one is known exactly, else None."""
        return None

    def essential_bound(self) -> int | None:
        """An upper bound on the essential arity when the minion is finitely generated."""
        return None

    def word_of(self, f: Element) -> tuple[int, MinorOp]:
        """(generator index, minor) with f = generator . minor, for presented minions."""
        raise UnsupportedError(f"{self.name} has no generator words")

    def max_arity(self) -> int | None:
        return self.cutoff

    def describe(self, f: Element) -> str:
        return str(f.payload)

    def encode(self, f: Element) -> Any:
        return self.describe(f)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


def act(M: Minion, f: Element, alpha: MinorOp) -> Element:
    return M.act(f, alpha)


class TabulatedMinion(Minion):
    """Explicit arity sets up to a cutoff with full action tables."""

    kind = "tabulated"

    def __init__(
        self,
        name: str,
        cutoff: int,
        labels: dict[int, list[Hashable]],
        tables: dict[MinorOp, tuple[int, ...]],
        describe_label=None,
    ) -> None:
        super().__init__(name, cutoff)
        self.labels = labels
        self.tables = tables
        self._describe_label = describe_label or str

    def _payloads(self, n: int) -> Iterable[int]:
        return range(len(self.labels[n]))

    def _act(self, payload: int, n: int, alpha: MinorOp) -> int:
        if alpha.codomain > self.cutoff:
            raise CutoffError(f"{self.name}: arity {alpha.codomain} exceeds cutoff {self.cutoff}")
        return self.tables[alpha][payload]

    def act(self, f: Element, alpha: MinorOp) -> Element:
        if alpha.codomain > self.cutoff:
            raise CutoffError(f"{self.name}: arity {alpha.codomain} exceeds cutoff {self.cutoff}")
        return super().act(f, alpha)

    def _valid(self, payload: Hashable, arity: int) -> bool:
        return isinstance(payload, int) and 0 <= payload < len(self.labels.get(arity, ()))

    def label(self, f: Element) -> Hashable:
        return self.labels[f.arity][f.payload]

    def describe(self, f: Element) -> str:
        return self._describe_label(self.labels[f.arity][f.payload])


def tabulate(M: Minion, N: int, name: str | None = None) -> TabulatedMinion:
    """Materialize M up to arity N with action tables for every map between arities <= N."""
    elems = {n: M.elements(n) for n in range(1, N + 1)}
    total = sum(k ** n * len(elems[n]) for n in range(1, N + 1) for k in range(1, N + 1))
    if total > LIMITS.element_budget * 20:
        raise ResourceError(f"tabulating {M.name} to arity {N} needs {total} table entries")
    index = {n: {e.payload: i for i, e in enumerate(elems[n])} for n in elems}
    tables: dict[MinorOp, tuple[int, ...]] = {}
    for n in range(1, N + 1):
        for k in range(1, N + 1):
            for alpha in all_maps(n, k):
                tables[alpha] = tuple(index[k][M.act(f, alpha).payload] for f in elems[n])
    labels = {n: [M.describe(e) for e in elems[n]] for n in elems}
    return TabulatedMinion(name or M.name, N, labels, tables)
