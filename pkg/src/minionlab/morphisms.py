"""Homomorphisms between minions as checkable objects."""

from __future__ import annotations

from typing import Callable

from .base import ConsistencyError, Element, Minion
from .minors import all_maps


class Hom:
    """A map of minions given by a function on elements.

    ``kind`` records how the map was obtained and ``bound`` is set when the
    map is only known to commute up to that arity.
    """

    def __init__(
        self,
        source: Minion,
        target: Minion,
        fn: Callable[[Element], Element],
        kind: str = "explicit",
        data: object = None,
        bound: int | None = None,
    ) -> None:
        self.source = source
        self.target = target
        self._fn = fn
        self.kind = kind
        self.data = data
        self.bound = bound

    def __call__(self, f: Element) -> Element:
        self.source.check(f)
        if self.bound is not None and f.arity > self.bound:
            raise ValueError(f"map only defined up to arity {self.bound}")
        return self._fn(f)

    def then(self, other: "Hom") -> "Hom":
        if other.source is not self.target:
            raise ValueError("maps do not compose")
        bound = min(b for b in (self.bound, other.bound, 10 ** 9) if b is not None)
        return Hom(self.source, other.target, lambda f: other(self(f)), "composite", bound=None if bound == 10 ** 9 else bound)

    def table(self, n: int) -> dict:
        return {f.payload: self(f).payload for f in self.source.elements(n)}

    def failures(self, max_arity: int, limit: int = 1) -> list:
        """Commuting-square and membership failures up to max_arity."""
        out = []
        top = max_arity if self.bound is None else min(max_arity, self.bound)
        for n in range(1, top + 1):
            for f in self.source.elements(n):
                g = self(f)
                if g.owner is not self.target and not self.target.contains(g):
                    out.append(("membership", f, g))
                    if len(out) >= limit:
                        return out
                for k in range(1, top + 1):
                    for alpha in all_maps(n, k):
                        lhs = self(self.source.act(f, alpha))
                        rhs = self.target.act(g, alpha) if g.owner is self.target else _foreign_act(self.target, g, alpha)
                        if lhs != rhs:
                            out.append(("square", f, alpha))
                            if len(out) >= limit:
                                return out
        return out

    def verify(self, max_arity: int) -> bool:
        return not self.failures(max_arity)

    def check(self, max_arity: int) -> "Hom":
        bad = self.failures(max_arity)
        if bad:
            raise ConsistencyError(f"not a homomorphism: {bad[0]!r}")
        return self

    def is_injective(self, max_arity: int) -> bool:
        for n in range(1, max_arity + 1):
            imgs = [self(f) for f in self.source.elements(n)]
            if len(set(imgs)) != len(imgs):
                return False
        return True

    def is_surjective(self, max_arity: int) -> bool:
        for n in range(1, max_arity + 1):
            imgs = {self(f) for f in self.source.elements(n)}
            if len(imgs) != self.target.size(n):
                return False
        return True

    def __repr__(self) -> str:
        b = "" if self.bound is None else f", bound={self.bound}"
        return f"Hom({self.source.name} -> {self.target.name}, {self.kind}{b})"


def _foreign_act(M: Minion, g: Element, alpha):
    return Element(alpha.codomain, M._act(g.payload, g.arity, alpha), M)


def identity_hom(M: Minion) -> Hom:
    return Hom(M, M, lambda f: f, "identity")


def inclusion_hom(M: Minion, N: Minion) -> Hom:
    """The identity on payloads from a subminion M into N."""
    return Hom(M, N, lambda f: N.element(f.payload, f.arity), "inclusion")
