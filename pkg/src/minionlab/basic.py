"""The empty minion, the projection minion and the terminal minion."""

from __future__ import annotations

from .base import Element, Minion
from .minors import MinorOp
from .presented import Presentation


class EmptyMinion(Minion):
    kind = "derived"

    def __init__(self, name: str = "EMPTY") -> None:
        super().__init__(name)

    def _payloads(self, n: int):
        return ()

    def _act(self, payload, n: int, alpha: MinorOp):
        raise AssertionError("the empty minion has no elements")

    def _valid(self, payload, arity: int) -> bool:
        return False

    def presentation(self) -> Presentation:
        return Presentation()

    def essential_bound(self) -> int:
        return 0


class ProjectionMinion(Minion):
    """P: arity n is {0, ..., n-1} and alpha acts by evaluation."""

    kind = "derived"

    def __init__(self, name: str = "P") -> None:
        super().__init__(name)

    def _payloads(self, n: int):
        return range(n)

    def _act(self, payload: int, n: int, alpha: MinorOp) -> int:
        return alpha.values[payload]

    def _valid(self, payload, arity: int) -> bool:
        return isinstance(payload, int) and 0 <= payload < arity

    def presentation(self) -> Presentation:
        return Presentation.of([("f", 1)])

    def essential_bound(self) -> int:
        return 1

    def word_of(self, f: Element) -> tuple[int, MinorOp]:
        return 0, MinorOp((f.payload,), f.arity)

    def projection(self, i: int, n: int) -> Element:
        return self.element(i, n)

    def describe(self, f: Element) -> str:
        return f"pi{f.payload}"


class TerminalMinion(Minion):
    """*: one element in every arity."""

    kind = "derived"

    def __init__(self, name: str = "CONST") -> None:
        super().__init__(name)

    def _payloads(self, n: int):
        return (0,)

    def _act(self, payload: int, n: int, alpha: MinorOp) -> int:
        return 0

    def _valid(self, payload, arity: int) -> bool:
        return payload == 0

    def presentation(self) -> Presentation:
        return Presentation.of([("c", 1)], [(("c", "(0 | 2)"), ("c", "(1 | 2)"))])

    def essential_bound(self) -> int:
        return 0

    def word_of(self, f: Element) -> tuple[int, MinorOp]:
        return 0, MinorOp((0,), f.arity)

    def describe(self, f: Element) -> str:
        return "*"
