"""Products, sums, restrictions, reflections, subtraction and exponentials."""

from __future__ import annotations

from typing import Sequence

from .base import Element, Minion, MinionError, UnsupportedError
from .basic import EmptyMinion
from .funmin import FunctionMinion, tuples
from .minors import MinorOp, constant_map, copair, identity, juxtapose_maps
from .morphisms import Hom
from .presented import Presentation, assignments, product_with_projection_power, sum_presentation


class UnknownVerdictError(MinionError):
    """A construction needed a hom test that only bounded search could answer."""


class DerivedMinion(Minion):
    kind = "derived"
    constructor = "derived"

    def __init__(self, name: str, operands: Sequence[Minion], cutoff: int | None = None) -> None:
        super().__init__(name, cutoff)
        self.operands = tuple(operands)


def _min_cutoff(*ms: Minion) -> int | None:
    cs = [m.cutoff for m in ms if m.cutoff is not None]
    return min(cs) if cs else None


class ProductMinion(DerivedMinion):
    """M x N with pairs acted on componentwise."""

    constructor = "product"

    def __init__(self, M: Minion, N: Minion, name: str | None = None) -> None:
        super().__init__(name or f"({M.name} x {N.name})", (M, N), _min_cutoff(M, N))
        self.left, self.right = M, N

    def _payloads(self, n: int):
        ls = self.left.elements(n)
        rs = self.right.elements(n)
        return ((f.payload, g.payload) for f in ls for g in rs)

    def sort_key(self, payload):
        return (self.left.sort_key(payload[0]), self.right.sort_key(payload[1]))

    def _act(self, payload, n: int, alpha: MinorOp):
        return (self.left._act(payload[0], n, alpha), self.right._act(payload[1], n, alpha))

    def _valid(self, payload, arity: int) -> bool:
        return (
            isinstance(payload, tuple)
            and len(payload) == 2
            and self.left._valid(payload[0], arity)
            and self.right._valid(payload[1], arity)
        )

    def pair(self, f: Element, g: Element) -> Element:
        self.left.check(f)
        self.right.check(g)
        if f.arity != g.arity:
            raise ValueError("components of different arities")
        return Element(f.arity, (f.payload, g.payload), self)

    def first(self, f: Element) -> Element:
        return Element(f.arity, f.payload[0], self.left)

    def second(self, f: Element) -> Element:
        return Element(f.arity, f.payload[1], self.right)

    def projections(self) -> tuple[Hom, Hom]:
        return (
            Hom(self, self.left, self.first, "projection"),
            Hom(self, self.right, self.second, "projection"),
        )

    def essential_bound(self) -> int | None:
        a, b = self.left.essential_bound(), self.right.essential_bound()
        return None if a is None or b is None else max(1, a + b)

    def describe(self, f: Element) -> str:
        return f"({self.left.describe(self.first(f))}, {self.right.describe(self.second(f))})"


class SumMinion(DerivedMinion):
    """M + N: tagged elements, acted on inside each summand."""

    constructor = "sum"

    def __init__(self, M: Minion, N: Minion, name: str | None = None) -> None:
        super().__init__(name or f"({M.name} + {N.name})", (M, N), _min_cutoff(M, N))
        self.summands = (M, N)

    def _payloads(self, n: int):
        for tag, S in enumerate(self.summands):
            for f in S.elements(n):
                yield (tag, f.payload)

    def sort_key(self, payload):
        return (payload[0], self.summands[payload[0]].sort_key(payload[1]))

    def _act(self, payload, n: int, alpha: MinorOp):
        tag, p = payload
        return (tag, self.summands[tag]._act(p, n, alpha))

    def _valid(self, payload, arity: int) -> bool:
        return (
            isinstance(payload, tuple)
            and len(payload) == 2
            and payload[0] in (0, 1)
            and self.summands[payload[0]]._valid(payload[1], arity)
        )

    def inject(self, tag: int, f: Element) -> Element:
        self.summands[tag].check(f)
        return Element(f.arity, (tag, f.payload), self)

    def component(self, f: Element) -> tuple[int, Element]:
        tag, p = f.payload
        return tag, Element(f.arity, p, self.summands[tag])

    def injections(self) -> tuple[Hom, Hom]:
        return tuple(
            Hom(S, self, (lambda f, t=t: self.inject(t, f)), "injection") for t, S in enumerate(self.summands)
        )

    def presentation(self) -> Presentation | None:
        p, q = (S.presentation() for S in self.summands)
        if p is None or q is None:
            return None
        return sum_presentation(p, q)

    def word_of(self, f: Element) -> tuple[int, MinorOp]:
        tag, g = self.component(f)
        i, al = self.summands[tag].word_of(g)
        if tag == 1:
            i += len(self.summands[0].presentation().generators)
        return i, al

    def essential_bound(self) -> int | None:
        a, b = (S.essential_bound() for S in self.summands)
        return None if a is None or b is None else max(a, b)

    def describe(self, f: Element) -> str:
        tag, g = self.component(f)
        return f"in{tag}:{self.summands[tag].describe(g)}"


def product(M: Minion, N: Minion, name: str | None = None) -> ProductMinion:
    return ProductMinion(M, N, name)


def sum(M: Minion, N: Minion, name: str | None = None) -> SumMinion:  # noqa: A001
    return SumMinion(M, N, name)


def juxtapose(f: Element, g: Element, P: ProductMinion) -> Element:
    """f x g = (f i1, g i2) at arity ar f + ar g."""
    l, k = f.arity, g.arity
    i1 = MinorOp(tuple(range(l)), l + k)
    i2 = MinorOp(tuple(range(l, l + k)), l + k)
    return P.pair(P.left.act(f, i1), P.right.act(g, i2))


# restriction to a unary


class RestrictedMinion(DerivedMinion):
    """M restricted to the elements whose unary minor is u."""

    constructor = "restrict"

    def __init__(self, M: Minion, u: Element, name: str | None = None) -> None:
        M.check(u)
        if u.arity != 1:
            raise ValueError("restriction needs a unary element")
        super().__init__(name or f"{M.name}|{M.describe(u)}", (M,), M.cutoff)
        self.base, self.u = M, u

    def _payloads(self, n: int):
        M = self.base
        tau = constant_map(n)
        return (f.payload for f in M.elements(n) if M._act(f.payload, n, tau) == self.u.payload)

    def sort_key(self, payload):
        return self.base.sort_key(payload)

    def _act(self, payload, n: int, alpha: MinorOp):
        return self.base._act(payload, n, alpha)

    def _valid(self, payload, arity: int) -> bool:
        return self.base._valid(payload, arity) and self.base._act(payload, arity, constant_map(arity)) == self.u.payload

    def essential_bound(self) -> int | None:
        return self.base.essential_bound()

    def describe(self, f: Element) -> str:
        return self.base.describe(Element(f.arity, f.payload, self.base))


def restrict_unary(M: Minion, u: Element, name: str | None = None) -> Minion:
    M.check(u)
    if u.arity != 1:
        raise ValueError("restriction needs a unary element")
    if isinstance(M, FunctionMinion) and M.mode != "generated":
        keep = {u.payload} if M.unaries is None else {u.payload} & M.unaries
        return FunctionMinion(
            M.a,
            M.b,
            M.mode,
            pairs=M.pairs,
            predicate=M.predicate,
            unaries=keep,
            cutoff=M.cutoff,
            name=name or f"{M.name}|{M.describe(u)}",
            unary_determined=M.unary_determined,
        )
    return RestrictedMinion(M, u, name)


def unary_decompose(M: Minion) -> list[tuple[Element, Minion]]:
    return [(u, restrict_unary(M, u)) for u in M.elements(1)]


# reflections between function minions


def reflection(l: Sequence[int], r: Sequence[int], source: FunctionMinion, target: FunctionMinion) -> Hom:
    """f -> r . f . l^n from O(A, B) to O(A', B') for l: A' -> A and r: B -> B'."""
    l, r = tuple(l), tuple(r)
    if len(l) != target.a or any(not 0 <= v < source.a for v in l):
        raise ValueError("l must map the target's domain into the source's domain")
    if len(r) != source.b or any(not 0 <= v < target.b for v in r):
        raise ValueError("r must map the source's codomain into the target's codomain")
    cache: dict[int, list[int]] = {}

    def positions(n: int) -> list[int]:
        pos = cache.get(n)
        if pos is None:
            pos = []
            for x in tuples(target.a, n):
                i = 0
                for v in x:
                    i = i * source.a + l[v]
                pos.append(i)
            cache[n] = pos
        return pos

    def fn(f: Element) -> Element:
        t = f.payload
        return Element(f.arity, bytes(r[t[p]] for p in positions(f.arity)), target)

    return Hom(source, target, fn, "reflection", data=(l, r))


# subtraction


def subtract(L: Minion, M: Minion, bound: int | None = None, name: str | None = None) -> Minion:
    """The sum of the components of L with no homomorphism to M."""
    from .homsearch import decide

    kept = []
    verdicts = {}
    for u, comp in unary_decompose(L):
        v = decide(comp, M, bound=bound)
        verdicts[u.payload] = v
        if v.value == "unknown":
            raise UnknownVerdictError(f"hom {comp.name} -> {M.name} unknown up to arity {v.bound}")
        if v.value == "no":
            kept.append(comp)
    if not kept:
        out: Minion = EmptyMinion(name or f"{L.name}\\{M.name}")
    else:
        out = kept[0]
        for c in kept[1:]:
            out = SumMinion(out, c)
        if name:
            out.name = name
    out.verdicts = verdicts
    return out


# exponentials


class ExponentialMinion(DerivedMinion):
    """N^M for a presented M: arity n holds the homs P^n x M -> N as generator images."""

    constructor = "exponential"

    def __init__(self, N: Minion, M: Minion, name: str | None = None) -> None:
        pres = M.presentation()
        if pres is None:
            raise UnsupportedError(f"exponent {M.name} has no finite presentation")
        self.pres = pres.normalized()
        cut = None
        if N.cutoff is not None:
            top = max([a for _, a in self.pres.generators] + [al.codomain for (_, al), _ in self.pres.relations] + [0])
            cut = N.cutoff - top
            if cut < 1:
                raise UnsupportedError(f"{N.name} is too truncated for the exponent {M.name}")
        super().__init__(name or f"{N.name}^{M.name}", (N, M), cut)
        self.target, self.exponent = N, M
        self.symbols = [s for s, _ in self.pres.generators]
        self.arities = [a for _, a in self.pres.generators]

    def _payloads(self, n: int):
        lifted = product_with_projection_power(self.pres, n)
        for asg in assignments(lifted, self.target):
            yield tuple(asg[s].payload for s in self.symbols)

    def sort_key(self, payload):
        return tuple(self.target.sort_key(p) for p in payload)

    def _act(self, payload, n: int, alpha: MinorOp):
        return tuple(
            self.target._act(p, n + a, juxtapose_maps(alpha, identity(a))) for p, a in zip(payload, self.arities)
        )

    def _valid(self, payload, arity: int) -> bool:
        if not isinstance(payload, tuple) or len(payload) != len(self.symbols):
            return False
        N = self.target
        if not all(N._valid(p, arity + a) for p, a in zip(payload, self.arities)):
            return False
        idn = identity(arity)
        val = dict(zip(self.symbols, zip(payload, self.arities)))
        for (s, al), (t, be) in self.pres.relations:
            (p, a), (q, b) = val[s], val[t]
            if N._act(p, arity + a, juxtapose_maps(idn, al)) != N._act(q, arity + b, juxtapose_maps(idn, be)):
                return False
        return True

    def images(self, f: Element) -> dict[str, Element]:
        """The generator images of f as elements of the base."""
        return {s: Element(f.arity + a, p, self.target) for s, a, p in zip(self.symbols, self.arities, f.payload)}

    def evaluate(self, f: Element, m: Element) -> Element:
        """The value of the hom f: P^n x M -> N at (id_n, m)."""
        self.check(f)
        self.exponent.check(m)
        if not hasattr(self.exponent, "symbols"):
            raise UnsupportedError("evaluation needs a presented exponent")
        if m.arity != f.arity:
            raise ValueError("evaluation needs matching arities")
        i, beta = m.payload
        s = self.exponent.symbols[i]
        k = self.symbols.index(s)
        return Element(
            f.arity,
            self.target._act(f.payload[k], f.arity + self.arities[k], copair(identity(f.arity), MinorOp(beta, f.arity))),
            self.target,
        )

    def describe(self, f: Element) -> str:
        N = self.target
        parts = [f"{s}->{N.describe(g)}" for s, g in self.images(f).items()]
        return "{" + ", ".join(parts) + "}"


def exponential(N: Minion, M: Minion, n: int | None = None):
    """N^M as a minion, or its arity-n elements when n is given."""
    E = ExponentialMinion(N, M)
    return E if n is None else E.elements(n)


def curry(B: Hom, E: ExponentialMinion | None = None) -> Hom:
    """Turn B: L x M -> N into L -> N^M."""
    P = B.source
    if not isinstance(P, ProductMinion):
        raise ValueError("curry needs a map out of a product")
    L, M, N = P.left, P.right, B.target
    if E is None:
        E = ExponentialMinion(N, M)
    elif E.target is not N or E.exponent is not M:
        raise ValueError("exponential does not match the map")
    if not hasattr(M, "symbols"):
        raise UnsupportedError("curry needs a presented second factor")
    gens = M.generators()

    def fn(l: Element) -> Element:
        n = l.arity
        imgs = []
        for g, a in zip(gens, E.arities):
            i1 = MinorOp(tuple(range(n)), n + a)
            i2 = MinorOp(tuple(range(n, n + a)), n + a)
            imgs.append(B(P.pair(L.act(l, i1), M.act(g, i2))).payload)
        return E.element(tuple(imgs), n)

    return Hom(L, E, fn, "curried", data=B)


def uncurry(A: Hom) -> Hom:
    """Turn A: L -> N^M into L x M -> N."""
    E = A.target
    if not isinstance(E, ExponentialMinion):
        raise ValueError("uncurry needs a map into an exponential")
    L = A.source
    P = ProductMinion(L, E.exponent)

    def fn(x: Element) -> Element:
        return E.evaluate(A(P.first(x)), P.second(x))

    return Hom(P, E.target, fn, "uncurried", data=A)


def distribute(L: Minion, M: Minion, N: Minion) -> Hom:
    """The isomorphism L x (M + N) -> (L x M) + (L x N)."""
    src = ProductMinion(L, SumMinion(M, N))
    tgt = SumMinion(ProductMinion(L, M), ProductMinion(L, N))

    def fn(x: Element) -> Element:
        l, (tag, p) = x.payload
        return Element(x.arity, (tag, (l, p)), tgt)

    return Hom(src, tgt, fn, "distributor")


def sum_of(ms: Sequence[Minion]) -> Minion:
    if not ms:
        return EmptyMinion()
    out = ms[0]
    for m in ms[1:]:
        out = SumMinion(out, m)
    return out


def product_of(ms: Sequence[Minion]) -> Minion:
    from .basic import TerminalMinion

    if not ms:
        return TerminalMinion()
    out = ms[0]
    for m in ms[1:]:
        out = ProductMinion(out, m)
    return out


__all__ = [
    "DerivedMinion",
    "ExponentialMinion",
    "ProductMinion",
    "RestrictedMinion",
    "SumMinion",
    "UnknownVerdictError",
    "curry",
    "distribute",
    "exponential",
    "juxtapose",
    "product",
    "product_of",
    "reflection",
    "restrict_unary",
    "subtract",
    "sum",
    "sum_of",
    "uncurry",
    "unary_decompose",
]
