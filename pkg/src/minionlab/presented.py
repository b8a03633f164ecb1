"""Free minions, presentations by generators and relations, and pp-sentence gadgets."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from networkx.utils import UnionFind

from .base import Element, Minion, check_budget
from .minors import MinorOp, all_maps, identity, juxtapose_maps, parse_minor

Word = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class Presentation:
    """Generators (symbol, arity) and relations s alpha = s' alpha' sharing a codomain."""

    generators: tuple[tuple[str, int], ...] = ()
    relations: tuple[tuple[tuple[str, MinorOp], tuple[str, MinorOp]], ...] = ()

    def __post_init__(self) -> None:
        names = [s for s, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator symbols in {names}")
        ar = dict(self.generators)
        for s, a in self.generators:
            if a < 1:
                raise ValueError(f"generator {s} needs a positive arity")
        for (s, al), (t, be) in self.relations:
            for sym, op in ((s, al), (t, be)):
                if sym not in ar:
                    raise ValueError(f"relation uses unknown symbol {sym}")
                if op.domain != ar[sym]:
                    raise ValueError(f"{sym}{op.literal()} does not match the arity {ar[sym]} of {sym}")
            if al.codomain != be.codomain:
                raise ValueError(f"relation sides have codomains {al.codomain} and {be.codomain}")

    @classmethod
    def of(cls, generators: Iterable[tuple[str, int]], relations: Iterable = ()) -> "Presentation":
        rels = []
        for (s, al), (t, be) in relations:
            al = al if isinstance(al, MinorOp) else parse_minor(al)
            be = be if isinstance(be, MinorOp) else parse_minor(be)
            rels.append(((s, al), (t, be)))
        return cls(tuple((s, int(a)) for s, a in generators), tuple(rels))

    def arity(self, symbol: str) -> int:
        return dict(self.generators)[symbol]

    def symbol_index(self, symbol: str) -> int:
        return [s for s, _ in self.generators].index(symbol)

    def max_arity(self) -> int:
        return max((a for _, a in self.generators), default=0)

    def normalized(self) -> "Presentation":
        """Shrink each relation's codomain to the union of the two images."""
        out = []
        for (s, al), (t, be) in self.relations:
            img = sorted(set(al.values) | set(be.values))
            if len(img) < al.codomain:
                pos = {v: i for i, v in enumerate(img)}
                al = MinorOp(tuple(pos[v] for v in al.values), len(img))
                be = MinorOp(tuple(pos[v] for v in be.values), len(img))
            out.append(((s, al), (t, be)))
        return Presentation(self.generators, tuple(out))

    def text(self) -> str:
        lines = [f"gen {s} {a}" for s, a in self.generators]
        lines += [f"rel {s} {al.literal()} = {t} {be.literal()}" for (s, al), (t, be) in self.relations]
        return "\n".join(lines)


class PresentedMinion(Minion):
    """The minion presented by generators and relations; elements are least words."""

    kind = "presented"

    def __init__(self, presentation: Presentation, name: str | None = None) -> None:
        super().__init__(name or "presented")
        self.pres = presentation.normalized()
        self.symbols = [s for s, _ in self.pres.generators]
        self.arities = [a for _, a in self.pres.generators]
        self._rels = [
            ((self.symbols.index(s), al), (self.symbols.index(t), be)) for (s, al), (t, be) in self.pres.relations
        ]
        self._reps: dict[int, dict[Word, Word]] = {}

    def words(self, n: int) -> list[Word]:
        total = sum(n ** a for a in self.arities)
        check_budget(total, n, "words")
        return [(i, alpha.values) for i, a in enumerate(self.arities) for alpha in all_maps(a, n)]

    def classes(self, n: int) -> dict[Word, Word]:
        """Word -> least word of its class at arity n."""
        reps = self._reps.get(n)
        if reps is None:
            words = self.words(n)
            uf = UnionFind(words)
            for (i, al), (j, be) in self._rels:
                for beta in all_maps(al.codomain, n):
                    bv = beta.values
                    uf.union((i, tuple(bv[v] for v in al.values)), (j, tuple(bv[v] for v in be.values)))
            reps = {}
            for block in uf.to_sets():
                least = min(block)
                for w in block:
                    reps[w] = least
            self._reps[n] = reps
        return reps

    def _payloads(self, n: int):
        return set(self.classes(n).values())

    def _act(self, payload: Word, n: int, alpha: MinorOp) -> Word:
        i, vals = payload
        av = alpha.values
        return self.classes(alpha.codomain)[(i, tuple(av[v] for v in vals))]

    def _valid(self, payload, arity: int) -> bool:
        return self.classes(arity).get(payload) == payload

    def word(self, symbol: str, alpha: MinorOp | str) -> Element:
        """The class of the word symbol(alpha)."""
        alpha = alpha if isinstance(alpha, MinorOp) else parse_minor(alpha)
        i = self.symbols.index(symbol)
        if alpha.domain != self.arities[i]:
            raise ValueError(f"{symbol} has arity {self.arities[i]}")
        return Element(alpha.codomain, self.classes(alpha.codomain)[(i, alpha.values)], self)

    def generators(self) -> list[Element]:
        return [self.word(s, identity(a)) for s, a in zip(self.symbols, self.arities)]

    def presentation(self) -> Presentation:
        return self.pres

    def essential_bound(self) -> int | None:
        return max(self.arities, default=1)

    def word_of(self, f: Element) -> tuple[int, MinorOp]:
        i, vals = f.payload
        return i, MinorOp(vals, f.arity)

    def describe(self, f: Element) -> str:
        i, vals = f.payload
        return f"{self.symbols[i]}({' '.join(map(str, vals))}|{f.arity})"


def free_minion(S: Iterable[tuple[str, int]], name: str | None = None) -> PresentedMinion:
    S = list(S)
    label = name or "<" + ", ".join(f"{s}:{a}" for s, a in S) + ">"
    return PresentedMinion(Presentation.of(S), label)


def congruence_close(P: Presentation, n: int) -> dict[Word, list[Word]]:
    """The classes of arity-n words, keyed by their least member."""
    if n < 1:
        raise ValueError("arities start at 1")
    reps = PresentedMinion(P).classes(n)
    out: dict[Word, list[Word]] = {}
    for w, r in reps.items():
        out.setdefault(r, []).append(w)
    return {r: sorted(ws) for r, ws in sorted(out.items())}


def product_with_projection_power(P: Presentation, n: int) -> Presentation:
    """Presentation of P^n x M: generators of arity n + ar s, relations fixing the first n coordinates."""
    gens = tuple((s, n + a) for s, a in P.generators)
    idn = identity(n)
    rels = tuple(
        ((s, juxtapose_maps(idn, al)), (t, juxtapose_maps(idn, be))) for (s, al), (t, be) in P.normalized().relations
    )
    return Presentation(gens, rels)


def sum_presentation(P: Presentation, Q: Presentation) -> Presentation:
    """Disjoint union of two presentations; clashing symbols of Q get a suffix."""
    taken = {s for s, _ in P.generators}
    rename = {}
    for s, _ in Q.generators:
        t = s
        k = 1
        while t in taken:
            k += 1
            t = f"{s}{k}"
        taken.add(t)
        rename[s] = t
    gens = P.generators + tuple((rename[s], a) for s, a in Q.generators)
    rels = P.relations + tuple(((rename[s], al), (rename[t], be)) for (s, al), (t, be) in Q.relations)
    return Presentation(gens, rels)


# pp-sentences


class PPSyntaxError(ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|(?P<sym>[:,.=&()|]))")


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            at = len(text) - len(text[pos:].lstrip())
            raise PPSyntaxError(f"unexpected character {text[at]!r}", at)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def pp_parse(text: str) -> Presentation:
    """Parse ``exists f:k, g:m . w = w & w = w`` into a presentation."""
    toks = _tokens(text)
    i = 0

    def expect(kind: str, value: str | None = None) -> tuple[str, str, int]:
        nonlocal i
        k, v, p = toks[i]
        if k != kind or (value is not None and v != value):
            want = value if value is not None else kind
            raise PPSyntaxError(f"expected {want!r} but found {v or 'end of input'!r}", p)
        i += 1
        return toks[i - 1]

    def peek(value: str) -> bool:
        return toks[i][1] == value and toks[i][0] in ("sym", "name")

    _, kw, p = expect("name")
    if kw != "exists":
        raise PPSyntaxError("sentence must start with 'exists'", p)
    binders: list[tuple[str, int]] = []
    while True:
        _, s, p = expect("name")
        expect("sym", ":")
        _, a, pa = expect("int")
        if int(a) < 1:
            raise PPSyntaxError("arity must be positive", pa)
        if s in dict(binders):
            raise PPSyntaxError(f"symbol {s} bound twice", p)
        binders.append((s, int(a)))
        if peek(","):
            i += 1
            continue
        break
    expect("sym", ".")
    ar = dict(binders)

    def word() -> tuple[str, MinorOp, int]:
        nonlocal i
        _, s, p = expect("name")
        if s not in ar:
            raise PPSyntaxError(f"unbound symbol {s}", p)
        expect("sym", "(")
        vals = []
        while toks[i][0] == "int":
            vals.append(int(toks[i][1]))
            i += 1
        if not vals:
            raise PPSyntaxError("empty minor operation", toks[i][2])
        expect("sym", "|")
        _, k, pk = expect("int")
        expect("sym", ")")
        try:
            op = MinorOp.of(vals, int(k))
        except ValueError as exc:
            raise PPSyntaxError(str(exc), pk) from None
        if op.domain != ar[s]:
            raise PPSyntaxError(f"{s} has arity {ar[s]} but gets {op.domain} entries", p)
        return s, op, p

    rels = []
    while True:
        s, al, p = word()
        expect("sym", "=")
        t, be, _ = word()
        if al.codomain != be.codomain:
            raise PPSyntaxError(f"codomains {al.codomain} and {be.codomain} differ", p)
        rels.append(((s, al), (t, be)))
        if peek("&"):
            i += 1
            continue
        break
    expect("end")
    return Presentation(tuple(binders), tuple(rels))


def pp_text(P: Presentation) -> str:
    """Print a presentation as a pp-sentence."""
    if not P.relations:
        raise ValueError("a pp-sentence needs at least one conjunct")
    lit = lambda s, op: f"{s}({' '.join(map(str, op.values))}|{op.codomain})"
    head = ", ".join(f"{s}:{a}" for s, a in P.generators)
    body = " & ".join(f"{lit(s, al)} = {lit(t, be)}" for (s, al), (t, be) in P.relations)
    return f"exists {head} . {body}"


def pp_gadget(phi: str | Presentation, name: str | None = None) -> PresentedMinion:
    P = pp_parse(phi) if isinstance(phi, str) else phi
    return PresentedMinion(P, name or (phi if isinstance(phi, str) else "gadget"))


def assignments(P: Presentation, N: Minion, candidates=None):
    """Yield every assignment symbol -> element of N satisfying the relations.

    Generators are tried in descending arity; each relation is checked as
    soon as both of its symbols carry a value.
    """
    P = P.normalized()
    order = sorted(range(len(P.generators)), key=lambda i: (-P.generators[i][1], i))
    names = [s for s, _ in P.generators]
    pos = {names[i]: k for k, i in enumerate(order)}
    checks: list[list] = [[] for _ in order]
    for (s, al), (t, be) in P.relations:
        k = max(pos[s], pos[t])
        checks[k].append((s, al, t, be))
    pools = []
    for i in order:
        s, a = P.generators[i]
        pool = candidates(s, a) if candidates is not None else N.elements(a)
        pools.append(list(pool))
    chosen: dict[str, Element] = {}
    cache: dict = {}

    def image(s: str, al: MinorOp) -> Element:
        key = (s, chosen[s].payload, al)
        r = cache.get(key)
        if r is None:
            r = N.act(chosen[s], al)
            cache[key] = r
        return r

    def search(k: int):
        if k == len(order):
            yield dict(chosen)
            return
        s = names[order[k]]
        for cand in pools[k]:
            chosen[s] = cand
            if all(image(s1, al) == image(t1, be) for s1, al, t1, be in checks[k]):
                yield from search(k + 1)
        chosen.pop(s, None)

    yield from search(0)
