"""Essential coordinates, growth sequences, the arity tensor and finite representability."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Hashable, Sequence

from networkx.utils import UnionFind

from .base import ConsistencyError, Element, Minion, UnsupportedError
from .construct import ProductMinion, SumMinion
from .funmin import FunctionMinion, table_index, tuples
from .minors import MinorOp, all_maps, compose, identity, point_map
from .morphisms import Hom

# essentiality


def essential_coords(M: Minion, f: Element) -> frozenset[int]:
    """Coordinates i with f != f (i -> j) for a fixed j != i; unary f compares its two binary lifts."""
    M.check(f)
    n = f.arity
    if n == 1:
        a = M.act(f, MinorOp((0,), 2))
        b = M.act(f, MinorOp((1,), 2))
        return frozenset() if a == b else frozenset({0})
    out = set()
    for i in range(n):
        j = 1 if i == 0 else 0
        if M.act(f, point_map(i, j, n)) != f:
            out.add(i)
    return frozenset(out)


def inessential_coords(M: Minion, f: Element) -> frozenset[int]:
    return frozenset(range(f.arity)) - essential_coords(M, f)


def is_constant(M: Minion, f: Element) -> bool:
    return not essential_coords(M, f)


def is_nondegenerate(M: Minion, f: Element) -> bool:
    return len(essential_coords(M, f)) == f.arity


def constants_per_arity(M: Minion, N: int) -> list[int]:
    """Number of constants at arities 1..N."""
    return [sum(1 for f in M.elements(n) if is_constant(M, f)) for n in range(1, N + 1)]


def essential_arity(M: Minion) -> int:
    """The largest number of essential coordinates among the generators."""
    if hasattr(M, "generators"):
        try:
            gens = M.generators()
        except ValueError:
            gens = None
        if gens is not None:
            return max((len(essential_coords(M, g)) for g in gens), default=0)
    if isinstance(M, SumMinion):
        return max(essential_arity(S) for S in M.summands)
    if isinstance(M, ProductMinion):
        g = M.essential_bound()
        if g is None:
            raise UnsupportedError(f"{M.name} is not known to be finitely generated")
        return max((len(essential_coords(M, f)) for f in M.elements(max(g, 1))), default=0)
    P = M.presentation()
    if P is not None:
        g = M.essential_bound()
        return max((len(essential_coords(M, f)) for f in M.elements(max(g or 1, 1))), default=0)
    raise UnsupportedError(f"{M.name} is not known to be finitely generated")


# growth


@dataclass
class GrowthProfile:
    """alpha(n) = |M_n| and gamma(n) = nondegenerate count; slot 0 counts unary constants."""

    alpha: list[int]
    gamma: list[int]
    N: int
    classification: str = ""

    def as_dict(self) -> dict:
        return {"N": self.N, "alpha": self.alpha, "gamma": self.gamma, "classification": self.classification}


def gamma_from_alpha(alpha: Sequence[int]) -> list[int]:
    """Forward differences at 0: gamma(k) = sum_j (-1)^(k-j) C(k, j) alpha(j)."""
    return [sum((-1) ** (k - j) * comb(k, j) * alpha[j] for j in range(k + 1)) for k in range(len(alpha))]


def alpha_from_gamma(gamma: Sequence[int]) -> list[int]:
    return [sum(comb(n, k) * gamma[k] for k in range(n + 1)) for n in range(len(gamma))]


def growth(M: Minion, N: int) -> GrowthProfile:
    """alpha by counting; gamma by counting nondegenerate elements and by differences, which must agree."""
    if N < 1:
        raise ValueError("horizon must be at least 1")
    consts = 0
    alpha = [0]
    direct = [0]
    for n in range(1, N + 1):
        elems = M.elements(n)
        alpha.append(len(elems))
        nd = 0
        for f in elems:
            ess = essential_coords(M, f)
            if len(ess) == n:
                nd += 1
            if n == 1 and not ess:
                consts += 1
        direct.append(nd)
    alpha[0] = consts
    direct[0] = consts
    diff = gamma_from_alpha(alpha)
    if diff != direct:
        raise ConsistencyError(f"{M.name}: gamma by counting {direct} differs from gamma by differences {diff}")
    return GrowthProfile(alpha, direct, N, classify(M, alpha, direct))


def classify(M: Minion, alpha: Sequence[int], gamma: Sequence[int]) -> str:
    if M.essential_bound() is not None and M.cutoff is None:
        return "subexponential (finitely generated)"
    top = len(alpha) - 1
    if top >= 2 and all(g > 0 for g in gamma[2:]):
        return "at least exponential evidence (nondegenerate elements at every arity up to %d)" % top
    return "undetermined at horizon %d" % top


def dichotomy_probe(M: Minion, N: int) -> dict:
    prof = growth(M, N)
    roots = [round(prof.alpha[n] ** (1.0 / n), 6) for n in range(1, N + 1)]
    return {"roots": roots, "classification": prof.classification, "alpha": prof.alpha, "gamma": prof.gamma}


# the arity tensor


def tensor_arity(M: Minion, n: int) -> tuple[int, dict]:
    """Classes of pairs (f, x: k -> n) under (f alpha, x) ~ (f, alpha; x), for k <= n.

    Returns the class count and the normal-form map class -> f x.
    """
    pairs = [(f.arity, f.payload, x.values) for k in range(1, n + 1) for f in M.elements(k) for x in all_maps(k, n)]
    uf = UnionFind(pairs)
    for k in range(1, n + 1):
        for f in M.elements(k):
            for kk in range(1, n + 1):
                for al in all_maps(k, kk):
                    g = M.act(f, al)
                    for x in all_maps(kk, n):
                        uf.union((kk, g.payload, x.values), (k, f.payload, compose(al, x).values))
    normal = {}
    for block in uf.to_sets():
        vals = {M._act(p, k, MinorOp(xv, n)) for k, p, xv in block}
        if len(vals) != 1:
            raise ConsistencyError("normal form is not constant on a tensor class")
        normal[min(block)] = vals.pop()
    return len(normal), normal


def tensor_normal_form(M: Minion, f: Element, alpha: MinorOp) -> Element:
    """[f, alpha] -> f alpha."""
    return M.act(f, alpha)


def tensor_section(M: Minion, g: Element) -> tuple[Element, MinorOp]:
    """g -> [g, id]."""
    return g, identity(g.arity)


# representations through O(n, k)


def induced_hom(M: Minion, phi: dict[Hashable, int], n: int, k: int) -> Hom:
    """phi: M_n -> k induces f -> (x -> phi(f x)) into O(n, k)."""
    target = FunctionMinion(n, k, name=f"O({n},{k})")
    cache: dict[int, list[MinorOp]] = {}

    def fn(f: Element) -> Element:
        xs = cache.get(f.arity)
        if xs is None:
            xs = [MinorOp(x, n) for x in tuples(n, f.arity)]
            cache[f.arity] = xs
        return Element(f.arity, bytes(phi[M._act(f.payload, f.arity, x)] for x in xs), target)

    return Hom(M, target, fn, "induced", data=phi)


def restrict_hom(h: Hom, n: int) -> dict[Hashable, int]:
    """h -> (f in M_n -> h(f) evaluated at the identity tuple)."""
    T = h.target
    if not isinstance(T, FunctionMinion) or T.a != n:
        raise ValueError(f"target must be a function minion over a domain of size {n}")
    pos = table_index(tuple(range(n)), n)
    return {f.payload: h(f).payload[pos] for f in h.source.elements(n)}


@dataclass
class RepresentabilityWitness:
    n: int
    k: int
    phi: dict = field(repr=False)


def _distinguish_bound(M: Minion) -> int:
    return max(essential_arity(M), 2)


def certify(M: Minion, w: RepresentabilityWitness, max_arity: int | None = None) -> bool:
    """The induced map into O(n, k) is injective at arities up to max(essential arity, 2).

    Minions without a known essential arity need an explicit max_arity.
    """
    if set(w.phi) != {f.payload for f in M.elements(w.n)} or any(not 0 <= v < w.k for v in w.phi.values()):
        return False
    h = induced_hom(M, w.phi, w.n, w.k)
    return h.is_injective(max_arity if max_arity is not None else _distinguish_bound(M))


def evaluation_witness(M: FunctionMinion) -> RepresentabilityWitness:
    """O(a, b) and its subminions: evaluate at the identity tuple (0, ..., a - 1)."""
    pos = table_index(tuple(range(M.a)), M.a)
    return RepresentabilityWitness(M.a, M.b, {f.payload: f.payload[pos] for f in M.elements(M.a)})


def is_n_representable(
    M: Minion, n: int, max_arity: int | None = None
) -> tuple[bool, RepresentabilityWitness | None]:
    """Distinct elements are separated by some minor into arity n, checked up to max(E, 2).

    With max_arity the check stops there instead, and a positive answer is only bounded evidence.
    """
    top = max_arity if max_arity is not None else _distinguish_bound(M)
    for k in range(1, top + 1):
        maps = list(all_maps(k, n))
        seen = {}
        for f in M.elements(k):
            key = tuple(M._act(f.payload, k, al) for al in maps)
            if key in seen:
                return False, None
            seen[key] = f
    elems = M.elements(n)
    return True, RepresentabilityWitness(n, len(elems), {f.payload: i for i, f in enumerate(elems)})


def combine_witnesses(parts: Sequence[tuple[Minion, RepresentabilityWitness]], mode: str) -> tuple[Minion, RepresentabilityWitness]:
    """Sum: offset-shifted union on the sum minion; product: tupled values on the product minion."""
    if mode not in ("sum", "product"):
        raise ValueError("mode is sum or product")
    if not parts:
        raise ValueError("nothing to combine")
    ns = {w.n for _, w in parts}
    if len(ns) != 1:
        raise ValueError(f"witnesses at different arities {sorted(ns)}")
    if len(parts) == 1:
        return parts[0]
    (M, w), rest = parts[0], parts[1:]
    for N, v in rest:
        if mode == "sum":
            S = SumMinion(M, N)
            phi = {(0, p): x for p, x in w.phi.items()}
            phi.update({(1, p): w.k + x for p, x in v.phi.items()})
            M, w = S, RepresentabilityWitness(w.n, w.k + v.k, phi)
        else:
            P = ProductMinion(M, N)
            phi = {(p, q): x * v.k + y for p, x in w.phi.items() for q, y in v.phi.items()}
            M, w = P, RepresentabilityWitness(w.n, w.k * v.k, phi)
    return M, w


def bump_witness(M: Minion, w: RepresentabilityWitness, default: int = 0) -> RepresentabilityWitness:
    """(n, k) -> (n + 1, k): psi(e iota) = phi(e), and the default elsewhere."""
    n = w.n
    iota = MinorOp(tuple(range(n)), n + 1)
    lifted = {M._act(p, n, iota): x for p, x in w.phi.items()}
    psi = {f.payload: lifted.get(f.payload, default) for f in M.elements(n + 1)}
    return RepresentabilityWitness(n + 1, w.k, psi)


def pad_codomain(w: RepresentabilityWitness, k: int) -> RepresentabilityWitness:
    if k < w.k:
        raise ValueError("cannot shrink the codomain")
    return RepresentabilityWitness(w.n, k, dict(w.phi))


__all__ = [
    "GrowthProfile",
    "RepresentabilityWitness",
    "alpha_from_gamma",
    "bump_witness",
    "certify",
    "classify",
    "combine_witnesses",
    "constants_per_arity",
    "dichotomy_probe",
    "essential_arity",
    "essential_coords",
    "evaluation_witness",
    "gamma_from_alpha",
    "growth",
    "induced_hom",
    "inessential_coords",
    "is_constant",
    "is_n_representable",
    "is_nondegenerate",
    "pad_codomain",
    "restrict_hom",
    "tensor_arity",
    "tensor_normal_form",
    "tensor_section",
]
