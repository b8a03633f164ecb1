"""Brute-force reference computations, written without the package's kernels or search."""

from __future__ import annotations

import itertools


def points(a: int, n: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(a), repeat=n))


def evaluate(table, a: int, x) -> int:
    i = 0
    for v in x:
        i = i * a + v
    return table[i]


def minor(table, a: int, values, k: int) -> bytes:
    """(f alpha)(y) = f(y[alpha(0)], ..., y[alpha(n-1)])."""
    return bytes(evaluate(table, a, [y[v] for v in values]) for y in points(a, k))


def maps(n: int, k: int):
    return itertools.product(range(k), repeat=n)


def depends_on(table, a: int, n: int, i: int) -> bool:
    for x in points(a, n):
        for c in range(a):
            y = list(x)
            y[i] = c
            if evaluate(table, a, x) != evaluate(table, a, y):
                return True
    return False


def essential(table, a: int, n: int) -> frozenset[int]:
    return frozenset(i for i in range(n) if depends_on(table, a, n, i))


def minor_closure(seeds, a: int, top: int) -> dict[int, set[bytes]]:
    """Arity-n members of the set generated by the seeds under minors, for n <= top."""
    out = {n: set() for n in range(1, top + 1)}
    for ar, t in seeds:
        for n in range(1, top + 1):
            for v in maps(ar, n):
                out[n].add(minor(t, a, v, n))
    return out


def preserves(table, a: int, n: int, R, S) -> bool:
    """Every n-tuple of rows of R is mapped row-wise by the table into S."""
    S = set(map(tuple, S))
    for cols in itertools.product(R, repeat=n):
        image = tuple(evaluate(table, a, [c[r] for c in cols]) for r in range(len(cols[0])))
        if image not in S:
            return False
    return True


def polymorphisms(a: int, b: int, n: int, pairs) -> set[bytes]:
    return {bytes(t) for t in itertools.product(range(b), repeat=a ** n) if all(preserves(t, a, n, R, S) for R, S in pairs)}


def multisets(k: int, size: int) -> int:
    return len(list(itertools.combinations_with_replacement(range(k), size)))


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def presented_size(generators, relations, n: int) -> int:
    """Classes of words (symbol, map ar -> n) under the relations closed by postcomposition."""
    words = [(s, v) for s, ar in generators for v in maps(ar, n)]
    parent = {w: w for w in words}

    def find(w):
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    for (s, al, m), (t, be, _) in relations:
        for g in maps(m, n):
            x = (s, tuple(g[v] for v in al))
            y = (t, tuple(g[v] for v in be))
            parent[find(x)] = find(y)
    return len({find(w) for w in words})
