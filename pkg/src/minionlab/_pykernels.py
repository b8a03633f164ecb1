"""Pure-Python table kernels; the compiled module mirrors these signatures."""

from __future__ import annotations

import itertools


def minor_index(a: int, values: tuple[int, ...], k: int) -> list[int]:
    """Positions read by the minor f(x_{v(0)}, ..., x_{v(n-1)}) for each x in A^k (lex order)."""
    n = len(values)
    weights = [0] * k
    for i, v in enumerate(values):
        weights[v] += a ** (n - 1 - i)
    idx = [0]
    for w in weights:
        idx = [base + d * w for base in idx for d in range(a)]
    return idx


def apply_index(table: bytes, idx: list[int]) -> bytes:
    return bytes(map(table.__getitem__, idx))


def preserves(table: bytes, a: int, n: int, rel: bytes, y: int, m: int, mask: bytes, b: int, budget: int) -> int:
    """1 if the table maps every n-column choice from the relation into the mask, 0 if not.

    The relation is m tuples of length y stored row after row in ``rel``;
    ``mask`` flags members of the target relation by their b-ary code.
    Returns -1 when m ** n exceeds the budget.
    """
    if m == 0:
        return 1
    if m ** n > budget:
        return -1
    cols = [rel[c * y:(c + 1) * y] for c in range(m)]
    place = [a ** (n - 1 - i) for i in range(n)]
    for choice in itertools.product(range(m), repeat=n):
        code = 0
        for r in range(y):
            pos = 0
            for i, c in enumerate(choice):
                pos += cols[c][r] * place[i]
            code = code * b + table[pos]
        if not mask[code]:
            return 0
    return 1


def pol_tables(a: int, b: int, n: int, rels: list, budget: int) -> list[bytes]:
    """Every table A^n -> B preserving all (rel, y, m, mask) entries, in lex order."""
    out = []
    size = a ** n
    for t in itertools.product(range(b), repeat=size):
        table = bytes(t)
        ok = True
        for rel, y, m, mask in rels:
            r = preserves(table, a, n, rel, y, m, mask, b, budget)
            if r < 0:
                raise OverflowError("column budget exceeded")
            if r == 0:
                ok = False
                break
        if ok:
            out.append(table)
    return out
