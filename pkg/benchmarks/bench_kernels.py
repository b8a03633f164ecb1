"""Time the table kernels on each available backend.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import timeit

from minionlab import kernels
from minionlab.catalog import not_all_zero
from minionlab.funmin import RelationPair


def workloads(impl) -> dict:
    rng = random.Random(0)
    maps = [(tuple(rng.randrange(4) for _ in range(6)), 4) for _ in range(200)]
    tables = [bytes(rng.randrange(2) for _ in range(2**6)) for _ in range(200)]
    naz = RelationPair.of(not_all_zero(3), not_all_zero(3), 2, 2).encoded

    def minors():
        for (vals, k), t in zip(maps, tables):
            impl.apply_index(t, impl.minor_index(2, vals, k))

    def preserve():
        for t in tables:
            impl.preserves(t, 2, 6, naz[0], naz[1], naz[2], naz[3], 2, 10**7)

    def enumerate_pol():
        impl.pol_tables(2, 2, 3, [naz], 10**7)

    return {"minor tables (200 x arity 6 -> 4)": minors, "preservation (200 tables, 7^6 columns)": preserve, "Pol enumeration (arity 3)": enumerate_pol}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    found = kernels.backends()
    rows = {}
    for name, impl in found.items():
        for label, fn in workloads(impl).items():
            rows.setdefault(label, {})[name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    names = list(found)
    print(f"{'workload':44s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, times in rows.items():
        line = f"{label:44s}" + "".join(f"{times[n]:11.4f}s" for n in names)
        if len(names) > 1:
            line += f"{times['python'] / times[names[-1]]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
