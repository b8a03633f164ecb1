"""Backend selection for the table kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. Setting MINIONLAB_PURE=1 forces the fallback.
"""

from __future__ import annotations

import os
from functools import lru_cache

from . import _pykernels

_impl = _pykernels
BACKEND = "python"
if os.environ.get("MINIONLAB_PURE") != "1":
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]

        _impl = _compiled
        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        pass


def backends() -> dict:
    """Every importable backend by name."""
    out = {"python": _pykernels}
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]

        out["cython"] = _compiled
    except ImportError:  # pragma: no cover
        pass
    return out


@lru_cache(maxsize=200_000)
def minor_index(a: int, values: tuple[int, ...], k: int) -> list[int]:
    return _impl.minor_index(a, values, k)


def apply_index(table: bytes, idx: list[int]) -> bytes:
    return _impl.apply_index(table, idx)


def preserves(table: bytes, a: int, n: int, rel: bytes, y: int, m: int, mask: bytes, b: int, budget: int) -> int:
    return _impl.preserves(table, a, n, rel, y, m, mask, b, budget)


def pol_tables(a: int, b: int, n: int, rels: list, budget: int) -> list[bytes]:
    return _impl.pol_tables(a, b, n, rels, budget)
