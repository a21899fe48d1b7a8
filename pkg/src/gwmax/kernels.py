"""Backend selection for the hot enumeration kernels.

The compiled ``_ckernels`` extension is used when it was built and the
inputs fit in 64-bit integers; everything else goes through the
arbitrary-precision ``_pykernels`` reference. Set ``GWMAX_PURE_PYTHON=1``
to force the fallback.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

if os.environ.get("GWMAX_PURE_PYTHON"):
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

_LIMIT = 2**62


def fits_int64(n: int, modulus: int) -> bool:
    return modulus < 2**31 and modulus ** max(n, 1) < _LIMIT


def as_code_array(codes, n: int, modulus: int) -> np.ndarray:
    dtype = np.int64 if fits_int64(n, modulus) else object
    return np.asarray(codes, dtype=dtype).reshape(-1)


def closure(
    n: int, gens: Sequence[Sequence[int]], modulus: int, cap: int, backend: str | None = None
) -> np.ndarray:
    """Sorted code array of the subgroup generated by digit vectors ``gens``."""
    if _use_fast(backend, n, modulus):
        return _ckernels.closure(n, [list(g) for g in gens], modulus, cap)
    return as_code_array(_pykernels.closure(n, gens, modulus, cap), n, modulus)


def oracle_scan(
    A: Sequence[Sequence[int]], radices: Sequence[int], modulus: int, backend: str | None = None
) -> np.ndarray:
    n = len(radices)
    if _use_fast(backend, n, modulus):
        return _ckernels.oracle_scan(A, list(radices), modulus)
    return as_code_array(_pykernels.oracle_scan(A, radices, modulus), n, modulus)


def _use_fast(backend: str | None, n: int, modulus: int) -> bool:
    if backend == "python":
        return False
    if backend == "cython" and _ckernels is None:
        raise RuntimeError("compiled kernels are not available")
    return _ckernels is not None and fits_int64(n, modulus)
