"""Characteristic polynomials of exact matrices.

The integer kernel is compiled when the extension is available; set
``KACGEN_PURE_PYTHON=1`` to force the pure-Python path.
"""

from __future__ import annotations

import os
from typing import Sequence

from kacgen import _kernels_py
from kacgen.core_types import GZERO, GONE, GaussInt, IntPoly
from kacgen.errors import NonRealCoefficient

_native = None
if not os.environ.get("KACGEN_PURE_PYTHON"):
    try:
        from kacgen import _ckernels as _native
    except ImportError:
        _native = None

BACKEND = "cython" if _native is not None else "python"


def charpoly_int(rows: Sequence[Sequence[int]], *, backend: str | None = None) -> IntPoly:
    """det(t*I - A) for an integer matrix."""
    use_native = _native is not None and backend != "python"
    if backend == "cython" and _native is None:
        raise RuntimeError("compiled kernels are not available")
    if use_native:
        try:
            return IntPoly(tuple(reversed(_native.berkowitz_int64(rows))))
        except OverflowError:
            pass
    return IntPoly(tuple(reversed(_kernels_py.berkowitz_int(rows))))


def charpoly_ring(rows, zero, one) -> list:
    """Ascending coefficients of det(t*I - A) over an arbitrary commutative ring."""
    return list(reversed(_kernels_py.berkowitz(rows, zero, one)))


def charpoly_gauss(rows: Sequence[Sequence[GaussInt]]) -> IntPoly:
    """Characteristic polynomial of a Gaussian-integer matrix that must come out real."""
    if all(not x.im for row in rows for x in row):
        return charpoly_int([[x.re for x in row] for row in rows])
    coeffs = charpoly_ring(rows, GZERO, GONE)
    bad = [k for k, c in enumerate(coeffs) if c.im]
    if bad:
        raise NonRealCoefficient(f"coefficient of t^{bad[0]} is {coeffs[bad[0]]}")
    return IntPoly(tuple(c.re for c in coeffs))


def det_int(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    c0 = charpoly_int(rows).coeffs
    return (-1) ** n * (c0[0] if c0 else 0)
