from __future__ import annotations

import os
import subprocess
import sys

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from kacgen import _kernels_py
from kacgen.core_types import GaussInt, IntPoly
from kacgen.cyclo import CycloInt
from kacgen.errors import NonRealCoefficient
from kacgen.linalg import BACKEND, charpoly_gauss, charpoly_int, charpoly_ring, det_int


def _square(max_n: int = 7, bound: int = 5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def _sympy_charpoly(rows) -> IntPoly:
    t = sympy.Symbol("t")
    poly = sympy.Matrix(rows).charpoly(t)
    return IntPoly(tuple(int(c) for c in reversed(poly.all_coeffs())))


@given(_square())
@settings(max_examples=80, deadline=None)
def test_python_kernel_matches_sympy(rows):
    assert charpoly_int(rows, backend="python") == _sympy_charpoly(rows)


@pytest.mark.skipif(BACKEND != "cython", reason="compiled kernels not built")
@given(_square(12, 9))
@settings(max_examples=150, deadline=None)
def test_backends_agree(rows):
    assert charpoly_int(rows, backend="cython") == charpoly_int(rows, backend="python")


@pytest.mark.skipif(BACKEND != "cython", reason="compiled kernels not built")
def test_overflow_falls_back_to_python():
    big = 10**12
    rows = [[big if i == j else 1 for j in range(4)] for i in range(4)]
    from kacgen import _ckernels

    with pytest.raises(OverflowError):
        _ckernels.berkowitz_int64(rows)
    assert charpoly_int(rows) == _sympy_charpoly(rows)


def test_pure_python_switch():
    env = dict(os.environ, KACGEN_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from kacgen.linalg import BACKEND; print(BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_empty_and_det():
    assert _kernels_py.berkowitz([], 0, 1) == [1]
    assert det_int([[2, 1], [1, 3]]) == 5
    assert det_int([[0, 1, 0], [0, 0, 1], [1, 0, 0]]) == 1


def test_gauss_charpoly():
    i = GaussInt(0, 1)
    rows = [[GaussInt(0), i], [i, GaussInt(0)]]  # eigenvalues +-i, char poly t^2 + 1
    assert charpoly_gauss(rows) == IntPoly((1, 0, 1))
    with pytest.raises(NonRealCoefficient):
        charpoly_gauss([[i]])


def test_cyclotomic_ring_charpoly():
    # diag(x, x^-1) in Z[x]/(x^4 - 1) with x = i: t^2 - (x + x^3) t + 1 = t^2 + 1 after reduction
    m = 4
    rows = [[CycloInt.unit(m, 1), CycloInt(m)], [CycloInt(m), CycloInt.unit(m, 3)]]
    coeffs = charpoly_ring(rows, CycloInt(m), CycloInt.unit(m, 0))
    assert [c.as_integer() for c in coeffs] == [1, 0, 1]
