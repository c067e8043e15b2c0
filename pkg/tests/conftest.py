"""Shared fixtures and independent oracle helpers for the test suite."""

import pytest

from lambdaforge import Generator, INTEGERS, RingPresentation


# -- Laurent polynomial oracle (dict exponent -> int, exponents may be negative)


def laurent_mul(a, b):
    out = {}
    for i, c in a.items():
        for j, d in b.items():
            out[i + j] = out.get(i + j, 0) + c * d
    return {k: v for k, v in out.items() if v}


def laurent_pow(a, n):
    out = {0: 1}
    for _ in range(n):
        out = laurent_mul(out, a)
    return out


def laurent_eval_poly(poly, point):
    """Evaluate a one-variable integer polynomial at a Laurent polynomial."""
    out = {}
    for e, c in poly.items():
        term = laurent_pow(point, e)
        for k, v in term.items():
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


Z_PLUS_INV_MINUS_2 = {1: 1, -1: 1, 0: -2}  # t + 1/t - 2


def chebyshev_oracle(k):
    """t^k + t^-k - 2 as a Laurent polynomial; the defining value of q_k."""
    return {k: 1, -k: 1, 0: -2} if k else {}


@pytest.fixture
def zx_trunc10():
    return RingPresentation(INTEGERS, (Generator("x", 1),), 10)


@pytest.fixture
def weight4_trunc12():
    return RingPresentation(INTEGERS, (Generator("v", 4),), 12)
