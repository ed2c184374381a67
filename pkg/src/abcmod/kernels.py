"""Dispatch for the hot loops: compiled kernels when importable, else pure Python.

The compiled module works in int64.  Each entry point here checks a magnitude
guard first and falls back to the Python twin whenever the guard fails, so the
result is always exact.  Set ``ABCMOD_KERNELS=python`` to force the fallback.
"""

import os

from . import _pykernels

try:
    if os.environ.get("ABCMOD_KERNELS", "").lower() == "python":
        raise ImportError("compiled kernels disabled by ABCMOD_KERNELS")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

_LIMIT = 1 << 61


def _sq_norm_bound(M, k):
    # Hadamard: any k x k minor is at most the product of the k largest row norms.
    norms = sorted((max(1, sum(x * x for x in r)) for r in M), reverse=True)
    bound = 1
    for v in norms[:k]:
        bound *= v
        if bound >= _LIMIT:
            return bound
    return bound


def _fits(M, k):
    return _sq_norm_bound(M, k) < _LIMIT


def bareiss_det(M):
    M = [list(r) for r in M]
    if _ckernels is not None and _fits(M, len(M)):
        return _ckernels.bareiss_det(M)
    return _pykernels.bareiss_det(M)


def minor_abs_values(M, n):
    M = [list(r) for r in M]
    if _ckernels is not None and _fits(M, n):
        return _ckernels.minor_abs_values(M, n)
    return _pykernels.minor_abs_values(M, n)


def ghouila_houri(M):
    M = [list(r) for r in M]
    if _ckernels is not None and len(M) <= 62 and all(-1 <= x <= 1 for r in M for x in r):
        return _ckernels.ghouila_houri(M)
    return _pykernels.ghouila_houri(M)


def first_bad_minor(M, bound=1):
    M = [list(r) for r in M]
    k = min(len(M), len(M[0]) if M else 0)
    if _ckernels is not None and _fits(M, k) and bound < _LIMIT:
        return _ckernels.first_bad_minor(M, bound)
    return _pykernels.first_bad_minor(M, bound)


def box_argmax(C, g, w, lo, hi):
    C = [list(r) for r in C]
    if _ckernels is not None:
        reach = max([abs(v) for v in lo] + [abs(v) for v in hi] + [1])
        width = max(len(lo), 1)
        coef = max([abs(x) for r in C for x in r] + [abs(x) for x in w] + [1])
        if coef * reach * width < _LIMIT and all(abs(v) < _LIMIT for v in g):
            return _ckernels.box_argmax(C, list(g), list(w), list(lo), list(hi))
    return _pykernels.box_argmax(C, g, w, lo, hi)
