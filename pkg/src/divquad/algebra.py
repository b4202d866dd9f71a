"""Arithmetic in the normed real division algebras R, C, H and O.

Elements are numpy arrays whose last axis holds the ``n`` real coefficients
(coefficient 0 is the real part).  All functions broadcast over leading
axes, so a batch of quaternions is simply an array of shape ``(N, 4)``.

Products follow the Cayley-Dickson doubling rule

    (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))

applied recursively starting from R.  With this rule C and H get the usual
``i, j, k`` multiplication table (``e1 * e2 = e3`` in H).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .errors import DimensionError

DIMS = (1, 2, 4, 8)
NAMES = {1: "R", 2: "C", 4: "H", 8: "O"}


def check_dim(n: int) -> int:
    if n not in DIMS:
        raise DimensionError(f"unsupported algebra dimension {n}; expected one of {DIMS}")
    return n


def element(coeffs, n: int | None = None) -> np.ndarray:
    """Coerce ``coeffs`` to a float array, checking the last axis."""
    a = np.asarray(coeffs, dtype=float)
    if a.ndim == 0:
        a = a.reshape(1)
    check_dim(a.shape[-1])
    if n is not None and a.shape[-1] != n:
        raise DimensionError(f"expected an element of dimension {n}, got {a.shape[-1]}")
    return a


def one(n: int) -> np.ndarray:
    e = np.zeros(check_dim(n))
    e[0] = 1.0
    return e


def basis(n: int, i: int) -> np.ndarray:
    e = np.zeros(check_dim(n))
    e[i] = 1.0
    return e


def real(x: float, n: int) -> np.ndarray:
    """The real scalar ``x`` embedded as ``x * 1``."""
    return x * one(n)


def _pair(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape[-1] != b.shape[-1]:
        raise DimensionError(f"dimension mismatch: {a.shape[-1]} vs {b.shape[-1]}")
    check_dim(a.shape[-1])
    return a, b


def conj(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    out = -a
    out[..., 0] = a[..., 0]
    return out


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    if n == 1:
        return a * b
    h = n // 2
    p, q = a[..., :h], a[..., h:]
    r, s = b[..., :h], b[..., h:]
    left = _mul(p, r) - _mul(conj(s), q)
    right = _mul(s, p) + _mul(q, conj(r))
    return np.concatenate(np.broadcast_arrays(left, right), axis=-1)


def doubling_mul(a, b) -> np.ndarray:
    """Product ``ab`` evaluated directly by the recursive doubling rule."""
    a, b = _pair(a, b)
    return _mul(a, b)


@lru_cache(maxsize=None)
def structure_constants(n: int) -> np.ndarray:
    """``C[i, j] = e_i e_j``, flattened to shape ``(n*n, n)``."""
    eye = np.eye(check_dim(n))
    table = _mul(eye[:, None, :], eye[None, :, :]).reshape(n * n, n)
    table.setflags(write=False)
    return table


def mul(a, b) -> np.ndarray:
    """Product ``ab`` under the doubling rule (via its multiplication table)."""
    a, b = _pair(a, b)
    n = a.shape[-1]
    outer = a[..., :, None] * b[..., None, :]
    return outer.reshape(outer.shape[:-2] + (n * n,)) @ structure_constants(n)


def inner(a, b) -> np.ndarray | float:
    """``<a, b> = Re(conj(a) b)``, which equals the Euclidean dot product."""
    a, b = _pair(a, b)
    return np.sum(a * b, axis=-1)


def norm(a) -> np.ndarray | float:
    a = np.asarray(a, dtype=float)
    return np.sqrt(np.sum(a * a, axis=-1))


def inverse(a) -> np.ndarray:
    a = element(a)
    n2 = np.sum(a * a, axis=-1, keepdims=True)
    if np.any(n2 == 0.0):
        raise ZeroDivisionError("zero element has no inverse")
    return conj(a) / n2


def left_matrix(a) -> np.ndarray:
    """Real matrix of ``x -> a x``."""
    a = element(a)
    n = a.shape[-1]
    return np.swapaxes(mul(a[..., None, :], np.eye(n)), -1, -2)


def right_matrix(b) -> np.ndarray:
    """Real matrix of ``x -> x b``."""
    b = element(b)
    n = b.shape[-1]
    return np.swapaxes(mul(np.eye(n), b[..., None, :]), -1, -2)


def associator(a, b, c) -> np.ndarray:
    return mul(mul(a, b), c) - mul(a, mul(b, c))


def nonassociative_triple(n: int = 8, tol: float = 0.0):
    """First basis triple ``(a, b, c)`` with ``(e_a e_b) e_c != e_a (e_b e_c)``.

    Returns ``None`` when the algebra is associative.
    """
    eye = np.eye(check_dim(n))
    for a, b, c in itertools.product(range(n), repeat=3):
        if np.max(np.abs(associator(eye[a], eye[b], eye[c]))) > tol:
            return a, b, c
    return None


def random_elements(rng: np.random.Generator, n: int, size=()) -> np.ndarray:
    shape = (size,) if isinstance(size, int) else tuple(size)
    return rng.standard_normal(shape + (check_dim(n),))
