"""The symmetric unit frame lambda_0, ..., lambda_n and Span(lambda, 1).

A frame is an ``(n + 1, n)`` array whose rows are unit vectors with pairwise
inner products ``-1/n``; they are the vertices of a regular simplex centred
at the origin.  For ``n = 8`` the rows are read as octonions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra
from .errors import DimensionError, NotInSpan

STANDARD_TOL = 1e-12


def build_lambda(n: int) -> np.ndarray:
    """Build the frame inductively, starting from ``(-1, 1)`` in R.

    Going from ``R^{k-1}`` to ``R^k`` the old vectors ``mu`` become
    ``(sqrt(1 - 1/k^2) mu, -1/k)`` and the new one is ``(0, ..., 0, 1)``.
    """
    algebra.check_dim(n)
    frame = np.array([[-1.0], [1.0]])
    for k in range(2, n + 1):
        top = np.hstack([np.sqrt(1.0 - 1.0 / k**2) * frame, np.full((k, 1), -1.0 / k)])
        last = np.zeros((1, k))
        last[0, -1] = 1.0
        frame = np.vstack([top, last])
    return frame


def gram_defect(frame: np.ndarray) -> float:
    """Max deviation of the Gram matrix from ``1`` on and ``-1/n`` off the diagonal."""
    frame = np.asarray(frame, dtype=float)
    n = frame.shape[1]
    target = np.full((n + 1, n + 1), -1.0 / n)
    np.fill_diagonal(target, 1.0)
    if frame.shape[0] != n + 1:
        return np.inf
    return float(np.max(np.abs(frame @ frame.T - target)))


def is_standard(frame: np.ndarray, tol: float = STANDARD_TOL) -> bool:
    frame = np.asarray(frame, dtype=float)
    return frame.ndim == 2 and frame.shape[0] == frame.shape[1] + 1 and gram_defect(frame) <= tol


def _require_standard(frame) -> np.ndarray:
    frame = np.asarray(frame, dtype=float)
    if not is_standard(frame):
        raise DimensionError("operation needs a symmetric frame of n + 1 unit vectors in dimension n")
    return frame


def reconstruct(frame: np.ndarray, x) -> np.ndarray:
    """``n/(n+1) * sum_k <lambda_k, x> lambda_k``, which returns ``x`` itself."""
    frame = _require_standard(frame)
    x = algebra.element(x, frame.shape[1])
    n = frame.shape[1]
    return n / (n + 1) * (x @ frame.T) @ frame


@dataclass(frozen=True)
class SpanCoords:
    V: np.ndarray
    W: np.ndarray


def span_embed(frame: np.ndarray, c: SpanCoords) -> np.ndarray:
    """``u_k = V lambda_k + W`` as an ``(n + 1, n)`` array."""
    frame = _require_standard(frame)
    V = algebra.element(c.V, frame.shape[1])
    W = algebra.element(c.W, frame.shape[1])
    return algebra.mul(V, frame) + W


def span_coords(frame: np.ndarray, u, tol: float = 1e-9) -> SpanCoords:
    """Recover ``(V, W)`` from ``u`` in Span(lambda, 1).

    Raises :class:`NotInSpan` when re-embedding misses ``u`` by more than
    ``tol`` (relative to ``max(1, |u|)``).
    """
    frame = _require_standard(frame)
    u = np.asarray(u, dtype=float)
    if u.shape != frame.shape:
        raise DimensionError(f"u must have shape {frame.shape}, got {u.shape}")
    m = frame.shape[0]
    V = algebra.mul(u, algebra.conj(frame)).sum(axis=0) / m
    W = u.sum(axis=0) / m
    c = SpanCoords(V, W)
    miss = np.linalg.norm(span_embed(frame, c) - u)
    if miss > tol * max(1.0, np.linalg.norm(u)):
        raise NotInSpan(f"u is off Span(lambda, 1) by {miss:.3e}")
    return c


def span_residual(frame: np.ndarray, u) -> float:
    """Distance from ``u`` to its projection onto Span(lambda, 1)."""
    frame = _require_standard(frame)
    u = np.asarray(u, dtype=float)
    m = frame.shape[0]
    c = SpanCoords(algebra.mul(u, algebra.conj(frame)).sum(axis=0) / m, u.sum(axis=0) / m)
    return float(np.linalg.norm(span_embed(frame, c) - u))


def embedding_matrix(frame: np.ndarray) -> np.ndarray:
    """Real matrix of ``(V, W) -> u``; its rank is the real dimension of the span."""
    frame = _require_standard(frame)
    n = frame.shape[1]
    eye = np.eye(n)
    cols = [span_embed(frame, SpanCoords(e, np.zeros(n))).ravel() for e in eye]
    cols += [span_embed(frame, SpanCoords(np.zeros(n), e)).ravel() for e in eye]
    return np.column_stack(cols)
