"""Convex-hull membership of the origin, decided by linear programming.

Weak hyperbolicity of a frame asks that the origin is not in the convex hull
of any ``n`` or fewer frame vectors.  Every decision comes with a
certificate: convex coefficients when the origin is in the hull of some
subset, otherwise one strictly separating direction per tested subset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

LP_TOL = 1e-9


@dataclass
class HullCertificate:
    member: bool
    # membership: the subset and its convex coefficients (sum 1, >= 0)
    subset: tuple[int, ...] | None = None
    coefficients: np.ndarray | None = None
    # non-membership: subset -> d with <d, v_k> > 0 on the subset
    directions: dict[tuple[int, ...], np.ndarray] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.member


def separating_direction(points: np.ndarray, tol: float = LP_TOL):
    """Direction ``d`` with ``min_k <d, p_k> > tol``, or ``None``.

    Solves ``max t`` subject to ``<d, p_k> >= t`` and ``|d_i| <= 1``.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    k, n = points.shape
    c = np.zeros(n + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-points, np.ones((k, 1))])
    bounds = [(-1.0, 1.0)] * n + [(None, 1.0)]
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(k), bounds=bounds, method="highs")
    if res.status != 0:
        return None
    d = res.x[:n]
    # confirm in plain arithmetic rather than trusting the solver's margin
    if np.min(points @ d) > tol:
        return d
    return None


def convex_coefficients(points: np.ndarray, tol: float = LP_TOL):
    """Convex weights ``c`` with ``sum c_k p_k = 0``, or ``None``."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    k, n = points.shape
    A_eq = np.vstack([points.T, np.ones((1, k))])
    b_eq = np.zeros(n + 1)
    b_eq[-1] = 1.0
    res = linprog(np.zeros(k), A_eq=A_eq, b_eq=b_eq, bounds=[(0.0, None)] * k, method="highs")
    if res.status != 0:
        return None
    c = np.clip(res.x, 0.0, None)
    c /= c.sum()
    if np.linalg.norm(c @ points) > tol:
        return None
    return c


def hull_membership(vectors, max_subset_size: int) -> HullCertificate:
    """Is the origin in the convex hull of some subset of size <= ``max_subset_size``?

    Only subsets of size ``min(max_subset_size, len(vectors))`` are tested:
    a subset whose hull contains the origin stays a witness when enlarged.
    """
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    m = vectors.shape[0]
    if m == 0:
        raise ValueError("need at least one vector")
    size = min(max(int(max_subset_size), 1), m)
    directions = {}
    for subset in itertools.combinations(range(m), size):
        pts = vectors[list(subset)]
        d = separating_direction(pts)
        if d is not None:
            directions[subset] = d
            continue
        c = convex_coefficients(pts)
        if c is None:
            # neither LP is conclusive at tolerance; fall back on nnls residual
            c = _nnls_coefficients(pts)
        full = np.zeros(m)
        full[list(subset)] = c
        return HullCertificate(True, subset=subset, coefficients=full)
    return HullCertificate(False, directions=directions)


def _nnls_coefficients(points: np.ndarray) -> np.ndarray:
    from scipy.optimize import nnls

    A = np.vstack([points.T, 1e3 * np.ones((1, points.shape[0]))])
    b = np.zeros(A.shape[0])
    b[-1] = 1e3
    c, _ = nnls(A, b)
    return c / c.sum()


def origin_in_hull(vectors) -> bool:
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    if vectors.shape[0] == 0:
        return False
    return hull_membership(vectors, vectors.shape[0]).member


def is_weakly_hyperbolic(vectors, n: int) -> bool:
    vectors = np.asarray(vectors, dtype=float).reshape(-1, n)
    if vectors.shape[0] == 0:
        return True
    return not hull_membership(vectors, n).member
