"""Explicit maps between Y, X, the orbit slice Y+ and the compactified slice S+.

``y_to_x``/``x_to_y`` give the equivariant diffeomorphism Y -> X.  On the
orbit slice, ``phi`` followed by ``psi`` sends Y+ onto

    S+ = {(a, b) in S^{2n+2} : a_k >= 0},

and ``inverse_psi_phi`` rebuilds a point of Y+ from ``(a, b)``.  ``hopf`` is
the map ``(V, W) -> (VW, |V|, |W|)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra, simplex
from .errors import DimensionError, OffVariety
from .variety import PointX, PointY, VarietySpec, eval_defining, eval_sphere

ON_TOL = 1e-9


@dataclass
class CompactifiedPoint:
    a: np.ndarray
    b: float

    def defect(self) -> float:
        """Deviation from the unit sphere."""
        return abs(float(self.a @ self.a + self.b**2) - 1.0)


@dataclass
class PhiImage:
    Z: np.ndarray
    P: np.ndarray
    v: float
    w: float


def _spec(frame) -> VarietySpec:
    frame = np.asarray(frame, dtype=float)
    if not simplex.is_standard(frame):
        raise DimensionError("maps need the symmetric frame of the standard variety")
    n = frame.shape[1]
    return VarietySpec(n, frame, 1, "complex", n / 2.0, True)


def embed(frame, p: PointY) -> PointX:
    """``z = sqrt(n+1) Z``, ``u_k = conj(V) lambda_k + W`` without any checks."""
    frame = np.asarray(frame, dtype=float)
    n = frame.shape[1]
    z = np.sqrt(n + 1) * np.asarray(p.Z, dtype=complex)
    u = algebra.mul(algebra.conj(p.V[0]), frame) + p.W[0]
    return PointX(z, u)


def y_to_x(frame, p: PointY, tol: float = ON_TOL) -> PointX:
    spec = _spec(frame)
    F0, F = eval_defining(spec, p)
    if np.hypot(F0, np.linalg.norm(F)) > tol:
        raise OffVariety("point is not on Y")
    return embed(frame, p)


def x_to_y(frame, q: PointX, tol: float = ON_TOL) -> PointY:
    spec = _spec(frame)
    n = spec.n
    G = eval_sphere(spec, q)
    if np.max(np.abs(G)) > tol:
        raise OffVariety("point is not on the sphere product")
    c = simplex.span_coords(frame, q.u, tol=tol)
    Z = q.z / np.sqrt(n + 1)
    return PointY(Z, algebra.conj(c.V)[None, :], c.W[None, :])


def relation_matrix(frame) -> np.ndarray:
    """Rows ``(1, 2 lambda_k)``: maps ``(F0, F)`` to ``G``."""
    frame = np.asarray(frame, dtype=float)
    return np.hstack([np.ones((frame.shape[0], 1)), 2.0 * frame])


def gf_relation_residual(frame, p: PointY) -> float:
    """``|G(y_to_x(p)) - M (F0, F)(p)|`` for any ambient ``p``."""
    spec = _spec(frame)
    F0, F = eval_defining(spec, p)
    G = eval_sphere(spec, embed(frame, p))
    return float(np.linalg.norm(G - relation_matrix(frame) @ np.concatenate([[F0], F])))


def phi(p: PointY, tol: float = 1e-12) -> PhiImage:
    Z = np.asarray(p.Z)
    if np.iscomplexobj(Z):
        if np.max(np.abs(Z.imag), initial=0.0) > tol:
            raise ValueError("point is not in Y+: Z must be real")
        Z = Z.real
    if np.any(Z < -tol):
        raise ValueError("point is not in Y+: Z must be nonnegative")
    V, W = p.V[0], p.W[0]
    return PhiImage(np.maximum(Z, 0.0), algebra.mul(V, W), float(algebra.norm(V)), float(algebra.norm(W)))


def psi(img: PhiImage) -> CompactifiedPoint:
    Pn = float(algebra.norm(img.P))
    if Pn >= 0.5:
        raise ValueError(f"|VW| = {Pn} must be below 1/2")
    r = np.sqrt(1.0 - 2.0 * Pn)
    return CompactifiedPoint(img.Z / r, (img.v - img.w) / r)


def solve_pq(p: float, q: float, tol: float = 1e-12) -> tuple[float, float]:
    """Nonnegative ``x >= y`` with ``x^2 + y^2 = p`` and ``xy = q``."""
    if q < -tol or p < 2.0 * q - tol:
        raise ValueError(f"no nonnegative solution: need p >= 2q >= 0, got p={p}, q={q}")
    q = max(q, 0.0)
    s = np.sqrt(max(p + 2.0 * q, 0.0))
    d = np.sqrt(max(p - 2.0 * q, 0.0))
    return (s + d) / 2.0, (s - d) / 2.0


def inverse_psi_phi(frame, c: CompactifiedPoint, b_zero: float = 1e-12) -> PointY:
    """The point of Y+ with real ``V >= 0`` mapping to ``c`` under psi o phi."""
    frame = np.asarray(frame, dtype=float)
    n = frame.shape[1]
    a = np.asarray(c.a, dtype=float)
    b = float(c.b)
    cc = float(algebra.norm(n / 2.0 * (a**2) @ frame))
    p = (b * b + 2.0 * cc) / (1.0 + 2.0 * cc)
    q = cc / (1.0 + 2.0 * cc)
    x, y = solve_pq(p, q)
    if b < -b_zero:
        x, y = y, x
    Z = np.sqrt(1.0 - 2.0 * x * y) * a
    V = algebra.real(x, n)
    if x == 0.0:
        W = algebra.real(y, n)
    else:
        W = -(n / 2.0) * (Z**2 @ frame) / x
    return PointY(Z.astype(complex), V[None, :], W[None, :])


def hopf(V, W):
    """``(VW, |V|, |W|)``; broadcasts over leading axes."""
    V, W = algebra.element(V), algebra.element(W)
    return algebra.mul(V, W), algebra.norm(V), algebra.norm(W)


def normalize_fiber(p: PointY) -> PointY:
    """Rotate ``(V, W) -> (V a^-1, a W)`` with ``a = V/|V|`` so that V is real >= 0.

    ``VW`` is unchanged because ``V a^-1 = |V|`` is real.
    """
    V, W = p.V[0], p.W[0]
    nv = float(algebra.norm(V))
    if nv == 0.0:
        return p.copy()
    a = V / nv
    return PointY(p.Z.copy(), algebra.real(nv, V.size)[None, :], algebra.mul(a, W)[None, :])
