"""Sampling points on Y(lambda, s) and the line-delimited point-cloud format.

Points are produced by projecting a standard normal ambient vector onto the
cone ``F = 0`` with damped Gauss-Newton steps, then scaling radially onto
``F0 = 0`` (F is homogeneous of degree 2, so scaling keeps ``F = 0``).
The resulting distribution is not uniform on the manifold.

Each point draws from its own generator spawned from the seed, so the
output does not depend on how the work is split up.
"""

from __future__ import annotations

import logging
from typing import Callable, Iterable, TextIO

import numpy as np

from . import hull
from .errors import NonConvergence, NotWeaklyHyperbolic
from .variety import VarietySpec, PointY, _f_jacobian, cone_residual, from_vector, residual

log = logging.getLogger(__name__)

MAX_ITER = 100
CONVERGED = 1e-12
ACCEPT = 1e-10
MAX_REDRAWS = 50


def gauss_newton(
    fun: Callable[[np.ndarray], np.ndarray],
    jac: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    max_iter: int = MAX_ITER,
    tol: float = CONVERGED,
) -> np.ndarray:
    """Drive ``fun(x)`` to zero with minimum-norm (pseudoinverse) steps.

    The step length is halved whenever a step would increase ``|fun|`` and
    restored after an accepted step.  Raises :class:`NonConvergence` if
    ``|fun(x)| > tol`` after ``max_iter`` iterations.
    """
    x = np.array(x0, dtype=float)
    r = fun(x)
    rn = np.linalg.norm(r)
    damping = 1.0
    for _ in range(max_iter):
        if rn <= tol:
            return x
        step = np.linalg.pinv(jac(x)) @ r
        while True:
            x_new = x - damping * step
            r_new = fun(x_new)
            rn_new = np.linalg.norm(r_new)
            if rn_new < rn or damping < 1e-8:
                break
            damping *= 0.5
        x, r, rn = x_new, r_new, rn_new
        damping = min(1.0, 2.0 * damping)
    if rn <= tol:
        return x
    raise NonConvergence(f"residual {rn:.3e} after {max_iter} iterations")


def project(spec: VarietySpec, x0: np.ndarray) -> np.ndarray:
    """Project onto ``F = 0`` and rescale onto the unit sphere ``F0 = 0``."""
    fun = lambda y: cone_residual(spec, y)
    jac = lambda y: _f_jacobian(spec, y)
    x = gauss_newton(fun, jac, x0)
    r = np.linalg.norm(x)
    if r < 1e-6 * np.linalg.norm(x0):
        raise NonConvergence("projection collapsed onto the cone point")
    # rescaling multiplies the cone residual by 1/r^2, so polish on the unit sphere
    x = gauss_newton(fun, jac, x / r)
    return x / np.linalg.norm(x)


def require_weakly_hyperbolic(spec: VarietySpec) -> None:
    if spec.m and hull.hull_membership(spec.frame, spec.n).member:
        raise NotWeaklyHyperbolic("frame is not weakly hyperbolic: the origin lies in the hull of n or fewer frame vectors")


def sample_one(spec: VarietySpec, rng: np.random.Generator, redraws: int = MAX_REDRAWS) -> PointY:
    for _ in range(redraws):
        x0 = rng.standard_normal(spec.ambient_dim)
        try:
            x = project(spec, x0)
        except NonConvergence:
            continue
        p = from_vector(spec, x)
        if residual(spec, p) <= ACCEPT:
            return p
    raise NonConvergence(f"no point found after {redraws} redraws")


def sample(spec: VarietySpec, seed: int, count: int) -> list[PointY]:
    require_weakly_hyperbolic(spec)
    children = np.random.SeedSequence(seed).spawn(count)
    return [sample_one(spec, np.random.default_rng(c)) for c in children]


def sample_face(spec: VarietySpec, zero: tuple[int, ...], seed: int, count: int) -> list[PointY]:
    """Sample the face ``Z_k = 0 (k in zero)`` and re-embed in the full spec."""
    face = spec.face(zero)
    require_weakly_hyperbolic(face)
    keep = [k for k in range(spec.m) if k not in set(zero)]
    out = []
    for c in np.random.SeedSequence(seed).spawn(count):
        q = sample_one(face, np.random.default_rng(c))
        Z = np.zeros(spec.m, dtype=q.Z.dtype)
        Z[keep] = q.Z
        out.append(PointY(Z, q.V, q.W))
    return out


def fold_positive(p: PointY) -> PointY:
    """Move ``p`` into Y+ by replacing each ``Z_k`` with ``|Z_k|``."""
    Z = np.abs(p.Z)
    return PointY(Z.astype(p.Z.dtype), p.V.copy(), p.W.copy())


# point-cloud records: "n m s field Z... V... W..." with 17 significant digits


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def format_point(spec: VarietySpec, p: PointY) -> str:
    if spec.is_complex:
        z = np.column_stack([p.Z.real, np.imag(p.Z)]).ravel()
    else:
        z = np.real(p.Z)
    head = [str(spec.n), str(spec.m), str(spec.s), spec.field]
    body = [_fmt(v) for v in np.concatenate([z, p.V.ravel(), p.W.ravel()])]
    return " ".join(head + body)


def parse_point(line: str) -> tuple[tuple[int, int, int, str], PointY]:
    tok = line.split()
    n, m, s, fld = int(tok[0]), int(tok[1]), int(tok[2]), tok[3]
    vals = np.array([float(t) for t in tok[4:]])
    zw = 2 if fld == "complex" else 1
    expected = zw * m + 2 * s * n
    if vals.size != expected:
        raise ValueError(f"record has {vals.size} coordinates, expected {expected}")
    k = zw * m
    Z = vals[0:k:2] + 1j * vals[1:k:2] if zw == 2 else vals[:k]
    V = vals[k : k + s * n].reshape(s, n)
    W = vals[k + s * n :].reshape(s, n)
    return (n, m, s, fld), PointY(Z, V, W)


def write_points(spec: VarietySpec, points: Iterable[PointY], fh: TextIO) -> None:
    for p in points:
        fh.write(format_point(spec, p) + "\n")


def read_points(fh: TextIO) -> list[tuple[tuple[int, int, int, str], PointY]]:
    return [parse_point(line) for line in fh if line.strip()]
