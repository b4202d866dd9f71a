"""The quadric varieties Y, Y(lambda), Y(lambda, s) and the sphere intersection X.

A :class:`VarietySpec` fixes the algebra dimension ``n``, a frame of ``m``
vectors, the number ``s`` of ``(V, W)`` pairs and whether the ``Z``
variables are complex or real.  The defining map is

    F(Z, V, W)  = coef * sum_k |Z_k|^2 lambda_k + sum_l V_l W_l
    F0(Z, V, W) = sum_k |Z_k|^2 + sum_l (|V_l|^2 + |W_l|^2) - 1

with ``coef = n/2`` for the standard variety Y and ``coef = 1`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import algebra, simplex
from .errors import DimensionError, OffVariety

COMPLEX = "complex"
REAL = "real"


@dataclass(frozen=True)
class VarietySpec:
    n: int
    frame: np.ndarray
    s: int = 1
    field: str = COMPLEX
    coef: float = 1.0
    standard: bool = False

    def __post_init__(self):
        algebra.check_dim(self.n)
        frame = np.asarray(self.frame, dtype=float).reshape(-1, self.n)
        object.__setattr__(self, "frame", frame)
        if self.s < 1:
            raise DimensionError("s must be at least 1")
        if self.field not in (COMPLEX, REAL):
            raise ValueError(f"field must be 'complex' or 'real', not {self.field!r}")

    @classmethod
    def standard_spec(cls, n: int, field: str = COMPLEX) -> "VarietySpec":
        return cls(n, simplex.build_lambda(n), 1, field, n / 2.0, True)

    @classmethod
    def general(cls, frame, n: int | None = None, s: int = 1, field: str = COMPLEX) -> "VarietySpec":
        frame = np.asarray(frame, dtype=float)
        if n is None:
            n = frame.shape[-1]
        return cls(n, frame, s, field, 1.0, False)

    @property
    def m(self) -> int:
        return self.frame.shape[0]

    @property
    def is_complex(self) -> bool:
        return self.field == COMPLEX

    @property
    def z_width(self) -> int:
        """Real coordinates per Z variable."""
        return 2 if self.is_complex else 1

    @property
    def ambient_dim(self) -> int:
        return self.z_width * self.m + 2 * self.s * self.n

    @property
    def manifold_dim(self) -> int:
        return self.ambient_dim - 1 - self.n

    def face(self, zero: tuple[int, ...]) -> "VarietySpec":
        """Spec of the face where ``Z_k = 0`` for every ``k`` in ``zero``."""
        keep = [k for k in range(self.m) if k not in set(zero)]
        return VarietySpec(self.n, self.frame[keep], self.s, self.field, self.coef, False)


@dataclass
class PointY:
    Z: np.ndarray
    V: np.ndarray
    W: np.ndarray

    def __post_init__(self):
        self.Z = np.atleast_1d(np.asarray(self.Z))
        if not np.iscomplexobj(self.Z):
            self.Z = self.Z.astype(float)
        self.V = np.atleast_2d(np.asarray(self.V, dtype=float))
        self.W = np.atleast_2d(np.asarray(self.W, dtype=float))

    def copy(self) -> "PointY":
        return PointY(self.Z.copy(), self.V.copy(), self.W.copy())


@dataclass
class PointX:
    z: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        self.z = np.asarray(self.z, dtype=complex)
        self.u = np.atleast_2d(np.asarray(self.u, dtype=float))


def _check(spec: VarietySpec, p: PointY):
    if p.Z.shape != (spec.m,):
        raise DimensionError(f"expected {spec.m} Z coordinates, got {p.Z.shape}")
    if p.V.shape != (spec.s, spec.n) or p.W.shape != (spec.s, spec.n):
        raise DimensionError(f"V and W must have shape {(spec.s, spec.n)}")


def point(spec: VarietySpec, Z, V, W) -> PointY:
    p = PointY(Z, np.reshape(V, (spec.s, spec.n)), np.reshape(W, (spec.s, spec.n)))
    _check(spec, p)
    return p


def to_vector(spec: VarietySpec, p: PointY) -> np.ndarray:
    """Real coordinates ``(Re Z_0, Im Z_0, ..., V_1, ..., W_1, ...)``."""
    _check(spec, p)
    if spec.is_complex:
        z = np.column_stack([p.Z.real, np.imag(p.Z)]).ravel()
    else:
        z = np.real(p.Z).astype(float)
    return np.concatenate([z, p.V.ravel(), p.W.ravel()])


def from_vector(spec: VarietySpec, x: np.ndarray) -> PointY:
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.ambient_dim,):
        raise DimensionError(f"expected {spec.ambient_dim} real coordinates, got {x.shape}")
    k = spec.z_width * spec.m
    if spec.is_complex:
        Z = x[0:k:2] + 1j * x[1:k:2]
    else:
        Z = x[:k].copy()
    sn = spec.s * spec.n
    V = x[k : k + sn].reshape(spec.s, spec.n)
    W = x[k + sn :].reshape(spec.s, spec.n)
    return PointY(Z, V, W)


def eval_defining(spec: VarietySpec, p: PointY) -> tuple[float, np.ndarray]:
    """Return ``(F0, F)`` at ``p``."""
    _check(spec, p)
    z2 = np.abs(p.Z) ** 2
    F = spec.coef * (z2 @ spec.frame) if spec.m else np.zeros(spec.n)
    F = F + algebra.mul(p.V, p.W).sum(axis=0)
    F0 = z2.sum() + np.sum(p.V**2) + np.sum(p.W**2) - 1.0
    return float(F0), F


def residual(spec: VarietySpec, p: PointY) -> float:
    F0, F = eval_defining(spec, p)
    return float(np.sqrt(F0**2 + F @ F))


def cone_residual(spec: VarietySpec, x: np.ndarray) -> np.ndarray:
    """``F`` alone, as a function of the real coordinate vector."""
    return eval_defining(spec, from_vector(spec, x))[1]


def _f_jacobian(spec: VarietySpec, x: np.ndarray) -> np.ndarray:
    p = from_vector(spec, x)
    n = spec.n
    blocks = []
    if spec.m:
        zre = x[: spec.z_width * spec.m].reshape(spec.m, spec.z_width)
        # d/d(Re Z_k, Im Z_k) of coef |Z_k|^2 lambda_k
        dz = 2.0 * spec.coef * spec.frame[:, :, None] * zre[:, None, :]
        blocks.append(dz.transpose(1, 0, 2).reshape(n, -1))
    blocks += [algebra.right_matrix(p.W[l]) for l in range(spec.s)]
    blocks += [algebra.left_matrix(p.V[l]) for l in range(spec.s)]
    return np.hstack(blocks)


def jacobian(spec: VarietySpec, p: PointY) -> np.ndarray:
    """Derivative of ``(F0, F)``: ``(1 + n) x ambient_dim`` real matrix."""
    x = to_vector(spec, p)
    return np.vstack([2.0 * x, _f_jacobian(spec, x)])


@dataclass
class Regularity:
    regular: bool
    sigma_min: float
    rank: int
    singular_values: np.ndarray = dc_field(repr=False)

    def __bool__(self) -> bool:
        return self.regular


def is_regular(spec: VarietySpec, p: PointY, tol: float = 1e-10) -> Regularity:
    """Full-row-rank test of the Jacobian at an on-variety point."""
    r = residual(spec, p)
    if r > tol:
        raise OffVariety(f"residual {r:.3e} exceeds {tol:.1e}")
    sv = np.linalg.svd(jacobian(spec, p), compute_uv=False)
    rank = int(np.sum(sv > tol))
    sigma_min = float(sv[-1]) if len(sv) == 1 + spec.n else 0.0
    return Regularity(rank == 1 + spec.n and sigma_min > tol, sigma_min, rank, sv)


def eval_sphere(spec: VarietySpec, q: PointX) -> np.ndarray:
    """``G_k = |z_k|^2 + |u_k|^2 - 1`` for the sphere product defining X."""
    if not spec.standard:
        raise DimensionError("X is only defined for the standard spec")
    if q.z.shape != (spec.n + 1,) or q.u.shape != (spec.n + 1, spec.n):
        raise DimensionError("z must have n + 1 entries and u shape (n + 1, n)")
    return np.abs(q.z) ** 2 + np.sum(q.u**2, axis=1) - 1.0


def act(g, p: PointY) -> PointY:
    """Torus (or sign group) action ``Z_k -> g_k Z_k``."""
    g = np.atleast_1d(np.asarray(g))
    if g.shape != p.Z.shape:
        raise DimensionError(f"torus element has {g.shape} entries, point has {p.Z.shape}")
    if np.max(np.abs(np.abs(g) - 1.0)) > 1e-12:
        raise ValueError("torus entries must have modulus 1")
    if not np.iscomplexobj(p.Z):
        if np.iscomplexobj(g) and np.any(np.imag(g) != 0):
            raise ValueError("real-case points only admit sign entries")
        return PointY(np.real(g) * p.Z, p.V.copy(), p.W.copy())
    return PointY(g * p.Z, p.V.copy(), p.W.copy())


def random_torus(rng: np.random.Generator, spec: VarietySpec) -> np.ndarray:
    if spec.is_complex:
        return np.exp(2j * np.pi * rng.random(spec.m))
    return rng.choice([-1.0, 1.0], size=spec.m)


def lift_from_VW(spec: VarietySpec, V, W, clamp: float = 1e-12) -> PointY | None:
    """The point of Y+ over ``(V, W)``, or ``None`` if there is none.

    ``|Z_k|^2 = (1 - |V|^2 - |W|^2)/(n+1) - 2/(n+1) <lambda_k, VW>``: these are
    barycentric coordinates of ``-VW`` scaled to satisfy both equations.
    """
    if not spec.standard:
        raise DimensionError("lift_from_VW needs the standard spec")
    n = spec.n
    V = algebra.element(V, n)
    W = algebra.element(W, n)
    P = algebra.mul(V, W)
    t = (1.0 - V @ V - W @ W) / (n + 1) - 2.0 / (n + 1) * (spec.frame @ P)
    if np.any(t < -clamp):
        return None
    Z = np.sqrt(np.maximum(t, 0.0))
    if spec.is_complex:
        Z = Z.astype(complex)
    return PointY(Z, V[None, :], W[None, :])
