"""Predicted diffeomorphism types, Betti numbers and fixed-set checks.

Nothing here computes homology from scratch; the predictions are the known
closed forms (connected sums of sphere products, products of two spheres,
Stiefel manifolds) selected by the shape of a :class:`VarietySpec`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb

import numpy as np

from . import hull, sampling
from .errors import DimensionError, NoPrediction, NotWeaklyHyperbolic
from .variety import VarietySpec, act, random_torus, residual

log = logging.getLogger(__name__)

CONNECTED_SUM = "connected-sum"
PRODUCT = "product"
SPECIAL = "special"
STIEFEL = "stiefel"


@dataclass(frozen=True)
class SphereProductSummand:
    a: int
    b: int
    multiplicity: int = 1

    @property
    def dim(self) -> int:
        return self.a + self.b


@dataclass(frozen=True)
class PoincarePolynomial:
    betti: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.betti) - 1

    @property
    def total(self) -> int:
        return sum(self.betti)

    @property
    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def is_dual(self) -> bool:
        return self.betti == self.betti[::-1]

    def __getitem__(self, k: int) -> int:
        return self.betti[k] if 0 <= k < len(self.betti) else 0


def sphere_betti(k: int) -> np.ndarray:
    if k == 0:
        return np.array([2])
    p = np.zeros(k + 1, dtype=int)
    p[0] = p[k] = 1
    return p


def product_betti(a: int, b: int) -> PoincarePolynomial:
    """Kunneth formula for ``S^a x S^b``."""
    return PoincarePolynomial(tuple(int(x) for x in np.convolve(sphere_betti(a), sphere_betti(b))))


def connected_sum_betti(summands: list[SphereProductSummand]) -> PoincarePolynomial:
    """Betti numbers of a connected sum of products of two spheres.

    Interior degrees add over summands; degrees 0 and d stay 1.
    """
    if not summands:
        raise ValueError("need at least one summand")
    d = summands[0].dim
    for s in summands:
        if s.dim != d:
            raise DimensionError("summands have different dimensions")
        if s.a < 1 or s.b < 1 or s.multiplicity < 1:
            raise ValueError(f"invalid summand {s}")
    if d < 3:
        raise DimensionError("connected sums need dimension at least 3")
    betti = [0] * (d + 1)
    betti[0] = betti[d] = 1
    for s in summands:
        betti[s.a] += s.multiplicity
        betti[s.b] += s.multiplicity
    return PoincarePolynomial(tuple(betti))


@dataclass(frozen=True)
class DiffeotypeDescriptor:
    kind: str
    dimension: int
    summands: tuple[SphereProductSummand, ...] = ()
    note: str = ""

    @property
    def poincare(self) -> PoincarePolynomial:
        if self.kind == CONNECTED_SUM and (len(self.summands) > 1 or self.summands[0].multiplicity > 1):
            return connected_sum_betti(list(self.summands))
        # a single summand is just the product, which also covers the torus at n = 1
        (s,) = self.summands
        return product_betti(s.a, s.b)

    def label(self) -> str:
        if self.kind == STIEFEL:
            return self.note
        parts = []
        for s in self.summands:
            term = f"S^{s.a} x S^{s.b}"
            parts.append(f"#{s.multiplicity} {term}" if s.multiplicity > 1 else term)
        return " # ".join(parts)

    def as_dict(self) -> dict:
        p = self.poincare
        return {
            "kind": self.kind,
            "dimension": self.dimension,
            "summands": [[s.a, s.b, s.multiplicity] for s in self.summands],
            "betti": list(p.betti),
            "betti_sum": p.total,
            "euler": p.euler,
            "label": self.label(),
            "note": self.note,
        }


def _product(a: int, b: int, kind: str = PRODUCT, note: str = "") -> DiffeotypeDescriptor:
    return DiffeotypeDescriptor(kind, a + b, (SphereProductSummand(a, b),), note)


def complex_case_summands(n: int) -> list[SphereProductSummand]:
    """``#_{k=1}^{ceil(n/2)} #_{C(n+1,k)} S^{n+k} x S^{2n+1-k}``, literally."""
    top = 1 if n == 1 else n // 2
    return [SphereProductSummand(n + k, 2 * n + 1 - k, comb(n + 1, k)) for k in range(1, top + 1)]


def real_case_summands(n: int) -> list[SphereProductSummand]:
    return [SphereProductSummand(n, n, 2**n - 1)]


def _real_variable_count(spec: VarietySpec) -> int:
    return spec.z_width * spec.m


def predicted_type(spec: VarietySpec) -> DiffeotypeDescriptor:
    """Closed-form diffeomorphism type of Y(lambda, s), when one is known.

    Raises :class:`NotWeaklyHyperbolic` for singular specs and
    :class:`NoPrediction` when no closed form applies.
    """
    n, s = spec.n, spec.s
    if spec.m and hull.hull_membership(spec.frame, n).member:
        raise NotWeaklyHyperbolic("frame is not weakly hyperbolic")
    in_hull = hull.origin_in_hull(spec.frame)
    dim = spec.manifold_dim

    if n == 2:
        # the table for n = 2 counts real Z variables (a complex Z is two of them)
        k = _real_variable_count(spec)
        if k == 0:
            return _product(2 * s - 2, 2 * s - 1, STIEFEL, f"Stiefel manifold V_{{{2 * s},2}}")
        if not in_hull:
            return _product(k + 2 * s - 2, 2 * s - 1)
        if k == 3:
            summands = (SphereProductSummand(2 * s, 2 * s, 3),)
            return DiffeotypeDescriptor(CONNECTED_SUM, 4 * s, summands)
    if s == 1:
        if not in_hull and (spec.is_complex or spec.m == 0):
            return _product(2 * spec.m, n - 1)
        if spec.m == n + 1 and in_hull:
            if not spec.is_complex:
                return DiffeotypeDescriptor(CONNECTED_SUM, 2 * n, tuple(real_case_summands(n)))
            if n == 1:
                literal = complex_case_summands(1)
                note = (
                    "complex connected-sum formula read literally at n=1 gives "
                    f"{literal[0].multiplicity} copies of S^2 x S^2; X = S^2 x S^2 is used instead"
                )
                log.warning(note)
                return _product(2, 2, SPECIAL, note)
            return DiffeotypeDescriptor(CONNECTED_SUM, 3 * n + 1, tuple(complex_case_summands(n)))
    raise NoPrediction(f"no closed form for n={n}, m={spec.m}, s={s}, field={spec.field} (dim {dim})")


def fixed_set_prediction(spec: VarietySpec, fixed_circle_count: int) -> DiffeotypeDescriptor:
    """Fixed set of a coordinate subtorus with ``fixed_circle_count`` circles: ``S^{2m'} x S^{n-1}``."""
    if not spec.standard:
        raise DimensionError("fixed-set prediction needs the standard spec")
    if not 1 <= fixed_circle_count <= spec.n + 1:
        raise ValueError(f"fixed circle count must be in 1..{spec.n + 1}")
    rest = spec.n + 1 - fixed_circle_count
    return _product(2 * rest, spec.n - 1)


def fixed_point_set(spec: VarietySpec) -> DiffeotypeDescriptor:
    """``Y^T``: the variety with every ``Z_k = 0``."""
    if spec.n == 2 or spec.s == 1:
        return predicted_type(VarietySpec(spec.n, np.zeros((0, spec.n)), spec.s, spec.field, spec.coef))
    raise NoPrediction("fixed set unknown for n != 2 and s > 1")


@dataclass
class FreenessVerdict:
    verdict: str
    betti_sum: int
    fixed_betti_sum: int

    @property
    def free(self) -> bool:
        return self.verdict == "free"


def freeness_verdict(spec: VarietySpec) -> FreenessVerdict:
    """Free iff Y and its fixed set have the same total Betti number."""
    total = predicted_type(spec).poincare.total
    fixed = fixed_point_set(spec).poincare.total
    verdict = "free" if total == fixed else "torsion-free-not-free"
    return FreenessVerdict(verdict, total, fixed)


@dataclass
class FixedPointReport:
    samples: int
    components: dict[str, int]
    violations: int
    max_residual: float
    max_small_norm: float
    moved: int
    generic: int
    fixed_under_torus: int

    @property
    def passed(self) -> bool:
        return (
            len(self.components) == 2
            and self.violations == 0
            and self.moved == self.generic
            and self.fixed_under_torus == self.samples
        )


def verify_fixed_points(spec: VarietySpec, seed: int, count: int, tol: float = 1e-10) -> FixedPointReport:
    """Sample ``{Z = 0}`` on Y and check it splits into ``{V = 0}`` and ``{W = 0}``.

    Component names follow the unit sphere that survives: ``"W"`` means
    ``V = 0, |W| = 1``.
    """
    if not spec.standard:
        raise DimensionError("fixed-point verification needs the standard spec")
    rng = np.random.default_rng(seed)
    fixed = sampling.sample_face(spec, tuple(range(spec.m)), seed, count)
    components = {}
    violations = 0
    max_res = 0.0
    max_small = 0.0
    still = 0
    for p in fixed:
        nv, nw = float(np.linalg.norm(p.V)), float(np.linalg.norm(p.W))
        small = min(nv, nw)
        max_small = max(max_small, small)
        max_res = max(max_res, residual(spec, p))
        if small > tol:
            violations += 1
            continue
        name = "W" if nv <= nw else "V"
        components[name] = components.get(name, 0) + 1
        q = act(random_torus(rng, spec), p)
        if np.array_equal(q.Z, p.Z):
            still += 1
    generic = sampling.sample(spec, seed + 1, max(1, count // 10))
    moved = 0
    for p in generic:
        g = random_torus(rng, spec) if spec.is_complex else -np.ones(spec.m)
        if np.linalg.norm(act(g, p).Z - p.Z) > 1e-8:
            moved += 1
    return FixedPointReport(count, components, violations, max_res, max_small, moved, len(generic), still)
