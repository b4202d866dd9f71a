"""Verification suites, one per part of the construction.

Each suite returns a list of :class:`Check` records plus an optional payload
dict; the CLI turns them into a report and the acceptance tests assert on
them directly.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, asdict, field

import numpy as np

from . import algebra, hull, maps, sampling, simplex, topology
from .errors import NoPrediction
from .variety import (
    VarietySpec,
    act,
    eval_defining,
    eval_sphere,
    from_vector,
    is_regular,
    jacobian,
    lift_from_VW,
    point,
    random_torus,
    residual,
    to_vector,
)

REL = 1e-12


@dataclass
class Check:
    name: str
    passed: bool
    max_residual: float = 0.0
    count: int = 0
    info: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = bool(d["passed"])
        d["max_residual"] = float(d["max_residual"])
        return d


def _le(name, values, tol, count=None, **info) -> Check:
    values = np.atleast_1d(np.asarray(values, dtype=float))
    worst = float(np.max(values)) if values.size else 0.0
    return Check(name, bool(np.all(np.isfinite(values)) and worst <= tol), worst,
                 int(values.size if count is None else count), info)


# ---------------------------------------------------------------- algebra


def algebra_suite(n: int, seed: int = 0, count: int = 10_000) -> tuple[list[Check], dict]:
    rng = np.random.default_rng(seed)
    a, b, c = (algebra.random_elements(rng, n, count) for _ in range(3))
    na, nb, nc = algebra.norm(a), algebra.norm(b), algebra.norm(c)
    ab = algebra.mul(a, b)
    checks = [
        _le("composition", np.abs(algebra.norm(ab) - na * nb) / (na * nb), REL),
        _le("braid", np.abs(algebra.inner(ab, c) - algebra.inner(b, algebra.mul(algebra.conj(a), c))) / (na * nb * nc), REL),
        _le("left-alternative",
            algebra.norm(algebra.mul(a, ab) - algebra.mul(algebra.mul(a, a), b)) / (na**2 * nb), REL),
        _le("right-alternative",
            algebra.norm(algebra.mul(algebra.mul(b, a), a) - algebra.mul(b, algebra.mul(a, a))) / (na**2 * nb), REL),
        _le("conj-involution", np.max(np.abs(algebra.conj(algebra.conj(a)) - a), axis=-1), 0.0),
        _le("re-ab-eq-re-ba", np.abs(ab[:, 0] - algebra.mul(b, a)[:, 0]) / (na * nb), REL),
        _le("a-conj-a", algebra.norm(algebra.mul(a, algebra.conj(a)) - (na**2)[:, None] * algebra.one(n)) / na**2, REL),
        _le("inverse", algebra.norm(algebra.mul(a, algebra.inverse(a)) - algebra.one(n)), REL),
    ]
    assoc = algebra.norm(algebra.associator(a, b, c)) / (na * nb * nc)
    witness = algebra.nonassociative_triple(n)
    if n <= 4:
        checks.append(_le("associative", assoc, REL))
        checks.append(Check("no-basis-witness", witness is None, 0.0, n**3))
    else:
        checks.append(Check("nonassociative-witness", witness is not None, float(np.max(assoc)), n**3,
                            {"triple": list(witness) if witness else None}))
    return checks, {"witness": list(witness) if witness else None}


# ---------------------------------------------------------------- simplex


def _random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def simplex_suite(n: int, seed: int = 0, count: int = 1000) -> tuple[list[Check], dict]:
    rng = np.random.default_rng(seed)
    frame = simplex.build_lambda(n)
    norms = algebra.norm(frame)
    checks = [
        _le("gram", simplex.gram_defect(frame), REL),
        _le("unit", np.abs(norms - 1.0), REL),
        _le("sum-zero", algebra.norm(frame.sum(axis=0)), REL),
    ]
    x = rng.standard_normal((count, n))
    rec = np.array([simplex.reconstruct(frame, xi) for xi in x])
    checks.append(_le("reconstruct", algebra.norm(rec - x) / algebra.norm(x), REL))

    V, W = rng.standard_normal((2, count, n))
    errs = []
    for v, w in zip(V, W):
        u = simplex.span_embed(frame, simplex.SpanCoords(v, w))
        cc = simplex.span_coords(frame, u)
        errs.append(np.linalg.norm(np.concatenate([cc.V - v, cc.W - w])) / np.linalg.norm(np.concatenate([v, w])))
    checks.append(_le("span-roundtrip", errs, REL))
    rank = int(np.linalg.matrix_rank(simplex.embedding_matrix(frame)))
    checks.append(Check("span-dimension", rank == 2 * n, 0.0, 1, {"rank": rank}))

    # linear dependence: sum c_k lambda_k = 0 exactly for constant c
    cs = rng.standard_normal((count, n + 1))
    cs[: count // 10] = cs[: count // 10, :1]
    lhs = algebra.norm(cs @ frame) <= 1e-12
    rhs = np.max(np.abs(cs - cs.mean(axis=1, keepdims=True)), axis=1) <= 1e-9
    checks.append(Check("linear-dependence", bool(np.all(lhs == rhs)), 0.0, count,
                        {"constant_rows": int(rhs.sum())}))

    A = _random_orthogonal(rng, n)
    checks.append(_le("rotated-frame-gram", simplex.gram_defect(frame @ A.T), 1e-12))
    if n == 2:
        zc = frame[:, 0] + 1j * frame[:, 1]
        checks.append(_le("complex-cube-roots", [abs(zc.sum()), abs((zc**2).sum())], REL))
    return checks, {"frame": frame.tolist()}


# ---------------------------------------------------------------- variety


def hull_examples(tol: float = 1e-12) -> list[Check]:
    out = []
    with_zero = np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 1.0]])
    cert = hull.hull_membership(with_zero, 1)
    out.append(Check("hull-contains-zero", cert.member and cert.coefficients is not None, 0.0, 1))
    for n in algebra.DIMS:
        frame = simplex.build_lambda(n)
        cert = hull.hull_membership(frame, n)
        margins = [float(np.min(frame[list(s)] @ d)) for s, d in cert.directions.items()]
        ok = (not cert.member) and len(cert.directions) == n + 1 and min(margins) > 0
        out.append(Check(f"hull-standard-frame-n{n}", ok, 0.0, len(cert.directions),
                         {"min_margin": min(margins) if margins else None}))
    cert = hull.hull_membership(np.array([[1.0, 0.0], [-1.0, 0.0]]), 2)
    coeffs = cert.coefficients if cert.coefficients is not None else np.full(2, np.nan)
    out.append(_le("hull-midpoint", np.abs(coeffs - 0.5), tol, member=bool(cert.member)))
    out[-1].passed = out[-1].passed and cert.member
    return out


def singular_example(tol: float = 1e-10) -> Check:
    spec = VarietySpec.general(np.array([[1.0, 0.0], [-1.0, 0.0]]), n=2)
    p = point(spec, np.array([1, 1]) / np.sqrt(2), np.zeros(2), np.zeros(2))
    reg = is_regular(spec, p, tol)
    return Check("singular-example-flagged", not reg.regular, reg.sigma_min, 1, {"rank": reg.rank})


def finite_difference_jacobian(spec: VarietySpec, p, h: float = 1e-5) -> np.ndarray:
    x = to_vector(spec, p)
    cols = []
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        fp = eval_defining(spec, from_vector(spec, x + e))
        fm = eval_defining(spec, from_vector(spec, x - e))
        cols.append((np.concatenate([[fp[0]], fp[1]]) - np.concatenate([[fm[0]], fm[1]])) / (2 * h))
    return np.column_stack(cols)


def variety_suite(spec: VarietySpec, seed: int = 0, count: int = 1000, tol: float = 1e-10,
                  points=None) -> tuple[list[Check], dict]:
    rng = np.random.default_rng(seed + 17)
    pts = points if points is not None else sampling.sample(spec, seed, count)
    res = [residual(spec, p) for p in pts]
    regs = [is_regular(spec, p, tol) for p in pts]
    sig = np.array([r.sigma_min for r in regs])
    checks = [
        _le("residual", res, 1e-10),
        Check("regular", all(r.regular for r in regs), float(sig.min()), len(regs),
              {"sigma_min": float(sig.min()), "sigma_median": float(np.median(sig))}),
    ]
    vw = [float(np.linalg.norm(algebra.mul(p.V, p.W).sum(axis=0))) for p in pts]
    checks.append(Check("vw-below-half", max(vw) < 0.5, max(vw), len(vw)))

    inv = []
    for p in pts:
        F0, F = eval_defining(spec, p)
        G0, G = eval_defining(spec, act(random_torus(rng, spec), p))
        inv.append(max(abs(F0 - G0), float(np.max(np.abs(F - G)))))
    checks.append(_le("torus-invariance", inv, 1e-14))

    fd = [np.max(np.abs(jacobian(spec, p) - finite_difference_jacobian(spec, p))) for p in pts[:100]]
    checks.append(_le("jacobian-fd", fd, 1e-6))

    if spec.standard:
        lifts = []
        for p in pts:
            q = lift_from_VW(spec, p.V[0], p.W[0])
            lifts.append(np.inf if q is None else max(residual(spec, q), float(np.max(np.abs(np.abs(q.Z) - np.abs(p.Z))))))
        checks.append(_le("lift-from-vw", lifts, 1e-6))
        fixed = point(spec, np.zeros(spec.m), np.zeros(spec.n), algebra.one(spec.n))
        checks.append(Check("fixed-point-regular", bool(is_regular(spec, fixed, tol)), is_regular(spec, fixed, tol).sigma_min, 1))

    if not spec.is_complex:
        cspec = VarietySpec(spec.n, spec.frame, spec.s, "complex", spec.coef, spec.standard)
        emb = [residual(cspec, point(cspec, p.Z.astype(complex), p.V, p.W)) for p in pts]
        checks.append(_le("real-restriction", emb, 1e-10))

    checks.append(singular_example())
    checks.extend(hull_examples())
    return checks, {"sigma_min": float(sig.min()), "max_vw": max(vw)}


# ---------------------------------------------------------------- maps


def _coords_err(spec, p, q) -> float:
    return float(np.max(np.abs(to_vector(spec, p) - to_vector(spec, q))))


def boundary_points(spec: VarietySpec, seed: int, per_face: int) -> list:
    out = []
    for k in range(spec.m):
        out += sampling.sample_face(spec, (k,), seed + 1000 + k, per_face)
    return out


def maps_suite(spec: VarietySpec, seed: int = 0, count: int = 1000, points=None) -> tuple[list[Check], dict]:
    frame = spec.frame
    n = spec.n
    rng = np.random.default_rng(seed + 29)
    checks = []

    amb = []
    for _ in range(10 * count):
        x = rng.standard_normal(spec.ambient_dim)
        amb.append(maps.gf_relation_residual(frame, from_vector(spec, x)) / max(1.0, x @ x))
    checks.append(_le("gf-relation", amb, REL))
    sv = np.linalg.svd(maps.relation_matrix(frame), compute_uv=False)
    checks.append(Check("relation-matrix-invertible", sv[-1] > 1e-8, float(sv[-1]), 1))

    pts = points if points is not None else sampling.sample(spec, seed, count)
    rt, sph, spn, eqv = [], [], [], []
    for p in pts:
        q = maps.y_to_x(frame, p)
        sph.append(float(np.max(np.abs(eval_sphere(spec, q)))))
        spn.append(simplex.span_residual(frame, q.u))
        rt.append(_coords_err(spec, maps.x_to_y(frame, q), p))
        g = random_torus(rng, spec)
        eqv.append(float(np.max(np.abs(maps.y_to_x(frame, act(g, p)).z - g * q.z))))
    checks += [_le("sphere-residual", sph, 1e-9), _le("span-membership", spn, 1e-9),
               _le("x-y-roundtrip", rt, 1e-9), _le("equivariance", eqv, 1e-12)]

    zdist = []
    for p, r in zip(pts[:-1], pts[1:]):
        dz = np.linalg.norm(p.Z - r.Z)
        if dz > 0:
            dx = np.linalg.norm(maps.y_to_x(frame, p).z - maps.y_to_x(frame, r).z)
            zdist.append((1 - 1e-6) * np.sqrt(n + 1) * dz - dx)
    checks.append(_le("injective-z-block", zdist, 0.0))

    per_face = max(2, -(-10 // spec.m))
    bpts = boundary_points(spec, seed, per_face)
    slice_pts = [maps.normalize_fiber(sampling.fold_positive(p)) for p in pts]
    rt_full, rt_phi, spheres = [], [], []
    for p in slice_pts + [maps.normalize_fiber(sampling.fold_positive(b)) for b in bpts]:
        im = maps.phi(p)
        c = maps.psi(im)
        spheres.append(c.defect())
        back = maps.inverse_psi_phi(frame, c)
        rt_full.append(_coords_err(spec, back, p))
        im2 = maps.phi(back)
        rt_phi.append(max(float(np.max(np.abs(im2.Z - im.Z))), float(np.max(np.abs(im2.P - im.P))),
                          abs(im2.v - im.v), abs(im2.w - im.w)))
    checks += [
        _le("psi-phi-roundtrip", rt_full, 1e-9, boundary=len(bpts)),
        _le("phi-image-roundtrip", rt_phi, 1e-9),
        _le("s-plus-sphere", spheres, REL),
    ]

    corr = []
    for p in bpts + slice_pts[:100]:
        p = sampling.fold_positive(p)
        a = maps.psi(maps.phi(p)).a
        corr.append(bool(np.any(np.abs(p.Z) <= 1e-15)) == bool(np.any(a <= 1e-15)))
    checks.append(Check("boundary-correspondence", all(corr), 0.0, len(corr),
                        {"boundary_points": len(bpts)}))

    V, W = rng.standard_normal((2, count, n))
    P, v, w = maps.hopf(V, W)
    checks.append(_le("hopf-norm", np.abs(algebra.norm(P) - algebra.norm(V) * algebra.norm(W)) / (algebra.norm(V) * algebra.norm(W)), REL))
    if n <= 4:
        a = rng.standard_normal((count, n))
        a /= algebra.norm(a)[:, None]
        P2 = algebra.mul(algebra.mul(V, a), algebra.mul(algebra.conj(a), W))
        checks.append(_le("hopf-fiber", algebra.norm(P2 - P) / (algebra.norm(V) * algebra.norm(W)), 1e-12))
    return checks, {"boundary_points": len(bpts)}


# ---------------------------------------------------------------- topology


def predictions(spec: VarietySpec) -> dict:
    out: dict = {}
    try:
        out["type"] = topology.predicted_type(spec).as_dict()
    except NoPrediction as exc:
        out["type"] = None
        out["no_prediction"] = str(exc)
        return out
    try:
        fv = topology.freeness_verdict(spec)
        out["freeness"] = {"verdict": fv.verdict, "betti_sum": fv.betti_sum, "fixed_betti_sum": fv.fixed_betti_sum}
    except NoPrediction as exc:
        out["freeness"] = None
        out["no_freeness"] = str(exc)
    if spec.standard:
        out["fixed_sets"] = {str(k): topology.fixed_set_prediction(spec, k).as_dict() for k in range(1, spec.n + 2)}
    return out


def prediction_checks(spec: VarietySpec, payload: dict) -> list[Check]:
    checks = []
    t = payload.get("type")
    if t is None:
        return [Check("prediction-available", False)]
    betti = tuple(t["betti"])
    p = topology.PoincarePolynomial(betti)
    checks.append(Check("poincare-duality", p.is_dual(), 0.0, len(betti)))
    checks.append(Check("dimension-consistent", p.dim == t["dimension"] == spec.manifold_dim, 0.0, 1,
                        {"dimension": t["dimension"], "manifold_dim": spec.manifold_dim}))
    if p.dim % 2 == 1:
        checks.append(Check("odd-euler-zero", p.euler == 0, 0.0, 1))
    return checks


def fixed_point_suite(spec: VarietySpec, seed: int = 0, count: int = 1000) -> tuple[list[Check], dict]:
    r = topology.verify_fixed_points(spec, seed, count)
    checks = [
        Check("two-components", len(r.components) == 2, 0.0, r.samples, {"components": r.components}),
        Check("v-or-w-zero", r.violations == 0, r.max_small_norm, r.samples),
        _le("fixed-residual", r.max_residual, 1e-10, count=r.samples),
        Check("fixed-under-torus", r.fixed_under_torus == r.samples, 0.0, r.samples),
        Check("generic-moved", r.moved == r.generic, 0.0, r.generic),
    ]
    return checks, {"components": r.components}


# ---------------------------------------------------------------- serialization


def serialization_roundtrip(spec: VarietySpec, pts) -> Check:
    buf = io.StringIO()
    sampling.write_points(spec, pts, buf)
    buf.seek(0)
    back = sampling.read_points(buf)
    exact = len(back) == len(pts) and all(
        h == (spec.n, spec.m, spec.s, spec.field)
        and np.array_equal(to_vector(spec, q), to_vector(spec, p))
        for (h, q), p in zip(back, pts)
    )
    return Check("pointcloud-roundtrip", exact, 0.0, len(pts))
