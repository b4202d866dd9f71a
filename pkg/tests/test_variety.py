import io

import numpy as np
import pytest

from divquad import algebra, sampling, simplex
from divquad.errors import DimensionError, NotWeaklyHyperbolic, OffVariety
from divquad.suites import finite_difference_jacobian
from divquad.variety import (
    VarietySpec,
    act,
    eval_defining,
    eval_sphere,
    from_vector,
    is_regular,
    jacobian,
    lift_from_VW,
    point,
    PointX,
    residual,
    to_vector,
)

R38 = np.sqrt(3 / 8)


def n1_point():
    spec = VarietySpec.standard_spec(1)
    return spec, point(spec, [R38, R38], [0.5], [0.0])


def test_zero_point(std_spec):
    n = std_spec.n
    F0, F = eval_defining(std_spec, point(std_spec, np.zeros(n + 1), np.zeros(n), np.zeros(n)))
    assert F0 == -1.0
    assert np.array_equal(F, np.zeros(n))


def test_n1_desk_point():
    # (1/2) * (3/8 * (-1) + 3/8 * 1) + (1/2)(0) = 0 and 3/8 + 3/8 + 1/4 = 1
    spec, p = n1_point()
    F0, F = eval_defining(spec, p)
    assert F0 == pytest.approx(0.0, abs=1e-15)
    assert F == pytest.approx([0.0], abs=1e-15)


def test_fixed_point_on_variety(std_spec):
    n = std_spec.n
    F0, F = eval_defining(std_spec, point(std_spec, np.zeros(n + 1), np.zeros(n), algebra.one(n)))
    assert F0 == 0.0 and np.array_equal(F, np.zeros(n))


def test_dimension_mismatch(std_spec):
    other = VarietySpec.standard_spec(8 if std_spec.n != 8 else 4)
    with pytest.raises(DimensionError):
        eval_defining(std_spec, point(other, np.zeros(other.m), np.zeros(other.n), np.zeros(other.n)))


def test_eval_sphere_examples(std_spec):
    n = std_spec.n
    ones = np.tile(algebra.one(n), (n + 1, 1))
    assert np.array_equal(eval_sphere(std_spec, PointX(np.zeros(n + 1), ones)), np.zeros(n + 1))
    assert np.array_equal(eval_sphere(std_spec, PointX(np.zeros(n + 1), 0 * ones)), -np.ones(n + 1))


def test_jacobian_zero_point(std_spec):
    n = std_spec.n
    J = jacobian(std_spec, point(std_spec, np.zeros(n + 1), np.zeros(n), np.zeros(n)))
    assert J.shape == (1 + n, std_spec.ambient_dim)
    assert np.array_equal(J, np.zeros_like(J))


@pytest.mark.parametrize("field", ["complex", "real"])
def test_jacobian_matches_finite_differences(n, field, rng):
    spec = VarietySpec.standard_spec(n, field)
    for _ in range(10):
        p = from_vector(spec, rng.standard_normal(spec.ambient_dim))
        assert np.max(np.abs(jacobian(spec, p) - finite_difference_jacobian(spec, p))) <= 1e-6


def test_jacobian_multi_pair(rng):
    spec = VarietySpec.general(rng.standard_normal((3, 4)), s=3)
    p = from_vector(spec, rng.standard_normal(spec.ambient_dim))
    assert np.max(np.abs(jacobian(spec, p) - finite_difference_jacobian(spec, p))) <= 1e-6


def test_c_block_is_left_multiplication(std_spec, rng):
    n = std_spec.n
    p = from_vector(std_spec, rng.standard_normal(std_spec.ambient_dim))
    C = jacobian(std_spec, p)[1:, -n:]
    assert np.allclose(C, algebra.left_matrix(p.V[0]))
    assert np.linalg.matrix_rank(C) == n


def test_regular_examples(std_spec):
    spec, p = n1_point()
    assert is_regular(spec, p).regular
    n = std_spec.n
    fixed = point(std_spec, np.zeros(n + 1), np.zeros(n), algebra.one(n))
    reg = is_regular(std_spec, fixed)
    assert reg.regular and reg.sigma_min > 0.5


def test_singular_example():
    spec = VarietySpec.general([[1.0, 0.0], [-1.0, 0.0]], n=2)
    p = point(spec, np.array([1.0, 1.0]) / np.sqrt(2), np.zeros(2), np.zeros(2))
    assert residual(spec, p) <= 1e-15
    reg = is_regular(spec, p)
    assert not reg.regular
    # image of DF is the real line: rank 2 of 3 rows
    assert reg.rank == 2


def test_regular_rejects_off_variety(std_spec):
    n = std_spec.n
    with pytest.raises(OffVariety):
        is_regular(std_spec, point(std_spec, np.zeros(n + 1), np.zeros(n), np.zeros(n)))


def test_act(std_spec, rng):
    p = from_vector(std_spec, rng.standard_normal(std_spec.ambient_dim))
    q = act(np.ones(std_spec.m), p)
    assert np.array_equal(q.Z, p.Z) and np.array_equal(q.V, p.V)
    g = np.exp(2j * np.pi * rng.random(std_spec.m))
    F0, F = eval_defining(std_spec, p)
    G0, G = eval_defining(std_spec, act(g, p))
    assert abs(F0 - G0) <= 1e-14 * max(1, abs(F0)) and np.allclose(F, G, rtol=0, atol=1e-13)
    sign = np.ones(std_spec.m)
    sign[0] = -1
    assert np.allclose(np.abs(act(sign, p).Z), np.abs(p.Z))


def test_act_errors(rng):
    spec = VarietySpec.standard_spec(2)
    p = from_vector(spec, rng.standard_normal(spec.ambient_dim))
    with pytest.raises(ValueError):
        act(2 * np.ones(3), p)
    real = VarietySpec.standard_spec(2, "real")
    q = from_vector(real, rng.standard_normal(real.ambient_dim))
    with pytest.raises(ValueError):
        act(np.exp(1j * np.ones(3)), q)
    with pytest.raises(DimensionError):
        act(np.ones(2), q)


def test_lift_examples(std_spec):
    n = std_spec.n
    q = lift_from_VW(std_spec, np.zeros(n), np.zeros(n))
    assert np.allclose(q.Z, 1 / np.sqrt(n + 1))
    q = lift_from_VW(std_spec, np.zeros(n), algebra.one(n))
    assert np.allclose(q.Z, 0)
    assert residual(std_spec, q) <= 1e-15


def test_lift_empty_n1():
    spec = VarietySpec.standard_spec(1)
    r = 1 / np.sqrt(2)
    assert lift_from_VW(spec, [r], [r]) is None


def test_lift_on_samples(std_spec):
    for p in sampling.sample(std_spec, 5, 20):
        q = lift_from_VW(std_spec, p.V[0], p.W[0])
        assert q is not None
        assert residual(std_spec, q) <= 1e-10
        assert np.all(q.Z.real >= 0)
        assert np.allclose(np.abs(q.Z), np.abs(p.Z), atol=1e-6)


def test_lift_needs_standard():
    with pytest.raises(DimensionError):
        lift_from_VW(VarietySpec.general([[1.0]]), [0.0], [0.0])


def test_vector_roundtrip(std_spec, rng):
    x = rng.standard_normal(std_spec.ambient_dim)
    assert np.array_equal(to_vector(std_spec, from_vector(std_spec, x)), x)


def test_manifold_dim():
    assert VarietySpec.standard_spec(2).manifold_dim == 7
    assert VarietySpec.standard_spec(8).manifold_dim == 25
    assert VarietySpec.standard_spec(2, "real").manifold_dim == 4
