import numpy as np
import pytest

from divquad import simplex, topology
from divquad.errors import DimensionError, NoPrediction, NotWeaklyHyperbolic
from divquad.topology import SphereProductSummand as S
from divquad.variety import VarietySpec, point


def test_betti_single_product():
    assert topology.product_betti(2, 2).betti == (1, 0, 2, 0, 1)


def test_betti_three_s2xs2():
    assert topology.connected_sum_betti([S(2, 2, 3)]).betti == (1, 0, 6, 0, 1)


def test_betti_n2_complex():
    assert topology.connected_sum_betti([S(3, 4, 3)]).betti == (1, 0, 0, 3, 3, 0, 0, 1)


def test_betti_n4_complex():
    p = topology.connected_sum_betti([S(5, 8, 5), S(6, 7, 10)])
    assert p.dim == 13
    assert (p[5], p[6], p[7], p[8]) == (5, 10, 10, 5)
    assert p[0] == p[13] == 1 and p.total == 32


def test_betti_errors():
    with pytest.raises(DimensionError):
        topology.connected_sum_betti([S(2, 2), S(3, 2)])
    with pytest.raises(DimensionError):
        topology.connected_sum_betti([S(1, 1, 2)])


def test_complex_summands_literal():
    assert topology.complex_case_summands(2) == [S(3, 4, 3)]
    assert topology.complex_case_summands(4) == [S(5, 8, 5), S(6, 7, 10)]
    assert topology.complex_case_summands(8) == [S(9, 16, 9), S(10, 15, 36), S(11, 14, 84), S(12, 13, 126)]
    assert topology.complex_case_summands(1) == [S(2, 3 - 1, 2)]


@pytest.mark.parametrize("n", [1, 2, 4, 8])
@pytest.mark.parametrize("field", ["complex", "real"])
def test_standard_predictions_are_consistent(n, field):
    spec = VarietySpec.standard_spec(n, field)
    d = topology.predicted_type(spec)
    p = d.poincare
    assert p.is_dual()
    assert p[0] == p[p.dim] == 1
    assert d.dimension == p.dim == spec.manifold_dim
    if p.dim % 2:
        assert p.euler == 0


def test_n1_complex_special(caplog):
    d = topology.predicted_type(VarietySpec.standard_spec(1))
    assert d.kind == topology.SPECIAL
    assert d.poincare.betti == (1, 0, 2, 0, 1)
    assert "literally" in caplog.text


def test_real_n1_torus():
    d = topology.predicted_type(VarietySpec.standard_spec(1, "real"))
    assert d.poincare.betti == (1, 2, 1) and d.poincare.euler == 0 and d.dimension == 2


def test_real_n2_euler():
    assert topology.predicted_type(VarietySpec.standard_spec(2, "real")).poincare.euler == 8


def test_single_frame_vector_example():
    d = topology.predicted_type(VarietySpec.general([[1.0]]))
    assert d.kind == topology.PRODUCT and d.summands == (S(2, 0),)
    assert d.poincare.betti == (2, 0, 2)


def test_stiefel():
    d = topology.predicted_type(VarietySpec.general(np.zeros((0, 2)), n=2, s=2))
    assert d.kind == topology.STIEFEL and "V_{4,2}" in d.note
    assert d.dimension == 5 and d.poincare.total == 4


def test_n2_table():
    frame = simplex.build_lambda(2)
    d = topology.predicted_type(VarietySpec(2, frame, 2, "real"))
    assert d.summands == (S(4, 4, 3),) and d.dimension == 8
    one_sided = np.array([[1.0, 0.0], [0.6, 0.8], [0.6, -0.8]])
    d = topology.predicted_type(VarietySpec(2, one_sided, 2, "real"))
    assert d.summands == (S(3 + 2, 3),)
    assert d.dimension == VarietySpec(2, one_sided, 2, "real").manifold_dim


def test_no_prediction():
    with pytest.raises(NoPrediction):
        topology.predicted_type(VarietySpec(4, simplex.build_lambda(4), 2))


def test_not_weakly_hyperbolic():
    with pytest.raises(NotWeaklyHyperbolic):
        topology.predicted_type(VarietySpec.general([[1.0, 0.0], [-1.0, 0.0]]))


def test_fixed_set_prediction():
    spec4 = VarietySpec.standard_spec(4)
    assert topology.fixed_set_prediction(spec4, 5).summands == (S(0, 3),)
    assert topology.fixed_set_prediction(VarietySpec.standard_spec(2), 1).summands == (S(4, 1),)
    with pytest.raises(ValueError):
        topology.fixed_set_prediction(spec4, 0)


@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_freeness_standard(n):
    v = topology.freeness_verdict(VarietySpec.standard_spec(n))
    assert v.free == (n == 1)
    assert v.fixed_betti_sum == 4


def test_freeness_n2_values():
    v = topology.freeness_verdict(VarietySpec.standard_spec(2))
    assert (v.betti_sum, v.fixed_betti_sum, v.verdict) == (8, 4, "torsion-free-not-free")


@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_freeness_one_sided(n, rng):
    frame = np.abs(rng.standard_normal((3, n))) + 0.1
    v = topology.freeness_verdict(VarietySpec.general(frame))
    assert v.free and v.betti_sum == 4


def test_verify_fixed_points(std_spec):
    r = topology.verify_fixed_points(std_spec, 0, 100)
    assert set(r.components) == {"V", "W"}
    assert r.violations == 0 and r.passed


def test_verify_fixed_points_real():
    r = topology.verify_fixed_points(VarietySpec.standard_spec(2, "real"), 1, 50)
    assert r.passed
