import numpy as np
import pytest

from divquad import algebra, simplex
from divquad.errors import DimensionError, NotInSpan
from divquad.simplex import SpanCoords


def test_n1_frame():
    assert np.array_equal(simplex.build_lambda(1), [[-1.0], [1.0]])


def test_n2_frame():
    # one inductive step from (-1, 1): (sqrt(3/4) * mu, -1/2) and (0, 1)
    expected = [[-np.sqrt(3) / 2, -0.5], [np.sqrt(3) / 2, -0.5], [0.0, 1.0]]
    assert np.allclose(simplex.build_lambda(2), expected, atol=1e-15)


def test_gram_and_sum(n):
    frame = simplex.build_lambda(n)
    assert frame.shape == (n + 1, n)
    gram = frame @ frame.T
    assert np.allclose(np.diag(gram), 1.0, atol=1e-12)
    off = gram[~np.eye(n + 1, dtype=bool)]
    assert np.allclose(off, -1.0 / n, atol=1e-12)
    assert np.linalg.norm(frame.sum(axis=0)) <= 1e-12


def test_unsupported_dim():
    with pytest.raises(DimensionError):
        simplex.build_lambda(3)


def test_reconstruct(n, rng):
    frame = simplex.build_lambda(n)
    assert np.array_equal(simplex.reconstruct(frame, np.zeros(n)), np.zeros(n))
    assert np.allclose(simplex.reconstruct(frame, frame[0]), frame[0], atol=1e-14)
    x = rng.standard_normal(n)
    assert np.allclose(simplex.reconstruct(frame, x), x, rtol=1e-12, atol=0)


def test_reconstruct_rejects_other_frames():
    with pytest.raises(DimensionError):
        simplex.reconstruct(np.array([[1.0, 0.0], [-1.0, 0.0]]), np.zeros(2))


def test_span_examples(n):
    frame = simplex.build_lambda(n)
    ones = np.tile(algebra.one(n), (n + 1, 1))
    assert np.allclose(simplex.span_embed(frame, SpanCoords(np.zeros(n), algebra.one(n))), ones)
    assert np.allclose(simplex.span_embed(frame, SpanCoords(algebra.one(n), np.zeros(n))), frame)
    c = simplex.span_coords(frame, ones)
    assert np.allclose(c.V, 0, atol=1e-15) and np.allclose(c.W, algebra.one(n))
    c = simplex.span_coords(frame, frame)
    assert np.allclose(c.V, algebra.one(n)) and np.allclose(c.W, 0, atol=1e-15)


def test_span_roundtrip(n, rng):
    frame = simplex.build_lambda(n)
    for _ in range(50):
        V, W = rng.standard_normal((2, n))
        c = simplex.span_coords(frame, simplex.span_embed(frame, SpanCoords(V, W)))
        assert np.allclose(c.V, V, rtol=1e-12, atol=1e-14)
        assert np.allclose(c.W, W, rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize("n", [2, 4, 8])
def test_off_span_rejected(n):
    frame = simplex.build_lambda(n)
    u = np.zeros((n + 1, n))
    u[0, 0] = 1.0
    # the re-embedding misses u: span has dimension 2n < n(n+1)
    assert simplex.span_residual(frame, u) > 0.1
    with pytest.raises(NotInSpan):
        simplex.span_coords(frame, u)


def test_span_dimension(n):
    assert np.linalg.matrix_rank(simplex.embedding_matrix(simplex.build_lambda(n))) == 2 * n


def test_linear_dependence_iff_constant(n, rng):
    frame = simplex.build_lambda(n)
    for _ in range(200):
        c = rng.standard_normal(n + 1)
        assert np.linalg.norm(c @ frame) > 1e-12
    c = np.full(n + 1, rng.standard_normal())
    assert np.linalg.norm(c @ frame) <= 1e-12


def test_rotated_frame_still_symmetric(n, rng):
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    assert simplex.is_standard(simplex.build_lambda(n) @ q.T)


def test_complex_frame_is_cube_roots():
    frame = simplex.build_lambda(2)
    z = frame[:, 0] + 1j * frame[:, 1]
    assert abs(z.sum()) <= 1e-12
    assert abs((z**2).sum()) <= 1e-12
    # lambda_k = mu * (cube root of unity); the frame is ordered (0, 2, 1) in angle
    ratios = z / z[0]
    assert np.allclose(ratios**3, 1.0, atol=1e-12)
    assert np.allclose(np.abs(z), 1.0, atol=1e-12)
