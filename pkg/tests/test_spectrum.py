import numpy as np
import pytest

from girard_couples.spectrum import (
    MatrixAlgebra,
    MatrixSubspace,
    check_girard_sampled,
    full_algebra,
    product_algebra_spectrum,
    residual_into_d,
    subspace_distance,
    subspace_product,
    trace_perp,
)


def E(n, i, j):
    m = np.zeros((n, n), dtype=complex)
    m[i, j] = 1
    return m


def perp_by_qr(a: MatrixSubspace) -> np.ndarray:
    """Orthonormal basis of {C | tr(AC) = 0}: the complement of conj(vec(A^T)) under <x, y> = x^* y."""
    n = a.n
    rows = np.array([M.T.ravel() for M in a.matrices()]).reshape(-1, n * n)
    # tr(AC) = sum_ij A_ji C_ij = vec(A^T) . vec(C)
    full = np.vstack([rows.conj(), np.eye(n * n, dtype=complex)]).T
    q, _ = np.linalg.qr(full)
    return q[:, a.dim:].T  # the columns after the first dim(a) span the complement


def as_subspace(n, rows):
    return full_algebra(n).span(np.asarray(rows).reshape(-1, n, n))


def test_elementary_products():
    alg = full_algebra(2)
    e12 = alg.span([E(2, 0, 1)])
    e11 = alg.span([E(2, 0, 0)])
    assert subspace_product(e12, e12).dim == 0
    assert subspace_distance(subspace_product(e11, e12), e12) < 1e-12
    rng = np.random.default_rng(0)
    b = alg.random_subspace(rng, 3)
    assert subspace_distance(subspace_product(alg.unit(), b), b) < 1e-12
    with pytest.raises(ValueError):
        subspace_product(e11, full_algebra(3).unit())


def test_trace_perp_examples():
    alg = full_algebra(2)
    assert trace_perp(alg.zero()).dim == 4
    d = trace_perp(alg.unit())
    assert d.dim == 3 and all(abs(np.trace(M)) < 1e-12 for M in d.matrices())
    p = trace_perp(alg.span([E(2, 0, 0)]))
    want = alg.span([E(2, 0, 1), E(2, 1, 0), E(2, 1, 1)])
    assert subspace_distance(p, want) < 1e-12


@pytest.mark.parametrize("n", [2, 3])
def test_trace_perp_matches_qr(n):
    rng = np.random.default_rng(7)
    alg = full_algebra(n)
    for _ in range(20):
        a = alg.random_subspace(rng)
        got = trace_perp(a)
        assert got.dim + a.dim == n * n
        want = as_subspace(n, perp_by_qr(a))
        assert subspace_distance(got, want) < 1e-9


def test_residual_into_d():
    alg = full_algebra(2)
    assert subspace_distance(residual_into_d(alg.unit()), alg.traceless()) < 1e-12
    assert residual_into_d(alg.zero()).dim == 4
    rng = np.random.default_rng(3)
    for _ in range(10):
        a = alg.random_subspace(rng, 2)
        r = residual_into_d(a)
        assert subspace_distance(r, trace_perp(a)) < 1e-9
        for C in r.matrices():
            for A in a.matrices():
                assert abs(np.trace(C @ A)) < 1e-9


def test_left_ideal_in_m3():
    alg = full_algebra(3)
    a = alg.span([M @ E(3, 0, 0) for M in np.eye(9).reshape(9, 3, 3)])  # M_3 E_11
    assert a.dim == 3
    assert subspace_distance(subspace_product(alg.full(), a), a) < 1e-12
    assert subspace_distance(alg.left_ideal(np.eye(3)[:, :1]), a) < 1e-12


def test_diagonal_pair():
    alg = MatrixAlgebra.block_diagonal([1, 1])
    assert alg.dim == 2
    d = alg.traceless()
    assert d.dim == 1
    (M,) = d.matrices()
    assert abs(M[0, 0] + M[1, 1]) < 1e-12 and abs(M[0, 1]) < 1e-15


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sampled_girard(n):
    rep = check_girard_sampled(n, 40, seed=11)
    assert rep.passed, {k: v for k, v in rep.results.items() if not v["passed"]}
    assert rep.max_error < 1e-9


def test_one_by_one_is_two_chain():
    alg = full_algebra(1)
    assert alg.traceless().dim == 0
    assert trace_perp(alg.zero()).dim == 1


def test_bounds():
    with pytest.raises(ValueError):
        check_girard_sampled(5, 1, seed=0)
    with pytest.raises(ValueError):
        product_algebra_spectrum([4, 4, 1], 1, seed=0)


@pytest.mark.parametrize("dims", [[2], [1, 1], [2, 1], [1, 1, 1]])
def test_block_algebras(dims):
    rep = product_algebra_spectrum(dims, 30, seed=5)
    assert rep.passed and rep.max_error < 1e-9


def test_seed_reproducible():
    a = check_girard_sampled(2, 10, seed=42)
    b = check_girard_sampled(2, 10, seed=42)
    assert a.results == b.results
