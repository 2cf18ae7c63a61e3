import numpy as np
import pytest
from numpy.testing import assert_allclose

from svdperturb.errors import NotHermitianError, ShapeError
from svdperturb.linalg import (
    NormKind,
    PairingNorm,
    as_matrix,
    complete_basis,
    eigh,
    frobenius,
    interlace_check,
    inv_sqrt_gram,
    multiset_close,
    pair_norm,
    singular_values,
    sqrt_gram,
    sv_ext,
    svd,
    ui_norm,
    unitarity_defect,
)
from svdperturb.oracle import complex_gaussian, random_unitary
from svdperturb.sylvester import jordan_wielandt


@pytest.mark.parametrize("shape", [(5, 3), (3, 5), (4, 4), (1, 3)])
def test_svd_reconstructs_and_matches_numpy(rng, shape):
    for _ in range(5):
        a = complex_gaussian(rng, *shape)
        u, spec, v = svd(a)
        k = min(shape)
        assert unitarity_defect(u) < 1e-12
        assert unitarity_defect(v) < 1e-12
        assert_allclose(u[:, :k] @ np.diag(spec.values) @ v[:, :k].conj().T, a, atol=1e-12)
        assert_allclose(spec.values, np.linalg.svd(a, compute_uv=False), atol=1e-12)
        assert np.all(np.diff(spec.values) <= 0)


@pytest.mark.parametrize("block", range(4))
def test_svd_on_many_seeded_shapes(block):
    rng = np.random.default_rng([block, 50])
    for _ in range(250):
        m, n = (int(k) for k in rng.integers(1, 51, size=2))
        a = complex_gaussian(rng, m, n)
        u, spec, v = svd(a)
        k = min(m, n)
        scale = np.linalg.norm(a)
        assert unitarity_defect(u) < 1e-10 * max(m, 1)
        assert unitarity_defect(v) < 1e-10 * max(n, 1)
        assert np.linalg.norm(u[:, :k] * spec.values @ v[:, :k].conj().T - a) <= 1e-12 * max(m, n) * scale
        assert_allclose(spec.values, np.linalg.svd(a, compute_uv=False), rtol=1e-10, atol=1e-12 * scale)


def test_svd_rank_deficient():
    a = np.zeros((4, 3))
    a[0, 0] = 2.0
    a[1, 1] = 1.0
    u, spec, v = svd(a)
    assert unitarity_defect(u) < 1e-12
    assert_allclose(spec.values, [2.0, 1.0, 0.0], atol=1e-15)
    assert spec.ext_zeros == 1
    assert_allclose(u[:, :3] @ np.diag(spec.values) @ v.conj().T, a, atol=1e-12)


def test_singular_values_of_diagonal():
    a = np.diag([1.0, 3.0, 2.0])
    assert_allclose(singular_values(a), [3.0, 2.0, 1.0])


def test_eigh_matches_numpy(rng):
    for n in (1, 2, 5):
        x = complex_gaussian(rng, n, n)
        h = x + x.conj().T
        q, lam = eigh(h)
        assert unitarity_defect(q) < 1e-12
        assert_allclose(h @ q, q * lam, atol=1e-11)
        assert_allclose(lam, np.sort(np.linalg.eigvalsh(h))[::-1], atol=1e-11)


def test_eigh_rejects_non_hermitian():
    with pytest.raises(NotHermitianError) as info:
        eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))
    assert info.value.details["entry"] in ([0, 1], [1, 0])


def test_as_matrix_rejects_bad_input():
    with pytest.raises(ShapeError):
        as_matrix(np.ones(3))
    with pytest.raises(ShapeError):
        as_matrix(np.zeros((0, 2)))
    with pytest.raises(ShapeError):
        as_matrix(np.array([[np.nan]]))


def test_ui_norms_of_diagonal():
    a = np.diag([3.0, 4.0])
    assert ui_norm(a, NormKind.SPECTRAL) == pytest.approx(4.0)
    assert ui_norm(a, NormKind.FROBENIUS) == pytest.approx(5.0)
    assert ui_norm(a, NormKind.NUCLEAR) == pytest.approx(7.0)
    assert frobenius(np.zeros((0, 3))) == 0.0


@pytest.mark.parametrize(
    "pn, expected",
    [
        (PairingNorm.block_diag(NormKind.SPECTRAL), 4.0),
        (PairingNorm.block_diag(NormKind.FROBENIUS), 5.0),
        (PairingNorm.block_diag(NormKind.NUCLEAR), 7.0),
        (PairingNorm.max_of(NormKind.SPECTRAL), 4.0),
        (PairingNorm.max_of(NormKind.FROBENIUS), 4.0),
        (PairingNorm.max_of(NormKind.NUCLEAR), 4.0),
    ],
)
def test_pair_norm(pn, expected):
    assert pair_norm(np.array([[3.0]]), np.array([[4.0]]), pn) == pytest.approx(expected)


def test_pair_norm_blockdiag_matches_assembled(rng):
    x = complex_gaussian(rng, 3, 2)
    y = complex_gaussian(rng, 2, 4)
    block = np.zeros((5, 6), dtype=np.complex128)
    block[:3, :2] = x
    block[3:, 2:] = y
    for kind in NormKind:
        assert pair_norm(x, y, PairingNorm.block_diag(kind)) == pytest.approx(ui_norm(block, kind), rel=1e-12)


def test_sv_ext_appends_shape_zeros():
    spec = sv_ext(np.array([[2.0], [0.0], [0.0]]))
    assert_allclose(spec.values, [2.0])
    assert spec.ext_zeros == 2
    assert_allclose(spec.extended(), [2.0, 0.0, 0.0])


def test_complete_basis(rng):
    q, _ = np.linalg.qr(complex_gaussian(rng, 5, 2))
    full = complete_basis(q, 5)
    assert unitarity_defect(full) < 1e-12
    assert_allclose(full[:, :2], q)


def test_gram_roots_are_inverse(rng):
    g = complex_gaussian(rng, 3, 2)
    assert_allclose(inv_sqrt_gram(g) @ sqrt_gram(g), np.eye(2), atol=1e-12)
    assert inv_sqrt_gram(np.zeros((3, 0))).shape == (0, 0)


def test_multiset_close():
    assert multiset_close([1.0, 2.0], [2.0, 1.0 + 1e-13], 1e-12)[0]
    assert not multiset_close([1.0, 2.0], [1.0], 1.0)[0]
    ok, dev = multiset_close([1.0, 2.0], [1.0, 2.5], 0.1)
    assert not ok
    assert dev == pytest.approx(0.5)


def test_interlacing_holds_for_random_matrices(rng):
    for shape, r in (((5, 4), 2), ((4, 6), 1), ((6, 6), 3)):
        assert interlace_check(complex_gaussian(rng, *shape), r).ok


def test_interlacing_rejects_bad_split():
    with pytest.raises(ShapeError):
        interlace_check(np.eye(3), 3)


def test_ui_norms_are_unitarily_invariant(rng):
    for _ in range(20):
        m, n = (int(k) for k in rng.integers(1, 7, size=2))
        a = complex_gaussian(rng, m, n)
        u = random_unitary(rng, m)
        v = random_unitary(rng, n)
        for kind in NormKind:
            assert ui_norm(u.conj().T @ a @ v, kind) == pytest.approx(ui_norm(a, kind), rel=1e-12)


def test_spectral_pairings_agree(rng):
    for _ in range(50):
        x = complex_gaussian(rng, *(int(k) for k in rng.integers(1, 6, size=2)))
        y = complex_gaussian(rng, *(int(k) for k in rng.integers(1, 6, size=2)))
        block = pair_norm(x, y, PairingNorm.block_diag(NormKind.SPECTRAL))
        assert abs(block - pair_norm(x, y, PairingNorm.max_of(NormKind.SPECTRAL))) <= 1e-14 * block


def test_inv_sqrt_gram_commutes_with_gram(rng):
    for _ in range(10):
        g = complex_gaussian(rng, int(rng.integers(1, 6)), 3)
        gram = np.eye(3) + g.conj().T @ g
        inv = inv_sqrt_gram(g)
        assert_allclose(inv @ gram, gram @ inv, atol=1e-12 * np.linalg.norm(gram))
        assert_allclose(inv @ gram @ inv, np.eye(3), atol=1e-12)
        assert_allclose(inv, inv.conj().T, atol=1e-14)


def test_eigh_of_jordan_wielandt_is_signed_extended_spectrum(rng):
    for _ in range(20):
        m, n = (int(k) for k in rng.integers(1, 7, size=2))
        a = complex_gaussian(rng, m, n)
        if rng.integers(2):
            # rank one, so sv_ext has interior zeros besides the shape ones
            a = np.outer(a[:, 0], a[0].conj())
        ext = sv_ext(a)
        signed = np.concatenate([ext.values, -ext.values, np.zeros(ext.ext_zeros)])
        _, lam = eigh(jordan_wielandt(a))
        assert lam.size == m + n
        assert_allclose(lam, np.sort(signed)[::-1], atol=1e-12 * max(np.linalg.norm(a), 1.0))
