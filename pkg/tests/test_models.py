import numpy as np
import pytest

from rescool.hamiltonian import save_matrix_file
from rescool.linalg import hermitian_eig
from rescool.models import (
    BadDimension,
    SizeCap,
    build_aklt,
    build_diagonal,
    from_registry,
    ground_truth,
    pair_swap,
    spin_operators,
)

GROUND_SLOT_PLUS = (3, 5, 10, 12)
GROUND_SLOT_MINUS = (6, 9)


def chain_ground_vector():
    v = np.zeros(16, dtype=complex)
    v[list(GROUND_SLOT_PLUS)] = 1.0 / np.sqrt(12.0)
    v[list(GROUND_SLOT_MINUS)] = -1.0 / np.sqrt(3.0)
    return v


def test_single_spin_commutators():
    ops = spin_operators()
    for a, b, c in ((ops.sx, ops.sy, ops.sz), (ops.sy, ops.sz, ops.sx), (ops.sz, ops.sx, ops.sy)):
        assert np.allclose(a @ b - b @ a, 1j * c, atol=1e-12)


def test_pair_operators_form_spin_one_on_triplets():
    ops = spin_operators()
    s_sq = ops.Sx @ ops.Sx + ops.Sy @ ops.Sy + ops.Sz @ ops.Sz
    triplet_up = np.array([1, 0, 0, 0], dtype=complex)
    triplet_zero = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
    singlet = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
    assert np.allclose(s_sq @ triplet_up, 2.0 * triplet_up, atol=1e-12)
    assert np.allclose(s_sq @ triplet_zero, 2.0 * triplet_zero, atol=1e-12)
    assert np.allclose(s_sq @ singlet, 0.0 * singlet, atol=1e-12)


def test_pair_z_projection_sign_convention():
    # |00> carries Sz = +1, |11> carries Sz = -1
    ops = spin_operators()
    up = np.array([1, 0, 0, 0], dtype=complex)
    down = np.array([0, 0, 0, 1], dtype=complex)
    zero = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
    assert np.allclose(ops.Sz @ up, up, atol=1e-12)
    assert np.allclose(ops.Sz @ down, -down, atol=1e-12)
    assert np.allclose(ops.Sz @ zero, 0.0 * zero, atol=1e-12)


def test_three_spin_chain_spectrum():
    model = build_aklt(1)
    assert model.n_qubits == 4
    assert model.label == "aklt1"
    es = hermitian_eig(model.h_s)
    levels, counts = np.unique(np.round(es.eigenvalues, 6), return_counts=True)
    assert np.allclose(levels, [0.0, 2.0 / 3.0, 4.0 / 3.0, 2.0], atol=1e-6)
    assert list(counts) == [1, 3, 7, 5]


def test_three_spin_chain_ground_vector():
    model = build_aklt(1)
    e1, chi1, gaps = ground_truth(model)
    assert abs(e1) < 1e-8
    assert chi1.ndim == 1
    target = chain_ground_vector()
    overlap = abs(target.conj() @ chi1) ** 2
    assert overlap == pytest.approx(1.0, abs=1e-8)
    assert gaps[0] == 0.0
    assert gaps[1] == pytest.approx(2.0 / 3.0, abs=1e-8)


def test_three_spin_chain_singlet_sector():
    # a singlet on the middle pair scores 4/3 regardless of the edge qubits
    model = build_aklt(1)
    singlet = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
    for a in range(2):
        for b in range(2):
            ea = np.zeros(2, dtype=complex)
            eb = np.zeros(2, dtype=complex)
            ea[a] = 1.0
            eb[b] = 1.0
            v = np.kron(np.kron(ea, singlet), eb)
            assert np.linalg.norm(model.h_s @ v - (4.0 / 3.0) * v) < 1e-10


def test_swap_inside_a_spin_one_site_is_a_symmetry():
    # the single bulk site of aklt1 lives on qubits 1-2; aklt2 adds one on 3-4
    swap = pair_swap(4, 1)
    model = build_aklt(1)
    assert np.linalg.norm(swap @ model.h_s - model.h_s @ swap) < 1e-10
    model2 = build_aklt(2)
    for first in (1, 3):
        swap2 = pair_swap(6, first)
        assert np.linalg.norm(swap2 @ model2.h_s - model2.h_s @ swap2) < 1e-10


def test_five_spin_chain_is_frustration_free():
    model = build_aklt(2)
    es = hermitian_eig(model.h_s)
    assert abs(es.eigenvalues[0]) < 1e-8
    assert np.all(es.eigenvalues > -1e-9)


def test_size_cap_blocks_oversized_chains():
    with pytest.raises(SizeCap):
        build_aklt(7)
    with pytest.raises(SizeCap):
        build_aklt(1, size_cap=8)


def test_build_diagonal_levels():
    model = build_diagonal([0.3, 2.0, 3.0, 5.0])
    assert model.n_qubits == 2
    assert np.allclose(model.h_s, np.diag([0.3, 2.0, 3.0, 5.0]))
    e1, chi1, gaps = ground_truth(model)
    assert e1 == pytest.approx(0.3, abs=1e-12)
    assert np.allclose(gaps, [0.0, 1.7, 2.7, 4.7], atol=1e-12)
    assert abs(chi1[0]) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("levels", [[], [1.0], [0.0, 1.0, 2.0], [0.0] * 5])
def test_build_diagonal_rejects_bad_lengths(levels):
    with pytest.raises(BadDimension):
        build_diagonal(levels)


def test_degenerate_ground_space_is_reported_as_a_basis():
    model = build_diagonal([0.0, 0.0, 1.0, 2.0])
    e1, chi1, gaps = ground_truth(model)
    assert e1 == 0.0
    assert chi1.ndim == 2
    assert chi1.shape == (4, 2)
    # orthonormal ground basis
    assert np.allclose(chi1.conj().T @ chi1, np.eye(2), atol=1e-12)


def test_ground_truth_against_characteristic_polynomial():
    # independent eigenvalue route: roots of det(H - x I)
    rng = np.random.default_rng(20240820)
    for _ in range(5):
        a = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
        h = (a + a.conj().T) / 2
        h /= np.linalg.norm(h)
        es = hermitian_eig(h)
        roots = np.sort(np.roots(np.poly(h)).real)
        assert np.max(np.abs(roots - es.eigenvalues)) < 1e-8


def test_registry_resolves_chain_names():
    model = from_registry("aklt1")
    assert model.label == "aklt1"
    assert model.dimension == 16


def test_registry_resolves_diagonal_names():
    model = from_registry("diag:0,2")
    assert np.allclose(model.h_s, np.diag([0.0, 2.0]))
    assert model.label == "diag:0,2"


def test_registry_loads_matrix_files(tmp_path):
    rng = np.random.default_rng(23)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = (a + a.conj().T) / 2
    path = tmp_path / "h.txt"
    save_matrix_file(str(path), h)
    model = from_registry(f"file:{path}")
    assert model.n_qubits == 2
    assert np.allclose(model.h_s, h, atol=1e-15)


def test_registry_rejects_non_power_of_two_files(tmp_path):
    path = tmp_path / "h3.txt"
    save_matrix_file(str(path), np.eye(3))
    with pytest.raises(BadDimension):
        from_registry(f"file:{path}")


@pytest.mark.parametrize("name", ["", "aklt", "akltx", "aklt0", "ising2", "diag:"])
def test_registry_rejects_unknown_names(name):
    with pytest.raises((ValueError, BadDimension)):
        from_registry(name)
