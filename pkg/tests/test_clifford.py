"""Gamma-matrix algebra: anticommutators, basis duality, decomposition."""

import numpy as np
import pytest

from spinorlab.clifford import (
    LABELS,
    anticommutator_error,
    decompose,
    gamma_basis,
    outer_product_expansion,
    reconstruct,
)
from spinorlab.conventions import (
    EPS_LOWER,
    EPS_UPPER,
    METRIC,
    SIM_DIRAC_FROM_WEYL,
    charge_conjugation_matrix,
    gamma5_of,
    gammas,
    sigma_munu,
)

REPS = ("dirac", "weyl")


@pytest.mark.parametrize("rep", REPS)
def test_anticommutators_exact(rep):
    # entries are 0/1/i exactly, so no rounding at all is tolerated
    assert anticommutator_error(rep) == 0.0


@pytest.mark.parametrize("rep", REPS)
def test_gamma5_squares_to_identity_and_anticommutes(rep):
    g5 = gamma5_of(rep)
    assert np.array_equal(g5 @ g5, np.eye(4))
    for mu in range(4):
        anti = g5 @ gammas(rep)[mu] + gammas(rep)[mu] @ g5
        assert np.max(np.abs(anti)) == 0.0


def test_gamma5_block_forms():
    d = gamma5_of("dirac")
    w = gamma5_of("weyl")
    assert np.allclose(d, np.block([[np.zeros((2, 2)), np.eye(2)], [np.eye(2), np.zeros((2, 2))]]))
    assert np.allclose(w, np.diag([1.0, 1.0, -1.0, -1.0]))


def test_representations_related_by_similarity():
    s = SIM_DIRAC_FROM_WEYL
    assert np.allclose(s @ s, np.eye(4), atol=1e-15)
    for mu in range(4):
        assert np.allclose(s @ gammas("weyl")[mu] @ s, gammas("dirac")[mu], atol=1e-15)
    assert np.allclose(s @ gamma5_of("weyl") @ s, gamma5_of("dirac"), atol=1e-15)


@pytest.mark.parametrize("rep", REPS)
def test_hermiticity_pattern(rep):
    # g0 hermitian, spatial gammas antihermitian, g0 X^dag g0 = X for all
    g = gammas(rep)
    assert np.allclose(g[0].conj().T, g[0])
    for k in (1, 2, 3):
        assert np.allclose(g[k].conj().T, -g[k])
        assert np.allclose(g[0] @ g[k].conj().T @ g[0], g[k])


def test_levi_civita_normalization():
    assert EPS_LOWER[0, 1, 2, 3] == 1.0
    assert EPS_UPPER[0, 1, 2, 3] == -1.0
    # eps^{abcs} eps_{abcr} = -6 delta^s_r
    contr = np.einsum("abcs,abcr->sr", EPS_UPPER, EPS_LOWER)
    assert np.allclose(contr, -6.0 * np.eye(4))


@pytest.mark.parametrize("rep", REPS)
def test_duality_is_exact_kronecker(rep):
    basis = gamma_basis(rep)
    gram = np.einsum("aij,bji->ab", basis.duals, basis.matrices)
    assert np.max(np.abs(gram - np.eye(16))) < 1e-14, (
        f"duality failed for {rep}: max err {np.max(np.abs(gram - np.eye(16))):.2e}"
    )


@pytest.mark.parametrize("rep", REPS)
def test_identity_decomposes_to_scalar_slot(rep):
    basis = gamma_basis(rep)
    c = decompose(np.eye(4), basis)
    expected = np.zeros(16, dtype=complex)
    expected[0] = 1.0
    assert np.allclose(c, expected, atol=1e-15)
    assert LABELS[0] == "S"


def test_decompose_reconstruct_roundtrip_batch():
    rng = np.random.default_rng(7)
    basis = gamma_basis("dirac")
    mats = rng.normal(size=(1000, 4, 4)) + 1j * rng.normal(size=(1000, 4, 4))
    coeffs = decompose(mats, basis)
    back = reconstruct(coeffs, basis)
    err = np.max(np.abs(back - mats))
    assert err < 1e-12, f"round-trip error {err:.2e}"


def test_lowered_sigma_duals_match_definition():
    # dual of the (0,1) tensor slot is sigma_{01}/4 = -sigma^{01}/4
    basis = gamma_basis("dirac")
    assert np.allclose(basis.duals[5], -sigma_munu("dirac", 0, 1) / 4.0)
    assert np.allclose(basis.duals[8], sigma_munu("dirac", 1, 2) / 4.0)


def test_outer_product_expansion_matches_decompose():
    rng = np.random.default_rng(11)
    for rep in REPS:
        u = rng.normal(size=4) + 1j * rng.normal(size=4)
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        vbar = v.conj() @ gammas(rep)[0]
        c_direct = outer_product_expansion(u, v, rep=rep)
        c_ref = decompose(np.outer(u, vbar), gamma_basis(rep))
        assert np.allclose(c_direct, c_ref, atol=1e-13)


def test_metric_signature():
    assert np.array_equal(METRIC, np.diag([1.0, -1.0, -1.0, -1.0]))


@pytest.mark.parametrize("rep", REPS)
def test_charge_conjugation_is_involutive(rep):
    # C(C(psi)) = psi, i.e. M conj(M) = I
    m = charge_conjugation_matrix(rep)
    assert np.allclose(m @ m.conj(), np.eye(4), atol=1e-15)
