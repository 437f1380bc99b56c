"""Fierz identities, aggregate round trips, rearrangement and boomerangs."""

import numpy as np
import pytest

from spinorlab.bilinears import Spinor, bilinears, dirac_adjoint
from spinorlab.classify import canonical_type4, canonical_type5
from spinorlab.clifford import gamma_basis
from spinorlab.fierz import (
    AggregateConventionError,
    DegenerateProbeError,
    FierzAggregate,
    aggregate,
    aggregate_from_spinor,
    fierz_rearrange_check,
    fierz_residuals,
    is_boomerang,
    phase_align,
    takahashi_auto,
    takahashi_reconstruct,
)


def random_spinor(rng, rep="dirac"):
    return Spinor(rng.normal(size=4) + 1j * rng.normal(size=4), rep)


def test_aggregate_equals_four_psi_psibar():
    rng = np.random.default_rng(31)
    for rep in ("dirac", "weyl"):
        for _ in range(25):
            psi = random_spinor(rng, rep)
            z_slots = aggregate(bilinears(psi)).matrix
            z_outer = aggregate_from_spinor(psi).matrix
            scale = np.max(np.abs(z_outer))
            assert np.max(np.abs(z_slots - z_outer)) < 1e-12 * scale


def test_aggregate_is_self_adjoint_under_g0():
    rng = np.random.default_rng(32)
    from spinorlab.conventions import gammas

    for _ in range(10):
        psi = random_spinor(rng)
        z = aggregate(bilinears(psi)).matrix
        g0 = gammas("dirac")[0]
        assert np.allclose(z, g0 @ z.conj().T @ g0, atol=1e-12 * np.max(np.abs(z)))


def test_fierz_residuals_on_regular_spinors():
    rng = np.random.default_rng(33)
    for _ in range(200):
        b = bilinears(random_spinor(rng))
        r = fierz_residuals(b)
        bound = 1e-10 * max(r["scale"], 1.0)
        for key in ("j2_minus_sigma2_omega2", "j2_plus_k2", "j_dot_k", "wedge"):
            assert r[key] < bound, f"{key} = {r[key]:.2e} above {bound:.2e}"


def test_fierz_residuals_on_singular_spinors():
    for psi in (
        canonical_type5([1.0, 0.5 - 0.25j], 0.4),
        canonical_type4(2, (1.0, 2.0)),
        Spinor([1.0, -2.0j, 0, 0], "weyl"),
    ):
        r = fierz_residuals(bilinears(psi))
        bound = 1e-10 * max(r["scale"], 1.0)
        assert all(r[k] < bound for k in ("j2_minus_sigma2_omega2", "j2_plus_k2", "j_dot_k", "wedge"))


@pytest.mark.parametrize("rep", ["dirac", "weyl"])
def test_takahashi_round_trip(rep):
    rng = np.random.default_rng(34)
    for _ in range(50):
        psi = random_spinor(rng, rep)
        z = aggregate(bilinears(psi))
        rec, _probe = takahashi_auto(z)
        rec = phase_align(rec, psi)
        err = np.max(np.abs(rec.components - psi.components))
        assert err < 1e-10 * psi.norm(), f"round trip error {err:.2e}"


def test_takahashi_round_trip_singular():
    for psi in (
        canonical_type5([0.6, 0.2 + 0.7j], 1.3),
        canonical_type4(1, (1.0, 2.0j)),
        Spinor([0, 0, 3.0, 1.0j], "weyl"),
    ):
        rec, _ = takahashi_auto(aggregate(bilinears(psi)))
        rec = phase_align(rec, psi)
        assert np.max(np.abs(rec.components - psi.components)) < 1e-10 * psi.norm()


def test_takahashi_explicit_probe_and_degenerate_probe():
    psi = Spinor([1.0, 0.0, 0.0, 0.0], "dirac")
    z = aggregate(bilinears(psi))
    # e0 probe works
    rec = takahashi_reconstruct(z, Spinor([1, 0, 0, 0], "dirac"))
    rec = phase_align(rec, psi)
    assert np.allclose(rec.components, psi.components, atol=1e-12)
    # probe orthogonal to psibar fails loudly
    with pytest.raises(DegenerateProbeError):
        takahashi_reconstruct(z, Spinor([0, 1, 0, 0], "dirac"))


def test_takahashi_rejects_non_aggregate():
    rng = np.random.default_rng(35)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    with pytest.raises((AggregateConventionError, DegenerateProbeError)):
        for idx in range(4):
            eta = np.zeros(4)
            eta[idx] = 1.0
            takahashi_reconstruct(FierzAggregate(m, "dirac"), Spinor(eta, "dirac"))


def test_identity_matrix_is_not_boomerang():
    # self-adjoint, but rank 4: cannot be 4 psi psibar
    flag, diag = is_boomerang(np.eye(4), rep="dirac")
    assert not flag
    assert diag["self_adjoint_error"] < 1e-15
    assert "regenerate" in diag["reason"]


def test_zero_matrix_is_not_boomerang():
    flag, diag = is_boomerang(np.zeros((4, 4)), rep="dirac")
    assert not flag
    assert diag["reason"] == "zero matrix"


def test_true_aggregates_are_boomerangs():
    rng = np.random.default_rng(36)
    for rep in ("dirac", "weyl"):
        for _ in range(10):
            psi = random_spinor(rng, rep)
            flag, diag = is_boomerang(aggregate(bilinears(psi)))
            assert flag, f"true aggregate rejected: {diag}"


def test_non_self_adjoint_rejected():
    rng = np.random.default_rng(37)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    flag, diag = is_boomerang(m, rep="dirac")
    assert not flag and "self-adjoint" in diag["reason"]


def test_rearrangement_identity_all_basis_pairs():
    rng = np.random.default_rng(38)
    basis = gamma_basis("dirac")
    quad = [random_spinor(rng) for _ in range(4)]
    worst = 0.0
    for mi in range(16):
        for ni in range(16):
            lhs, rhs = fierz_rearrange_check(*quad, basis.matrices[mi], basis.matrices[ni])
            worst = max(worst, abs(lhs - rhs))
    assert worst < 1e-10, f"rearrangement violated by {worst:.2e}"


def test_rearrangement_random_matrices():
    rng = np.random.default_rng(39)
    for _ in range(10):
        quad = [random_spinor(rng) for _ in range(4)]
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        n = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        lhs, rhs = fierz_rearrange_check(*quad, m, n)
        assert abs(lhs - rhs) < 1e-10 * max(abs(lhs), 1.0)


def test_axial_recovery_identity():
    # kslash g5 psi = (sigma - i omega g5) psi closes the Fierz system
    from spinorlab.conventions import METRIC, gamma5_of, slash

    rng = np.random.default_rng(40)
    for rep in ("dirac", "weyl"):
        g5 = gamma5_of(rep)
        for _ in range(20):
            psi = random_spinor(rng, rep)
            b = bilinears(psi)
            lhs = slash(METRIC @ b.k, rep) @ g5 @ psi.components
            rhs = (b.sigma * np.eye(4) - 1j * b.omega * g5) @ psi.components
            assert np.max(np.abs(lhs - rhs)) < 1e-12 * psi.norm() ** 3
