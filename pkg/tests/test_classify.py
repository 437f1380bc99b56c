"""Lounesto class assignment for canonical and random spinors."""

import numpy as np
import pytest

from spinorlab.bilinears import Spinor, bilinears
from spinorlab.classify import (
    LounestoClass,
    OutsideClassification,
    Tolerance,
    canonical_type4,
    canonical_type5,
    classify,
    classify_spinor,
)
from spinorlab.conventions import charge_conjugate


def test_weyl_spinors_are_dipoles():
    # single-chirality states: tensor part vanishes, axial part survives
    for comps in ([1.0, 2.0j, 0, 0], [0, 0, 1.0, -0.5j]):
        assert classify_spinor(Spinor(comps, "weyl")) == LounestoClass.DIPOLE


def test_canonical_type5_is_flagpole():
    for phi in (0.0, np.pi, 0.7):
        psi = canonical_type5([1.0, 0.3 - 0.2j], phi)
        assert classify_spinor(psi) == LounestoClass.FLAGPOLE


def test_type5_charge_conjugation_eigenvalue():
    # C psi = e^{-i phi} psi; Majorana at phi = 0, anti-self-conjugate at pi
    for phi in (0.0, np.pi, 1.1):
        psi = canonical_type5([0.8, 0.1 + 0.4j], phi)
        got = charge_conjugate(psi.components, "weyl")
        assert np.allclose(got, np.exp(-1j * phi) * psi.components, atol=1e-14)


@pytest.mark.parametrize(
    "variant,params",
    [
        (1, (1.0, 2.0j)),
        (1, (0.3 - 0.1j, 1.5)),
        (2, (1.0, 2.0)),
        (2, (0.5j, 1.0 + 1.0j)),
        (3, (1.0, 2.0, 2.0j)),
        (3, (0.4j, 1.0 - 0.5j, 0.8)),
    ],
)
def test_canonical_type4_is_flag_dipole(variant, params):
    psi = canonical_type4(variant, params)
    assert classify_spinor(psi) == LounestoClass.FLAG_DIPOLE


def test_canonical_type4_rejects_degenerate_params():
    with pytest.raises(ValueError):
        canonical_type4(1, (1.0, 1.0j))  # |f| = |xi| kills the axial part
    with pytest.raises(ValueError):
        canonical_type4(2, (1.0, -1.0))
    with pytest.raises(ValueError):
        canonical_type4(3, (1.0, 1.0, 2.0j))  # |g| = |zeta|
    with pytest.raises(ValueError):
        canonical_type4(1, (0.0, 1.0))


def test_generic_random_spinors_are_regular():
    rng = np.random.default_rng(21)
    for _ in range(200):
        c = rng.normal(size=4) + 1j * rng.normal(size=4)
        cls = classify_spinor(Spinor(c, "dirac"))
        assert cls in (
            LounestoClass.REGULAR_BOTH,
            LounestoClass.REGULAR_SCALAR,
            LounestoClass.REGULAR_PSEUDO,
        ), f"random spinor got {cls}"


def test_class_decision_follows_sigma_omega_zeros():
    rng = np.random.default_rng(22)
    tol = Tolerance()
    for _ in range(200):
        c = rng.normal(size=4) + 1j * rng.normal(size=4)
        b = bilinears(Spinor(c, "dirac"))
        cls = classify(b, tol)
        scale = b.scale()
        s0 = tol.is_zero(b.sigma, scale)
        w0 = tol.is_zero(b.omega, scale)
        expected = {(False, False): 1, (False, True): 2, (True, False): 3}.get((s0, w0))
        if expected is not None:
            assert int(cls) == expected


def test_zero_spinor_is_outside():
    out = classify_spinor(Spinor([0, 0, 0, 0], "dirac"))
    assert isinstance(out, OutsideClassification)
    assert "vanish" in out.reason


def test_vanishing_current_is_outside_not_class6():
    b = bilinears(Spinor([1, 0, 0, 0], "dirac"))
    fake = type(b)(sigma=0.0, j=np.zeros(4), s=b.s, k=b.k, omega=0.0, rep="dirac")
    out = classify(fake)
    assert isinstance(out, OutsideClassification)
    assert "current" in out.reason


def test_tolerance_scales_with_magnitude():
    psi = canonical_type5([1e6, 2e6 - 1e6j], 0.3)
    assert classify_spinor(psi) == LounestoClass.FLAGPOLE
    psi_small = canonical_type5([1e-6, (2e-6 - 1e-6j)], 0.3)
    assert classify_spinor(psi_small) == LounestoClass.FLAGPOLE


def test_classification_speed_10k():
    import time

    rng = np.random.default_rng(23)
    comps = rng.normal(size=(10_000, 4)) + 1j * rng.normal(size=(10_000, 4))
    start = time.perf_counter()
    results = [classify_spinor(Spinor(c, "dirac")) for c in comps]
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"10k classifications took {elapsed:.2f}s"
    assert all(int(r) in (1, 2, 3) for r in results)
