"""Lounesto classification by which bilinear covariants vanish.

Classes 1-3 are regular ((sigma, omega) != (0, 0)); classes 4-6 are singular
(sigma = omega = 0) and are separated by the zero patterns of the axial
vector k and the tensor s.  A vanishing current j places the input outside
the six-class scheme and is reported as such, never silently as class 6.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .bilinears import BilinearSet, Spinor, bilinears


class LounestoClass(IntEnum):
    REGULAR_BOTH = 1  # sigma != 0, omega != 0
    REGULAR_SCALAR = 2  # sigma != 0, omega = 0
    REGULAR_PSEUDO = 3  # sigma = 0, omega != 0
    FLAG_DIPOLE = 4  # singular, s != 0, k != 0
    FLAGPOLE = 5  # singular, k = 0, s != 0
    DIPOLE = 6  # singular, s = 0, k != 0


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-9

    def is_zero(self, value: float, scale: float) -> bool:
        return abs(value) < self.abs_tol + self.rel_tol * scale


@dataclass(frozen=True)
class OutsideClassification:
    reason: str


def classify(b: BilinearSet, tol: Tolerance = Tolerance()):
    """Map a bilinear set to its Lounesto class.

    Returns a LounestoClass, or OutsideClassification when the current
    vanishes (or every covariant does) and the six-class scheme does not
    apply.
    """
    scale = b.scale()
    if scale == 0.0 or all(
        tol.is_zero(v, scale)
        for v in (b.sigma, b.omega, np.max(np.abs(b.j)), np.max(np.abs(b.k)), np.max(np.abs(b.s)))
    ):
        return OutsideClassification("all bilinear covariants vanish")

    j_zero = tol.is_zero(float(np.max(np.abs(b.j))), scale)
    if j_zero:
        return OutsideClassification("current vanishes; not a Lounesto spinor field")

    sigma_zero = tol.is_zero(b.sigma, scale)
    omega_zero = tol.is_zero(b.omega, scale)
    if not sigma_zero and not omega_zero:
        return LounestoClass.REGULAR_BOTH
    if not sigma_zero:
        return LounestoClass.REGULAR_SCALAR
    if not omega_zero:
        return LounestoClass.REGULAR_PSEUDO

    k_zero = tol.is_zero(float(np.max(np.abs(b.k))), scale)
    s_zero = tol.is_zero(float(np.max(np.abs(b.s))), scale)
    if not k_zero and not s_zero:
        return LounestoClass.FLAG_DIPOLE
    if k_zero and not s_zero:
        return LounestoClass.FLAGPOLE
    if s_zero and not k_zero:
        return LounestoClass.DIPOLE
    # j != 0 with s = k = 0 cannot come from a spinor; refuse to guess
    return OutsideClassification("tensor and axial parts both vanish with j != 0")


def classify_spinor(psi: Spinor, tol: Tolerance = Tolerance()):
    return classify(bilinears(psi), tol)


def _reject_if(condition: bool, message: str):
    if condition:
        raise ValueError(message)


def canonical_type4(variant: int, params, tol: Tolerance = Tolerance()) -> Spinor:
    """Canonical flag-dipole (class 4) spinors, Weyl representation.

    The component layout is psi = (f, g, zeta, xi).  Variants:

    * 1: params (f, xi)       -> (f, 0, 0, xi), needs |f| != |xi|
    * 2: params (g, zeta)     -> (0, g, zeta, 0), needs |g| != |zeta|
    * 3: params (g, zeta, xi) -> (f, g, zeta, xi) with f = -g zeta conj(xi)/|zeta|^2,
         needs |g| != |zeta|

    Violating the stated inequality collapses the axial vector and degrades
    the result to class 5, so those inputs are rejected.
    """
    params = [complex(p) for p in params]
    if variant == 1:
        f, xi = params
        _reject_if(abs(f) < tol.abs_tol or abs(xi) < tol.abs_tol,
                   "variant 1 needs f != 0 and xi != 0 (else class 6)")
        _reject_if(tol.is_zero(abs(f) - abs(xi), abs(f) + abs(xi)),
                   "variant 1 needs |f| != |xi| (else class 5)")
        return Spinor([f, 0.0, 0.0, xi], "weyl")
    if variant == 2:
        g, zeta = params
        _reject_if(abs(g) < tol.abs_tol or abs(zeta) < tol.abs_tol,
                   "variant 2 needs g != 0 and zeta != 0 (else class 6)")
        _reject_if(tol.is_zero(abs(g) - abs(zeta), abs(g) + abs(zeta)),
                   "variant 2 needs |g| != |zeta| (else class 5)")
        return Spinor([0.0, g, zeta, 0.0], "weyl")
    if variant == 3:
        g, zeta, xi = params
        _reject_if(abs(zeta) < tol.abs_tol, "variant 3 needs zeta != 0")
        _reject_if(abs(g) < tol.abs_tol, "variant 3 needs g != 0 (else class 6)")
        _reject_if(tol.is_zero(abs(g) - abs(zeta), abs(g) + abs(zeta)),
                   "variant 3 needs |g| != |zeta| (else class 5)")
        f = -g * zeta * np.conj(xi) / abs(zeta) ** 2
        return Spinor([f, g, zeta, xi], "weyl")
    raise ValueError(f"variant must be 1, 2 or 3, got {variant}")


def canonical_type5(chi1, phi: float) -> Spinor:
    """Canonical flagpole (class 5) spinor, Weyl representation.

    psi = (e^{i phi} i sigma_2 conj(chi1) * (-i), chi1) written out as
    (e^{i phi} sigma_2 conj(chi1), chi1); charge conjugation acts on it
    with eigenvalue e^{-i phi}, so phi = 0 is the self-conjugate
    (Majorana) point and phi = pi the anti-self-conjugate one.
    """
    chi1 = np.asarray(chi1, dtype=complex).reshape(-1)
    if chi1.shape != (2,) or not np.any(np.abs(chi1) > 0):
        raise ValueError("chi1 must be a nonzero 2-component spinor")
    sigma2 = np.array([[0.0, -1j], [1j, 0.0]])
    upper = np.exp(1j * phi) * (sigma2 @ np.conj(chi1))
    return Spinor([upper[0], upper[1], chi1[0], chi1[1]], "weyl")
