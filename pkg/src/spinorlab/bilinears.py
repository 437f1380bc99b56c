"""Spinor container and the sixteen real bilinear covariants.

Vector-valued covariants (the current j, the axial k, the tensor s) are
stored with covariant (lower) indices; sigma and omega are scalars.  All
sixteen numbers are mathematically real and are certified real before the
imaginary part is discarded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .conventions import (
    METRIC,
    SIM_DIRAC_FROM_WEYL,
    check_rep,
    gamma5_of,
    gammas,
)

REALITY_TOL = 1e-12


@dataclass(frozen=True)
class Spinor:
    components: np.ndarray
    rep: str = "dirac"

    def __post_init__(self):
        comps = np.asarray(self.components, dtype=complex).reshape(-1)
        if comps.shape != (4,):
            raise ValueError(f"spinor needs 4 components, got {comps.shape}")
        comps.setflags(write=False)
        object.__setattr__(self, "components", comps)
        check_rep(self.rep)

    def to_rep(self, rep: str) -> "Spinor":
        check_rep(rep)
        if rep == self.rep:
            return self
        if rep == "dirac":  # self is weyl
            return Spinor(SIM_DIRAC_FROM_WEYL @ self.components, "dirac")
        return Spinor(SIM_DIRAC_FROM_WEYL @ self.components, "weyl")

    def norm(self) -> float:
        return float(np.linalg.norm(self.components))


def dirac_adjoint(psi: Spinor) -> np.ndarray:
    """Row covector conj(psi)^T g^0."""
    return np.conj(psi.components) @ gammas(psi.rep)[0]


def _certify_real(values: np.ndarray, what: str, scale: float) -> np.ndarray:
    # cancellation can leave O(eps * |psi|^2) in both parts, so the bound
    # must follow the spinor magnitude, not the (possibly tiny) value
    values = np.atleast_1d(values)
    worst = np.max(np.abs(values.imag)) - REALITY_TOL * (1.0 + scale)
    if worst > 0:
        raise FloatingPointError(f"{what} bilinear failed reality check by {worst:.3e}")
    return values.real


@dataclass(frozen=True)
class BilinearSet:
    sigma: float
    j: np.ndarray  # covariant current, shape (4,)
    s: np.ndarray  # covariant antisymmetric tensor, shape (4, 4)
    k: np.ndarray  # covariant axial vector, shape (4,)
    omega: float
    rep: str = "dirac"

    def scale(self) -> float:
        return max(
            abs(self.sigma),
            abs(self.omega),
            float(np.max(np.abs(self.j))),
            float(np.max(np.abs(self.k))),
            float(np.max(np.abs(self.s))),
        )

    def j_squared(self) -> float:
        return float(self.j @ METRIC @ self.j)

    def k_squared(self) -> float:
        return float(self.k @ METRIC @ self.k)

    def jk_dot(self) -> float:
        return float(self.j @ METRIC @ self.k)

    def as_dict(self) -> dict:
        return {
            "sigma": self.sigma,
            "j": self.j.tolist(),
            "s": self.s.tolist(),
            "k": self.k.tolist(),
            "omega": self.omega,
            "rep": self.rep,
        }


def bilinears(psi: Spinor) -> BilinearSet:
    """All sixteen covariants of one spinor, in its own representation."""
    g = gammas(psi.rep)
    g5 = gamma5_of(psi.rep)
    psic = psi.components
    bar = np.conj(psic) @ g[0]
    scale = float(np.sum(np.abs(psic) ** 2))

    sigma = float(_certify_real(bar @ psic, "scalar", scale)[0])
    # psibar g5 psi is purely imaginary; omega is its imaginary part
    omega = float(_certify_real(1j * (bar @ g5 @ psic), "pseudoscalar", scale)[0] * -1.0)

    j_up = np.einsum("j,mjk,k->m", bar, g, psic)
    k_up = np.einsum("j,mjk,k->m", bar, np.einsum("ij,mjk->mik", g5, g), psic)
    j = METRIC @ _certify_real(j_up, "current", scale)
    k = METRIC @ _certify_real(k_up, "axial", scale)

    comm = np.einsum("mij,njk->mnik", g, g) - np.einsum("nij,mjk->mnik", g, g)
    s_up = np.einsum("j,mnjk,k->mn", bar, 0.5j * comm, psic)
    s = METRIC @ _certify_real(s_up, "tensor", scale) @ METRIC

    return BilinearSet(sigma=sigma, j=j, s=s, k=k, omega=omega, rep=psi.rep)
