"""Sixteen-element gamma-matrix basis with exact duals.

The basis slots are ordered scalar, vector, tensor, axial, pseudoscalar:

    [I, g^0..g^3, s^{01}, s^{02}, s^{03}, s^{12}, s^{13}, s^{23},
     g5 g^0..g5 g^3, g5]

Duals are normalized so that Tr(dual_i @ basis_j) = delta_ij, which makes
decomposition a plain trace contraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .conventions import METRIC, check_rep, gamma5_of, gammas, sigma_tensor

TENSOR_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

SLOT_SCALAR = 0
SLOT_VECTOR = slice(1, 5)
SLOT_TENSOR = slice(5, 11)
SLOT_AXIAL = slice(11, 15)
SLOT_PSEUDO = 15

LABELS = (
    "S",
    "V0", "V1", "V2", "V3",
    "T01", "T02", "T03", "T12", "T13", "T23",
    "A0", "A1", "A2", "A3",
    "P",
)


@dataclass(frozen=True)
class GammaBasis16:
    rep: str
    matrices: np.ndarray  # (16, 4, 4)
    duals: np.ndarray  # (16, 4, 4), Tr(duals[i] @ matrices[j]) = delta_ij
    labels: tuple = LABELS


@lru_cache(maxsize=None)
def gamma_basis(rep: str) -> GammaBasis16:
    rep = check_rep(rep)
    g = gammas(rep)
    g5 = gamma5_of(rep)
    sig = sigma_tensor(rep)
    g_low = np.einsum("mn,nij->mij", METRIC, g)
    sig_low = np.einsum("ma,nb,abij->mnij", METRIC, METRIC, sig)

    mats = np.empty((16, 4, 4), dtype=complex)
    duals = np.empty((16, 4, 4), dtype=complex)
    mats[0] = np.eye(4)
    duals[0] = np.eye(4) / 4.0
    for mu in range(4):
        mats[1 + mu] = g[mu]
        duals[1 + mu] = g_low[mu] / 4.0
        mats[11 + mu] = g5 @ g[mu]
        duals[11 + mu] = g_low[mu] @ g5 / 4.0
    for slot, (mu, nu) in enumerate(TENSOR_PAIRS):
        mats[5 + slot] = sig[mu, nu]
        duals[5 + slot] = sig_low[mu, nu] / 4.0
    mats[15] = g5
    duals[15] = g5 / 4.0

    mats.setflags(write=False)
    duals.setflags(write=False)
    return GammaBasis16(rep=rep, matrices=mats, duals=duals)


def decompose(m: np.ndarray, basis: GammaBasis16) -> np.ndarray:
    """Coefficients c with m = sum_k c[k] * basis.matrices[k].

    Accepts a single (4, 4) matrix or a batch (..., 4, 4).
    """
    m = np.asarray(m, dtype=complex)
    return np.einsum("kij,...ji->...k", basis.duals, m)


def reconstruct(coeffs: np.ndarray, basis: GammaBasis16) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=complex)
    return np.einsum("...k,kij->...ij", coeffs, basis.matrices)


def spinor_parts(u, rep: str | None = None):
    """Accept a Spinor-like object or a plain length-4 array."""
    comps = np.asarray(getattr(u, "components", u), dtype=complex)
    if comps.shape != (4,):
        raise ValueError(f"expected 4 components, got shape {comps.shape}")
    found = getattr(u, "rep", None)
    if rep is not None and found is not None and rep != found:
        raise ValueError(f"representation mismatch: {found!r} vs {rep!r}")
    return comps, check_rep(found or rep or "dirac")


def outer_product_expansion(u, v, rep: str | None = None) -> np.ndarray:
    """Coefficients of u vbar over the 16-element basis.

    c[k] = vbar @ duals[k] @ u, so that u vbar = sum_k c[k] basis[k].
    """
    uc, urep = spinor_parts(u, rep)
    vc, vrep = spinor_parts(v, rep or urep)
    if urep != vrep:
        raise ValueError(f"mixed representations {urep!r} and {vrep!r}")
    basis = gamma_basis(urep)
    vbar = np.conj(vc) @ gammas(urep)[0]
    return np.einsum("j,kji,i->k", vbar, basis.duals, uc)


def anticommutator_error(rep: str) -> float:
    """Max |{g^mu, g^nu} - 2 eta^{mu nu} I| over all index pairs."""
    g = gammas(rep)
    anti = np.einsum("mij,njk->mnik", g, g) + np.einsum("nij,mjk->mnik", g, g)
    target = 2.0 * METRIC[:, :, None, None] * np.eye(4)
    return float(np.max(np.abs(anti - target)))
