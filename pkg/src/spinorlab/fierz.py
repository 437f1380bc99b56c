"""Fierz identities, the bilinear aggregate, and spinor reconstruction.

The aggregate Z packs all sixteen covariants of a spinor into one matrix,
Z = 4 psi psibar.  A self-adjoint matrix whose slot content really comes
from a spinor (a "boomerang") can be inverted back to that spinor, up to a
global phase, by probing it against a fixed reference spinor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bilinears import BilinearSet, Spinor, bilinears, dirac_adjoint
from .clifford import (
    SLOT_AXIAL,
    SLOT_PSEUDO,
    SLOT_SCALAR,
    SLOT_TENSOR,
    SLOT_VECTOR,
    TENSOR_PAIRS,
    gamma_basis,
    reconstruct,
    spinor_parts,
)
from .conventions import METRIC, check_rep, gamma5_of, gammas, slash


class DegenerateProbeError(ValueError):
    """The probe spinor is (numerically) annihilated by the aggregate."""


class AggregateConventionError(ValueError):
    """eta^dag g0 Z eta should be real nonnegative for a true aggregate."""


@dataclass(frozen=True)
class FierzAggregate:
    matrix: np.ndarray  # (4, 4) complex
    rep: str = "dirac"

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"aggregate must be 4x4, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        check_rep(self.rep)


def aggregate(b: BilinearSet) -> FierzAggregate:
    """Z = sigma I + j_mu g^mu + sum_{mu<nu} s_{mu nu} sigma^{mu nu}
    - k_mu g5 g^mu + i omega g5, equal to 4 psi psibar for the source spinor."""
    coeffs = np.zeros(16, dtype=complex)
    coeffs[SLOT_SCALAR] = b.sigma
    coeffs[SLOT_VECTOR] = b.j
    coeffs[SLOT_TENSOR] = [b.s[mu, nu] for mu, nu in TENSOR_PAIRS]
    coeffs[SLOT_AXIAL] = -b.k  # basis slot is g5 g^mu = -g^mu g5
    coeffs[SLOT_PSEUDO] = 1j * b.omega
    return FierzAggregate(reconstruct(coeffs, gamma_basis(b.rep)), b.rep)


def aggregate_from_spinor(psi: Spinor) -> FierzAggregate:
    return FierzAggregate(4.0 * np.outer(psi.components, dirac_adjoint(psi)), psi.rep)


def fierz_residuals(b: BilinearSet) -> dict:
    """Residuals of the quadratic interdependence of the covariants.

    For any single-spinor bilinear set: j^2 = sigma^2 + omega^2 = -k^2,
    j.k = 0, and (1/2)[jslash, kslash] = (omega + i sigma g5) S_gg with
    S_gg = sum_{mu<nu} s_{mu nu} g^mu g^nu.  All residuals are quadratic
    in the covariants; `scale` is the matching quadratic magnitude.
    """
    g = gammas(b.rep)
    g5 = gamma5_of(b.rep)
    j2, k2, jk = b.j_squared(), b.k_squared(), b.jk_dot()

    js = slash(METRIC @ b.j, b.rep)
    ks = slash(METRIC @ b.k, b.rep)
    s_gg = np.zeros((4, 4), dtype=complex)
    for mu, nu in TENSOR_PAIRS:
        s_gg += b.s[mu, nu] * g[mu] @ g[nu]
    wedge = 0.5 * (js @ ks - ks @ js) - (b.omega * np.eye(4) + 1j * b.sigma * g5) @ s_gg

    return {
        "j2_minus_sigma2_omega2": abs(j2 - b.sigma**2 - b.omega**2),
        "j2_plus_k2": abs(j2 + k2),
        "j_dot_k": abs(jk),
        "wedge": float(np.max(np.abs(wedge))),
        "scale": max(b.scale() ** 2, 0.0),
    }


def takahashi_reconstruct(z: FierzAggregate, eta: Spinor, rel_tol: float = 1e-12) -> Spinor:
    """Recover psi (up to a global phase) from Z = 4 psi psibar.

    With q = eta^dag g0 Z eta = 4 |psibar eta|^2 >= 0 the normalization is
    N = sqrt(q)/2 and psi = Z eta / (4 N), which lands on psi times a
    unit phase.  q must be real nonnegative for a faithful aggregate.
    """
    etac, rep = spinor_parts(eta)
    if rep != z.rep:
        raise ValueError(f"probe rep {rep!r} does not match aggregate rep {z.rep!r}")
    zeta = z.matrix @ etac
    q = complex(np.conj(etac) @ gammas(rep)[0] @ zeta)
    scale = float(np.max(np.abs(z.matrix))) * float(np.sum(np.abs(etac) ** 2)) + 1e-300
    if abs(q) < rel_tol * scale:
        raise DegenerateProbeError(
            f"probe annihilated by aggregate (|q|={abs(q):.3e}); try another probe"
        )
    if abs(q.imag) > rel_tol * scale or q.real < 0:
        raise AggregateConventionError(
            f"probe quadratic form q={q:.6e} is not real nonnegative; "
            "matrix is not an aggregate in this convention"
        )
    n = 0.5 * np.sqrt(q.real)
    return Spinor(zeta / (4.0 * n), rep)


def takahashi_auto(z: FierzAggregate, rel_tol: float = 1e-12):
    """Try the four canonical basis probes in order; return (psi, probe_index)."""
    last = None
    best = None
    for idx in range(4):
        etac = np.zeros(4, dtype=complex)
        etac[idx] = 1.0
        try:
            psi = takahashi_reconstruct(z, Spinor(etac, z.rep), rel_tol)
        except (DegenerateProbeError, AggregateConventionError) as err:
            last = err
            continue
        q = abs(complex(np.conj(etac) @ gammas(z.rep)[0] @ z.matrix @ etac))
        if best is None or q > best[2]:
            best = (psi, idx, q)
    if best is None:
        if isinstance(last, AggregateConventionError):
            raise last
        raise DegenerateProbeError(f"all canonical probes degenerate: {last}")
    return best[0], best[1]


def phase_align(psi: Spinor, ref: Spinor) -> Spinor:
    """Rotate psi by the global phase that best matches ref."""
    idx = int(np.argmax(np.abs(ref.components)))
    a, b = ref.components[idx], psi.components[idx]
    if abs(b) == 0.0:
        return psi
    phase = (a / abs(a)) / (b / abs(b)) if abs(a) > 0 else 1.0
    return Spinor(psi.components * phase, psi.rep)


def is_boomerang(z, tol: float = 1e-10, rep: str = "dirac"):
    """Decide whether a 4x4 matrix is the aggregate of an actual spinor.

    Checks (a) self-adjointness under Z -> g0 Z^dag g0 and (b) closure:
    reconstructing psi from Z and re-aggregating must give Z back.
    Returns (flag, diagnostics).
    """
    if isinstance(z, FierzAggregate):
        zm, rep = z.matrix, z.rep
    else:
        zm = np.asarray(z, dtype=complex)
    diag: dict = {"rep": rep}
    scale = float(np.max(np.abs(zm)))
    diag["scale"] = scale
    if scale == 0.0:
        diag["reason"] = "zero matrix"
        return False, diag

    g0 = gammas(rep)[0]
    sa_err = float(np.max(np.abs(zm - g0 @ zm.conj().T @ g0))) / scale
    diag["self_adjoint_error"] = sa_err
    if sa_err > tol:
        diag["reason"] = "not self-adjoint under g0 (.)^dag g0"
        return False, diag

    try:
        psi, probe = takahashi_auto(FierzAggregate(zm, rep))
    except (DegenerateProbeError, AggregateConventionError) as err:
        diag["reason"] = f"reconstruction failed: {err}"
        return False, diag
    diag["probe"] = probe
    closure = 4.0 * np.outer(psi.components, dirac_adjoint(psi))
    cl_err = float(np.max(np.abs(closure - zm))) / scale
    diag["closure_error"] = cl_err
    if cl_err > tol:
        diag["reason"] = "reconstructed spinor does not regenerate the matrix"
        return False, diag
    return True, diag


def fierz_rearrange_check(u1, u2, u3, u4, m: np.ndarray, n: np.ndarray, rep: str = "dirac"):
    """Both sides of the product rearrangement

    (u4bar M u2)(u3bar N u1) = sum_k (u4bar M B_k N u1)(u3bar D_k u2)

    with B_k the 16 basis elements and D_k their duals.  Returns (lhs, rhs).
    """
    basis = gamma_basis(rep)
    g0 = gammas(rep)[0]
    c1, c2, c3, c4 = (spinor_parts(u, rep)[0] for u in (u1, u2, u3, u4))
    bar3 = np.conj(c3) @ g0
    bar4 = np.conj(c4) @ g0
    lhs = (bar4 @ m @ c2) * (bar3 @ n @ c1)
    # completeness applied to the dyad u2 u3bar
    left = np.einsum("i,ij,kjl,lm,m->k", bar4, m, basis.matrices, n, c1)
    right = np.einsum("i,kij,j->k", bar3, basis.duals, c2)
    rhs = complex(left @ right)
    return complex(lhs), rhs
