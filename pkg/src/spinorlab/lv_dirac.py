"""Dirac sector with constant Lorentz-violating background coefficients.

The general kinetic and mass operators carry the full coefficient set
(c, d, e, f, g) and (m, m5, a, b, H); dispersion, eigenspinors and the
propagator are worked out exactly for the axial-vector background b alone.
Conventions: coefficient tensors are stored with lower indices, momenta
and the background 4-vector b are given contravariant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bilinears import Spinor
from .conventions import METRIC, PAULI, gamma5_of, gammas, lower, minkowski_dot, slash


def _real_array(x, shape, name):
    arr = np.zeros(shape) if x is None else np.asarray(x, dtype=float)
    if arr.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
    return arr


@dataclass(frozen=True)
class LVCoefficients:
    """Constant background tensors of the extended Dirac operator.

    All entries are real; c, d are general rank-2, g is antisymmetric in
    its first index pair, H is antisymmetric.  Stored covariant.
    """

    m: float = 1.0
    m5: float = 0.0
    a: np.ndarray = None
    b: np.ndarray = None
    c: np.ndarray = None
    d: np.ndarray = None
    e: np.ndarray = None
    f: np.ndarray = None
    g: np.ndarray = None
    H: np.ndarray = None

    def __post_init__(self):
        object.__setattr__(self, "a", _real_array(self.a, (4,), "a"))
        object.__setattr__(self, "b", _real_array(self.b, (4,), "b"))
        object.__setattr__(self, "c", _real_array(self.c, (4, 4), "c"))
        object.__setattr__(self, "d", _real_array(self.d, (4, 4), "d"))
        object.__setattr__(self, "e", _real_array(self.e, (4,), "e"))
        object.__setattr__(self, "f", _real_array(self.f, (4,), "f"))
        object.__setattr__(self, "g", _real_array(self.g, (4, 4, 4), "g"))
        object.__setattr__(self, "H", _real_array(self.H, (4, 4), "H"))
        if np.max(np.abs(self.H + self.H.T)) > 1e-12:
            raise ValueError("H must be antisymmetric")
        if np.max(np.abs(self.g + np.swapaxes(self.g, 0, 1))) > 1e-12:
            raise ValueError("g must be antisymmetric in its first two indices")


def gamma_nu_lv(coeffs: LVCoefficients, nu: int, rep: str = "dirac") -> np.ndarray:
    """Modified kinetic matrix Gamma_nu (covariant index nu)."""
    g = gammas(rep)
    g5 = gamma5_of(rep)
    g_low = np.einsum("mn,nij->mij", METRIC, g)
    sig = 0.5j * (np.einsum("mij,njk->mnik", g, g) - np.einsum("nij,mjk->mnik", g, g))
    out = g_low[nu].astype(complex).copy()
    out += np.einsum("m,mij->ij", coeffs.c[:, nu], g)
    out += np.einsum("m,mij->ij", coeffs.d[:, nu], g5 @ g)
    out += coeffs.e[nu] * np.eye(4)
    out += 1j * coeffs.f[nu] * g5
    out += 0.5 * np.einsum("rm,rmij->ij", coeffs.g[:, :, nu], sig)
    return out


def mass_matrix_lv(coeffs: LVCoefficients, rep: str = "dirac") -> np.ndarray:
    """Modified mass matrix M = m + i m5 g5 + a_mu g^mu + b_mu g5 g^mu
    + (1/2) H_{mu nu} sigma^{mu nu}."""
    g = gammas(rep)
    g5 = gamma5_of(rep)
    sig = 0.5j * (np.einsum("mij,njk->mnik", g, g) - np.einsum("nij,mjk->mnik", g, g))
    out = coeffs.m * np.eye(4, dtype=complex)
    out += 1j * coeffs.m5 * g5
    out += np.einsum("m,mij->ij", coeffs.a, g)
    out += np.einsum("m,mij->ij", coeffs.b, np.einsum("ij,mjk->mik", g5, g))
    out += 0.5 * np.einsum("mn,mnij->ij", coeffs.H, sig)
    return out


@dataclass(frozen=True)
class DispersionBranches:
    coeffs: np.ndarray  # quartic in p0, highest power first
    roots: np.ndarray  # all four roots, real parts sorted descending
    particle: np.ndarray  # the two nonnegative branches, descending
    antiparticle: np.ndarray  # energies of the two negative branches (positive numbers)
    max_imag: float  # worst imaginary part among the roots
    degenerate: bool  # repeated roots within tolerance


def dispersion_quartic(b: np.ndarray, m: float, p_spatial: np.ndarray) -> DispersionBranches:
    """Quartic [p^2 - b^2 - m^2]^2 - 4 (b.p)^2 + 4 b^2 p^2 = 0 solved in p0.

    b is the contravariant background 4-vector; b^2 and b.p are Minkowski
    products, so for timelike b the four roots are the two exact particle
    energies and minus the two antiparticle energies.
    """
    b = np.asarray(b, dtype=float)
    p_spatial = np.asarray(p_spatial, dtype=float)
    p2 = float(p_spatial @ p_spatial)
    b0, bvec = b[0], b[1:]
    bsq = b0**2 - float(bvec @ bvec)
    bp = float(bvec @ p_spatial)
    big_a = p2 + bsq + m**2
    c4, c3 = 1.0, 0.0
    c2 = -2.0 * big_a - 4.0 * b0**2 + 4.0 * bsq
    c1 = 8.0 * b0 * bp
    c0 = big_a**2 - 4.0 * bp**2 - 4.0 * bsq * p2
    coeffs = np.array([c4, c3, c2, c1, c0])

    roots = np.roots(coeffs)
    poly = np.polynomial.Polynomial(coeffs[::-1])
    dpoly = poly.deriv()
    ddpoly = dpoly.deriv()
    for _ in range(2):  # Newton polish
        slope = dpoly(roots)
        safe = np.abs(slope) > 1e-30
        roots[safe] -= poly(roots[safe]) / slope[safe]

    scale = max(big_a, 1.0)
    # Double branches defeat plain Newton (the quartic only touches zero),
    # so collapse noise-split pairs onto the derivative's simple root; keep
    # the pair whenever the quartic there is above its own roundoff bound.
    roots = roots[np.argsort(roots.real)]
    eval_noise = 64.0 * np.finfo(float).eps
    for i in range(3):
        if abs(roots[i] - roots[i + 1]) >= 1e-6 * np.sqrt(scale):
            continue
        cand = 0.5 * float(roots[i].real + roots[i + 1].real)
        for _ in range(2):
            slope = float(ddpoly(cand))
            if abs(slope) < 1e-30:
                break
            cand -= float(dpoly(cand)) / slope
        bound = eval_noise * float(np.polyval(np.abs(coeffs), abs(cand)))
        if abs(poly(cand)) <= 4.0 * max(bound, 1e-300):
            roots[i] = roots[i + 1] = cand

    order = np.argsort(-roots.real)
    roots = roots[order]
    max_imag = float(np.max(np.abs(roots.imag)))
    real_roots = roots.real
    particle = real_roots[real_roots >= -1e-12 * scale]
    anti = -real_roots[real_roots < -1e-12 * scale]
    gaps = np.abs(np.diff(real_roots))
    degenerate = bool(np.any(gaps < 1e-9 * np.sqrt(scale)))
    return DispersionBranches(
        coeffs=coeffs,
        roots=roots,
        particle=np.sort(particle)[::-1],
        antiparticle=np.sort(anti),
        max_imag=max_imag,
        degenerate=degenerate,
    )


def timelike_branches(b0: float, m: float, p_mag: float):
    """Exact branch energies for purely timelike b = (b0, 0).

    E_u^(alpha) = sqrt((P + (-1)^alpha b0)^2 + m^2),
    E_v^(alpha) = sqrt((P - (-1)^alpha b0)^2 + m^2), alpha in {1, 2}.
    """
    e_u = np.array([np.sqrt((p_mag - b0) ** 2 + m**2), np.sqrt((p_mag + b0) ** 2 + m**2)])
    e_v = np.array([np.sqrt((p_mag + b0) ** 2 + m**2), np.sqrt((p_mag - b0) ** 2 + m**2)])
    return e_u, e_v


def spacelike_branches(b_vec: np.ndarray, m: float, p_spatial: np.ndarray):
    """Exact squared energies for purely spacelike b = (0, b_vec):

    p0^2 = P^2 + m^2 + |b|^2 +- 2 sqrt(|b|^2 m^2 + (b.p)^2).
    """
    b_vec = np.asarray(b_vec, dtype=float)
    p_spatial = np.asarray(p_spatial, dtype=float)
    p2 = float(p_spatial @ p_spatial)
    bb = float(b_vec @ b_vec)
    bp = float(b_vec @ p_spatial)
    rad = np.sqrt(bb * m**2 + bp**2)
    return np.array([p2 + m**2 + bb + 2.0 * rad, p2 + m**2 + bb - 2.0 * rad])


def hamiltonian_lv(b: np.ndarray, m: float, p_spatial: np.ndarray) -> np.ndarray:
    """H = alpha.p + m g0 + b^0 g5 - Sigma.bvec in the diagonal-g0
    representation; hermitian, eigenvalues are the dispersion roots."""
    b = np.asarray(b, dtype=float)
    p_spatial = np.asarray(p_spatial, dtype=float)
    g = gammas("dirac")
    g5 = gamma5_of("dirac")
    alpha = np.array([g[0] @ g[k] for k in (1, 2, 3)])
    sigma_big = np.array([a @ g5 for a in alpha])  # diag(sigma_k, sigma_k)
    h = np.einsum("k,kij->ij", p_spatial, alpha) + m * g[0]
    h += b[0] * g5 - np.einsum("k,kij->ij", b[1:], sigma_big)
    return h


def _helicity_2spinor(p_spatial: np.ndarray, h: int):
    """sigma.phat eigenvector; falls back to the z axis when p = 0."""
    p = np.asarray(p_spatial, dtype=float)
    pmag = float(np.linalg.norm(p))
    if pmag == 0.0:
        theta, phi = 0.0, 0.0
    else:
        theta = float(np.arccos(np.clip(p[2] / pmag, -1.0, 1.0)))
        phi = float(np.arctan2(p[1], p[0]))
    half = 0.5 * theta
    if h == +1:
        return np.array([np.cos(half), np.sin(half) * np.exp(1j * phi)])
    return np.array([-np.sin(half) * np.exp(-1j * phi), np.cos(half)])


def spinor_u(alpha: int, p_spatial, b0: float, m: float) -> Spinor:
    """Positive-energy eigenspinor of hamiltonian_lv for timelike b.

    The 2-spinor block has helicity (-1)^alpha and the lower block carries
    ((-1)^alpha P + b0)/(E + m); normalized to ubar u = 1.
    """
    if alpha not in (1, 2):
        raise ValueError("alpha must be 1 or 2")
    if m <= 0:
        raise ValueError("needs m > 0")
    p = np.asarray(p_spatial, dtype=float)
    pmag = float(np.linalg.norm(p))
    h = (-1) ** alpha
    energy = np.sqrt((pmag + h * b0) ** 2 + m**2)
    chi = _helicity_2spinor(p, h)
    ratio = (h * pmag + b0) / (energy + m)
    comps = np.concatenate([chi, ratio * chi]) * np.sqrt((energy + m) / (2.0 * m))
    return Spinor(comps, "dirac")


def spinor_v(alpha: int, p_spatial, b0: float, m: float) -> Spinor:
    """Negative-energy eigenspinor, H v = -E_v v; vbar v = -1.

    Obtained from the u construction by b0 -> -b0 with opposite helicity.
    """
    if alpha not in (1, 2):
        raise ValueError("alpha must be 1 or 2")
    if m <= 0:
        raise ValueError("needs m > 0")
    p = np.asarray(p_spatial, dtype=float)
    pmag = float(np.linalg.norm(p))
    h = (-1) ** alpha
    energy = np.sqrt((pmag - h * b0) ** 2 + m**2)
    eta = _helicity_2spinor(p, -h)
    ratio = (h * pmag - b0) / (energy + m)
    comps = np.concatenate([ratio * eta, eta]) * np.sqrt((energy + m) / (2.0 * m))
    return Spinor(comps, "dirac")


def branch_energy_u(alpha: int, p_mag: float, b0: float, m: float) -> float:
    return float(np.sqrt((p_mag + (-1) ** alpha * b0) ** 2 + m**2))


def branch_energy_v(alpha: int, p_mag: float, b0: float, m: float) -> float:
    return float(np.sqrt((p_mag - (-1) ** alpha * b0) ** 2 + m**2))


class NearPoleError(ZeroDivisionError):
    """Propagator evaluated too close to a dispersion root."""


def propagator_denominator(p: np.ndarray, b: np.ndarray, m: float) -> float:
    p = np.asarray(p, dtype=float)
    b = np.asarray(b, dtype=float)
    psq = minkowski_dot(p, p)
    bsq = minkowski_dot(b, b)
    pb = minkowski_dot(p, b)
    return float((psq - bsq - m**2) ** 2 - 4.0 * pb**2 + 4.0 * psq * bsq)


def propagator_lv(p: np.ndarray, b: np.ndarray, m: float, rep: str = "dirac",
                  rel_tol: float = 1e-10) -> np.ndarray:
    """Exact momentum-space propagator for the b-only operator.

    S(p) = i (pslash - bslash g5 + m)(p^2 - b^2 - m^2 + [pslash, bslash] g5) / D
    with D = (p^2 - b^2 - m^2)^2 - 4 (p.b)^2 + 4 p^2 b^2, which satisfies
    (pslash - bslash g5 - m) S = i exactly.  Raises NearPoleError when D
    is at tolerance-level distance from zero.
    """
    p = np.asarray(p, dtype=float)
    b = np.asarray(b, dtype=float)
    g5 = gamma5_of(rep)
    ps = slash(p, rep)
    bs = slash(b, rep)
    psq = minkowski_dot(p, p)
    bsq = minkowski_dot(b, b)
    denom = propagator_denominator(p, b, m)
    scale = (float(p @ p) + float(b @ b) + m**2) ** 2 + 1e-300
    if abs(denom) < rel_tol * scale:
        raise NearPoleError(
            f"denominator {denom:.3e} within {rel_tol:.1e} of a dispersion pole"
        )
    numerator = (ps - bs @ g5 + m * np.eye(4)) @ (
        (psq - bsq - m**2) * np.eye(4) + (ps @ bs - bs @ ps) @ g5
    )
    return 1j * numerator / denom


def lv_operator(p: np.ndarray, b: np.ndarray, m: float, rep: str = "dirac") -> np.ndarray:
    """pslash - bslash g5 - m, the wave operator the propagator inverts."""
    g5 = gamma5_of(rep)
    return slash(p, rep) - slash(b, rep) @ g5 - m * np.eye(4)
