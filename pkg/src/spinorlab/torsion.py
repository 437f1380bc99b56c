"""Torsion tensor decomposition and its couplings to spinor bilinears.

Covariant storage T_{lam mu nu}, antisymmetric in the last two indices.
The three irreducible parts are the trace vector V_nu = T^lam_{lam nu},
the axial vector A^mu = (1/6) eps^{alpha beta gamma mu} T_{alpha beta
gamma}, and the remainder M with vanishing trace and axial projections.

Couplings split into a Lorentz-invariant family (trace and axial vectors
against the current and axial-vector bilinears), a Lorentz-violating
family (constant k tensors against all five bilinear species), and a
dimension-4/5 family evaluated on plane waves, where the symmetrized
derivative collapses to momentum factors.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .bilinears import BilinearSet, bilinears
from .conventions import EPS_LOWER, EPS_UPPER, METRIC, lower, raise_index
from .field_redef import PlaneWaveState
from .lv_dirac import LVCoefficients


def _raise_all3(t_cov: np.ndarray) -> np.ndarray:
    return np.einsum("al,bm,cn,lmn->abc", METRIC, METRIC, METRIC, t_cov)


@dataclass(frozen=True)
class TorsionTensor:
    """Covariant components T_{lam mu nu}, antisymmetric in (mu, nu)."""

    components: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.components, dtype=float)
        if arr.shape != (4, 4, 4):
            raise ValueError("torsion components must have shape (4, 4, 4)")
        scale = np.max(np.abs(arr)) if arr.size else 0.0
        if np.max(np.abs(arr + arr.transpose(0, 2, 1))) > 1e-12 * (1.0 + scale):
            raise ValueError("torsion must be antisymmetric in its last two indices")
        object.__setattr__(self, "components", arr)

    def raised(self) -> np.ndarray:
        """Fully contravariant T^{lam mu nu}."""
        return _raise_all3(self.components)

    @classmethod
    def from_axial_vector(cls, w_upper) -> "TorsionTensor":
        """Totally antisymmetric torsion eps_{lam mu nu rho} w^rho."""
        w = np.asarray(w_upper, dtype=float)
        return cls(np.einsum("lmnr,r->lmn", EPS_LOWER, w))

    @classmethod
    def from_trace_vector(cls, v_cov) -> "TorsionTensor":
        """Pure-trace torsion (1/3)(eta_{lm} V_n - eta_{ln} V_m)."""
        v = np.asarray(v_cov, dtype=float)
        t = (np.einsum("lm,n->lmn", METRIC, v) - np.einsum("ln,m->lmn", METRIC, v)) / 3.0
        return cls(t)


@dataclass(frozen=True)
class TorsionParts:
    """Irreducible pieces: T = trace_part + axial_part + mixed_part."""

    trace_vector: np.ndarray  # V_nu, covariant
    axial_vector: np.ndarray  # A_mu, covariant
    trace_part: np.ndarray
    axial_part: np.ndarray
    mixed_part: np.ndarray

    def recompose(self) -> np.ndarray:
        return self.trace_part + self.axial_part + self.mixed_part


def derived_torsion_parts(torsion: TorsionTensor) -> TorsionParts:
    t = torsion.components
    v = np.einsum("la,aln->n", METRIC, t)
    a_up = np.einsum("abcm,abc->m", EPS_UPPER, t) / 6.0
    a_cov = lower(a_up)
    tr = (np.einsum("lm,n->lmn", METRIC, v) - np.einsum("ln,m->lmn", METRIC, v)) / 3.0
    ax = -np.einsum("lmnr,r->lmn", EPS_LOWER, a_up)
    mixed = t - tr - ax
    return TorsionParts(trace_vector=v, axial_vector=a_cov,
                        trace_part=tr, axial_part=ax, mixed_part=mixed)


@dataclass(frozen=True)
class WeakField:
    """Weak background fields feeding the effective coefficients.

    * h: symmetric metric perturbation h_{mu nu}.
    * chi: tensor background chi_{mu nu} shifting the c coefficients.
    * dchi: gradient d^nu chi^{rho sigma}, indexed [nu, rho, sigma],
      all indices contravariant as used in the axial shift.
    """

    h: np.ndarray = None
    chi: np.ndarray = None
    dchi: np.ndarray = None

    def __post_init__(self):
        h = np.zeros((4, 4)) if self.h is None else np.asarray(self.h, dtype=float)
        if h.shape != (4, 4) or np.max(np.abs(h - h.T)) > 1e-12 * (1.0 + np.max(np.abs(h))):
            raise ValueError("h must be a symmetric 4x4 tensor")
        chi = np.zeros((4, 4)) if self.chi is None else np.asarray(self.chi, dtype=float)
        if chi.shape != (4, 4):
            raise ValueError("chi must be a 4x4 tensor")
        dchi = np.zeros((4, 4, 4)) if self.dchi is None else np.asarray(self.dchi, dtype=float)
        if dchi.shape != (4, 4, 4):
            raise ValueError("dchi must have shape (4, 4, 4)")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "chi", chi)
        object.__setattr__(self, "dchi", dchi)


def effective_coeffs(lv: LVCoefficients, torsion: TorsionTensor,
                     weak: WeakField) -> LVCoefficients:
    """Absorb torsion and weak backgrounds into shifted flat-space
    coefficients: c picks up chi - h/2, b picks up the axial projection
    of torsion plus the dual chi gradient."""
    c_eff = lv.c + weak.chi - 0.5 * weak.h
    t_up = torsion.raised()
    b_shift_cov = (np.einsum("mnrs,nrs->m", EPS_LOWER, t_up) / 8.0
                   - np.einsum("nrs,mnrs->m", weak.dchi, EPS_LOWER) / 4.0)
    b_eff_up = lv.b + raise_index(b_shift_cov)
    return replace(lv, c=c_eff, b=b_eff_up)


def lagrangian_LI_terms(torsion: TorsionTensor, bil: BilinearSet,
                        a: float = 0.0, a5: float = 0.0,
                        b: float = 0.0, b5: float = 0.0) -> dict:
    """Rotation-invariant couplings of the torsion vectors to J and K."""
    parts = derived_torsion_parts(torsion)
    t_up = torsion.raised()
    j_up = raise_index(bil.j)
    k_up = raise_index(bil.k)
    dual = np.einsum("nrtm,nrt->m", EPS_LOWER, t_up)  # = 6 A_mu
    return {
        "trace_current": a * float(parts.trace_vector @ j_up),
        "axial_current": a5 * float(dual @ j_up),
        "trace_axialvector": b * float(parts.trace_vector @ k_up),
        "axial_axialvector": b5 * float(dual @ k_up),
    }


def lagrangian_LI(torsion: TorsionTensor, bil: BilinearSet, a: float = 0.0,
                  a5: float = 0.0, b: float = 0.0, b5: float = 0.0) -> float:
    return float(sum(lagrangian_LI_terms(torsion, bil, a, a5, b, b5).values()))


def riemann_symmetric_k(h: np.ndarray) -> np.ndarray:
    """Constant 4-index coupling built from a symmetric tensor with the
    algebraic symmetries of a curvature tensor:

    k_{m g a b} = (eta_{m a} h_{g b} - eta_{g a} h_{m b}
                   + eta_{g b} h_{m a} - eta_{m b} h_{g a}) / 2
    """
    h = np.asarray(h, dtype=float)
    k = (np.einsum("ma,gb->mgab", METRIC, h) - np.einsum("ga,mb->mgab", METRIC, h)
         + np.einsum("gb,ma->mgab", METRIC, h) - np.einsum("mb,ga->mgab", METRIC, h))
    return 0.5 * k


def lagrangian_LV_terms(torsion: TorsionTensor, bil: BilinearSet,
                        k_source: WeakField, k_scalar=None, k_tensor=None,
                        k_pseudo=None, k_vector=None, k_axial=None) -> dict:
    """Constant-tensor couplings of torsion to all five bilinear species.

    The 4-index tensors against J and K default to the curvature-symmetric
    combination built from k_source.h; the 3- and 5-index families default
    to zero and can be supplied explicitly (covariant components).
    """
    t_up = torsion.raised()
    k4 = riemann_symmetric_k(k_source.h)
    kv = k4 if k_vector is None else np.asarray(k_vector, dtype=float)
    ka = k4 if k_axial is None else np.asarray(k_axial, dtype=float)
    ks = np.zeros((4, 4, 4)) if k_scalar is None else np.asarray(k_scalar, dtype=float)
    kp = np.zeros((4, 4, 4)) if k_pseudo is None else np.asarray(k_pseudo, dtype=float)
    kt = np.zeros((4, 4, 4, 4, 4)) if k_tensor is None else np.asarray(k_tensor, dtype=float)
    j_up = raise_index(bil.j)
    k_up = raise_index(bil.k)
    s_up = METRIC @ bil.s @ METRIC
    return {
        "scalar": float(np.einsum("mnr,mnr->", ks, t_up)) * bil.sigma,
        "vector": float(np.einsum("mnrs,mnr,s->", kv, t_up, j_up)),
        "tensor": float(np.einsum("mnrst,mnr,st->", kt, t_up, s_up)),
        "axialvector": float(np.einsum("mnrs,mnr,s->", ka, t_up, k_up)),
        "pseudo": float(np.einsum("mnr,mnr->", kp, t_up)) * bil.omega,
    }


def lagrangian_LV(torsion: TorsionTensor, bil: BilinearSet, k_source: WeakField,
                  **kwargs) -> float:
    return float(sum(lagrangian_LV_terms(torsion, bil, k_source, **kwargs).values()))


DIM45_COUPLING_NAMES = ("a1", "a2", "a3", "a4", "a1hat", "a2hat", "a3hat",
                        "a4hat", "a5hat", "a6hat", "a7hat", "a8hat", "a9hat")


def minimal_couplings() -> dict:
    """Values induced by minimal spin-connection coupling: only the axial
    vector against the axial-vector bilinear survives, weight 3/4."""
    c = {name: 0.0 for name in DIM45_COUPLING_NAMES}
    c["a4"] = 0.75
    return c


def lagrangian_dim45_terms(torsion: TorsionTensor, state: PlaneWaveState,
                           couplings: dict) -> dict:
    """Dimension-4 and dimension-5 torsion couplings on a plane wave.

    The symmetrized derivative A dbar_mu B = A dB - (dA) B reduces on
    chi e^{-i p.x} to momentum factors: the scalar-channel derivative
    bilinear gives -2i p_mu sigma, the pseudoscalar channel +2 p_mu omega,
    and the tensor channel -2i p_nu s^{mu nu}, so every reduced term below
    carries net coefficient one.
    """
    unknown = set(couplings) - set(DIM45_COUPLING_NAMES)
    if unknown:
        raise ValueError(f"unknown couplings: {sorted(unknown)}")
    c = {name: float(couplings.get(name, 0.0)) for name in DIM45_COUPLING_NAMES}
    parts = derived_torsion_parts(torsion)
    v = parts.trace_vector  # covariant
    ax = parts.axial_vector  # covariant
    m_cov = parts.mixed_part
    bil = bilinears(state.spinor)
    j_up = raise_index(bil.j)
    k_up = raise_index(bil.k)
    s_cov = bil.s
    s_up = METRIC @ s_cov @ METRIC
    p_up = state.p
    p_cov = lower(p_up)
    return {
        "trace_current": c["a1"] * float(v @ j_up),
        "trace_axialvector": c["a2"] * float(v @ k_up),
        "axial_current": c["a3"] * float(ax @ j_up),
        "axial_axialvector": c["a4"] * float(ax @ k_up),
        "trace_scalar": c["a1hat"] * float(v @ p_up) * bil.sigma,
        "trace_pseudo": c["a2hat"] * float(v @ p_up) * bil.omega,
        "axial_scalar": c["a3hat"] * float(ax @ p_up) * bil.sigma,
        "axial_pseudo": c["a4hat"] * float(ax @ p_up) * bil.omega,
        "mixed_tensor": c["a5hat"] * float(np.einsum("lmn,l,mn->", m_cov, p_up, s_up)),
        "trace_tensor": c["a6hat"] * float(np.einsum("m,n,mn->", v, p_cov, s_up)),
        "axial_tensor": c["a7hat"] * float(np.einsum("m,n,mn->", ax, p_cov, s_up)),
        "trace_dual_tensor": c["a8hat"] * float(
            np.einsum("lkmn,l,k,mn->", EPS_UPPER, v, p_cov, s_cov)),
        "axial_dual_tensor": c["a9hat"] * float(
            np.einsum("lkmn,l,k,mn->", EPS_UPPER, ax, p_cov, s_cov)),
    }


def lagrangian_dim45(torsion: TorsionTensor, state: PlaneWaveState,
                     couplings: dict) -> float:
    return float(sum(lagrangian_dim45_terms(torsion, state, couplings).values()))


def flagpole_reduction(torsion: TorsionTensor, bil: BilinearSet,
                       couplings: dict) -> float:
    """Value the dimension-4 family collapses to on a flagpole spinor,
    where sigma, omega and K all vanish: (a1 V + a3 A) . J."""
    parts = derived_torsion_parts(torsion)
    j_up = raise_index(bil.j)
    a1 = float(couplings.get("a1", 0.0))
    a3 = float(couplings.get("a3", 0.0))
    return a1 * float(parts.trace_vector @ j_up) + a3 * float(parts.axial_vector @ j_up)
