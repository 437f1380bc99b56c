"""Elko spinors: dual-helicity eigenspinors of charge conjugation.

Built in the chiral (weyl) representation.  The rest-frame 2-spinors are
helicity eigenstates along (theta, phi); the 4-spinors pair a 2-spinor
with the Wigner-rotated conjugate of its partner, which makes them
eigenvectors of the charge-conjugation operator with eigenvalue +1
("self" kind) or -1 ("anti" kind), and prevents them from solving the
Dirac equation directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bilinears import Spinor
from .conventions import PAULI, slash

SIGMA2 = PAULI[1]


@dataclass(frozen=True)
class MomentumParams:
    m: float
    p: np.ndarray  # spatial 3-momentum

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float).reshape(-1)
        if p.shape != (3,):
            raise ValueError(f"spatial momentum needs 3 components, got {p.shape}")
        if self.m <= 0:
            raise ValueError("massless momenta not supported; boost needs m > 0")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    @property
    def p_mag(self) -> float:
        return float(np.linalg.norm(self.p))

    @property
    def energy(self) -> float:
        return float(np.sqrt(self.m**2 + self.p_mag**2))

    def angles(self):
        """Polar and azimuthal angle of the momentum direction (z axis at rest)."""
        if self.p_mag == 0.0:
            return 0.0, 0.0
        theta = float(np.arccos(np.clip(self.p[2] / self.p_mag, -1.0, 1.0)))
        phi = float(np.arctan2(self.p[1], self.p[0]))
        return theta, phi

    def four_momentum(self) -> np.ndarray:
        return np.array([self.energy, *self.p])


@dataclass(frozen=True)
class ElkoSpinor:
    spinor: Spinor
    kind: str  # "self" (+1 under C) or "anti" (-1)
    helicity: int  # helicity label of the lower 2-spinor block at rest
    m: float = 1.0

    @property
    def components(self) -> np.ndarray:
        return self.spinor.components


def rest_helicity_spinor(sign: int, theta: float = 0.0, phi: float = 0.0, m: float = 1.0) -> np.ndarray:
    """2-spinor with sigma.phat eigenvalue `sign`, weighted by sqrt(m)."""
    half_t = 0.5 * theta
    if sign == +1:
        chi = np.array([np.cos(half_t) * np.exp(-0.5j * phi),
                        np.sin(half_t) * np.exp(0.5j * phi)])
    elif sign == -1:
        chi = np.array([-np.sin(half_t) * np.exp(-0.5j * phi),
                        np.cos(half_t) * np.exp(0.5j * phi)])
    else:
        raise ValueError("sign must be +1 or -1")
    return np.sqrt(m) * chi


def wigner_theta() -> np.ndarray:
    """Spin-1/2 Wigner time-reversal matrix; Theta sigma Theta^{-1} = -conj(sigma)."""
    return np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)


def elko_rest(kind: str, helicity: int, theta: float = 0.0, phi: float = 0.0,
              m: float = 1.0) -> ElkoSpinor:
    """Rest-frame Elko along (theta, phi).

    self kind:  lambda_h = (sigma2 conj(phi_h), phi_h)
    anti kind:  lambda_h = h * (-sigma2 conj(phi_{-h}), phi_{-h})

    so the upper and lower blocks always carry opposite helicity.
    """
    if helicity not in (+1, -1):
        raise ValueError("helicity must be +1 or -1")
    if kind == "self":
        lower = rest_helicity_spinor(helicity, theta, phi, m)
        upper = SIGMA2 @ np.conj(lower)
    elif kind == "anti":
        lower = rest_helicity_spinor(-helicity, theta, phi, m)
        upper = -SIGMA2 @ np.conj(lower)
        lower = helicity * lower
        upper = helicity * upper
    else:
        raise ValueError("kind must be 'self' or 'anti'")
    return ElkoSpinor(Spinor([*upper, *lower], "weyl"), kind, helicity, m)


def boost_operator(mp: MomentumParams) -> np.ndarray:
    """Pure boost from rest to momentum mp, chiral representation.

    Block-diagonal: the g5 = +1 block gets I + sigma.p/(E+m), the g5 = -1
    block I - sigma.p/(E+m), with overall sqrt((E+m)/2m); det = 1 and the
    p -> 0 limit is the identity.
    """
    e, m = mp.energy, mp.m
    sp = np.einsum("k,kij->ij", mp.p, PAULI) / (e + m)
    out = np.zeros((4, 4), dtype=complex)
    out[:2, :2] = np.eye(2) + sp
    out[2:, 2:] = np.eye(2) - sp
    return np.sqrt((e + m) / (2.0 * m)) * out


def elko_boosted(kind: str, helicity: int, mp: MomentumParams) -> ElkoSpinor:
    """Boost the rest-frame Elko aligned with mp's direction to momentum mp."""
    theta, phi = mp.angles()
    rest = elko_rest(kind, helicity, theta, phi, mp.m)
    return ElkoSpinor(Spinor(boost_operator(mp) @ rest.components, "weyl"),
                      kind, helicity, mp.m)


def boosted_closed_form(kind: str, helicity: int, mp: MomentumParams) -> ElkoSpinor:
    """Same spinor via the scalar boost factors.

    Dual helicity makes the boost act as a number: sqrt((E+m)/2m) times
    (1 -+ p/(E+m)) for the self kind and (1 +- p/(E+m)) for the anti kind,
    upper sign for helicity +1.
    """
    theta, phi = mp.angles()
    rest = elko_rest(kind, helicity, theta, phi, mp.m)
    e, m, pmag = mp.energy, mp.m, mp.p_mag
    s = -helicity if kind == "self" else helicity
    factor = np.sqrt((e + m) / (2.0 * m)) * (1.0 + s * pmag / (e + m))
    return ElkoSpinor(Spinor(factor * rest.components, "weyl"), kind, helicity, mp.m)


def dirac_action_relations(mp: MomentumParams) -> dict:
    """How pslash shuffles the four boosted Elkos among themselves.

    pslash lambda^self_+ = +i m lambda^self_-
    pslash lambda^self_- = -i m lambda^self_+
    pslash lambda^anti_+ = -i m lambda^anti_-
    pslash lambda^anti_- = +i m lambda^anti_+

    Residual norms of all four, plus the minimum of |(pslash - m) lambda|
    over the quartet, which stays >= m |lambda| because no Elko solves the
    Dirac equation.
    """
    ps = slash(mp.four_momentum(), "weyl")
    lam = {(k, h): elko_boosted(k, h, mp).components
           for k in ("self", "anti") for h in (+1, -1)}
    m = mp.m
    res = {
        "self_plus": np.linalg.norm(ps @ lam["self", +1] - 1j * m * lam["self", -1]),
        "self_minus": np.linalg.norm(ps @ lam["self", -1] + 1j * m * lam["self", +1]),
        "anti_plus": np.linalg.norm(ps @ lam["anti", +1] + 1j * m * lam["anti", -1]),
        "anti_minus": np.linalg.norm(ps @ lam["anti", -1] - 1j * m * lam["anti", +1]),
    }
    res["min_dirac_defect"] = min(
        float(np.linalg.norm((ps - m * np.eye(4)) @ v) / np.linalg.norm(v))
        for v in lam.values()
    )
    return res
