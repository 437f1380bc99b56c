"""Fixed numerical conventions: metric, gamma matrices, charge conjugation.

Everything downstream assumes the conventions pinned here:

* metric signature (+, -, -, -),
* gamma5 = +i g0 g1 g2 g3 in both representations,
* sigma^{mu nu} = (i/2) [gamma^mu, gamma^nu],
* Levi-Civita eps_{0123} = +1 (so eps^{0123} = -1),
* charge conjugation C(psi) = M conj(psi) with C-eigenvalues +1 on
  self-conjugate Elko spinors.

User-facing 4-vectors are contravariant; coefficient tensors returned by
library code are covariant unless stated otherwise.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

CONVENTION_ID = "metric=+---;gamma5=+i*g0g1g2g3;sigma=(i/2)[gmu,gnu];eps_0123=+1"

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

I2 = np.eye(2, dtype=complex)
PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

_Z2 = np.zeros((2, 2), dtype=complex)


def _blocks(a, b, c, d) -> np.ndarray:
    return np.block([[a, b], [c, d]])


# Dirac (standard) representation: g0 diagonal.
GAMMA_DIRAC = np.array(
    [_blocks(I2, _Z2, _Z2, -I2)]
    + [_blocks(_Z2, PAULI[k], -PAULI[k], _Z2) for k in range(3)]
)

# Weyl (chiral) representation: g5 diagonal.
GAMMA_WEYL = np.array(
    [_blocks(_Z2, I2, I2, _Z2)]
    + [_blocks(_Z2, -PAULI[k], PAULI[k], _Z2) for k in range(3)]
)

_REP_GAMMAS = {"dirac": GAMMA_DIRAC, "weyl": GAMMA_WEYL}

REPS = ("dirac", "weyl")

# psi_dirac = SIM_DIRAC_FROM_WEYL @ psi_weyl; the matrix is its own inverse.
SIM_DIRAC_FROM_WEYL = _blocks(I2, I2, I2, -I2) / np.sqrt(2.0)


def check_rep(rep: str) -> str:
    if rep not in _REP_GAMMAS:
        raise ValueError(f"unknown representation tag {rep!r}; expected one of {REPS}")
    return rep


def gammas(rep: str) -> np.ndarray:
    """Contravariant gamma^mu, shape (4, 4, 4)."""
    return _REP_GAMMAS[check_rep(rep)]


def gamma(rep: str, mu: int) -> np.ndarray:
    if mu not in (0, 1, 2, 3):
        raise ValueError(f"index mu={mu} out of range 0..3")
    return gammas(rep)[mu]


def gamma5(rep: str) -> np.ndarray:
    g = gammas(rep)
    return 1j * g[0] @ g[1] @ g[2] @ g[3]


GAMMA5_DIRAC = gamma5("dirac")
GAMMA5_WEYL = gamma5("weyl")

_GAMMA5 = {"dirac": GAMMA5_DIRAC, "weyl": GAMMA5_WEYL}


def gamma5_of(rep: str) -> np.ndarray:
    return _GAMMA5[check_rep(rep)]


def sigma_munu(rep: str, mu: int, nu: int) -> np.ndarray:
    """sigma^{mu nu} = (i/2)[gamma^mu, gamma^nu], contravariant indices."""
    g = gammas(rep)
    return 0.5j * (g[mu] @ g[nu] - g[nu] @ g[mu])


def sigma_tensor(rep: str) -> np.ndarray:
    """All sigma^{mu nu}, shape (4, 4, 4, 4), antisymmetric in (mu, nu)."""
    g = gammas(rep)
    comm = np.einsum("mij,njk->mnik", g, g) - np.einsum("nij,mjk->mnik", g, g)
    return 0.5j * comm


def lower(v: np.ndarray) -> np.ndarray:
    """Lower one contravariant 4-vector index."""
    return METRIC @ np.asarray(v)


def raise_index(v: np.ndarray) -> np.ndarray:
    return METRIC @ np.asarray(v)


def minkowski_dot(u: np.ndarray, v: np.ndarray) -> complex:
    u = np.asarray(u)
    v = np.asarray(v)
    return u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3]


def slash(v: np.ndarray, rep: str = "dirac") -> np.ndarray:
    """gamma^mu v_mu for a contravariant input vector v."""
    return np.einsum("mij,m->ij", gammas(rep), lower(v))


def _levi_civita4() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in permutations(range(4)):
        sign = 1.0
        p = list(perm)
        for i in range(4):
            for j in range(i + 1, 4):
                if p[i] > p[j]:
                    sign = -sign
        eps[perm] = sign
    return eps


# eps_{0123} = +1 covariant; raising all four indices flips the sign.
EPS_LOWER = _levi_civita4()
EPS_UPPER = -EPS_LOWER

# Charge conjugation psi -> M conj(psi), written per representation so that
# C has eigenvalue +1 on self-conjugate Elko spinors.
CC_MATRIX_WEYL = _blocks(_Z2, PAULI[1], -PAULI[1], _Z2)
CC_MATRIX_DIRAC = SIM_DIRAC_FROM_WEYL @ CC_MATRIX_WEYL @ SIM_DIRAC_FROM_WEYL

_CC = {"dirac": CC_MATRIX_DIRAC, "weyl": CC_MATRIX_WEYL}


def charge_conjugation_matrix(rep: str) -> np.ndarray:
    return _CC[check_rep(rep)]


def charge_conjugate(components: np.ndarray, rep: str) -> np.ndarray:
    return charge_conjugation_matrix(rep) @ np.conj(np.asarray(components))
