"""Spinor-algebra laboratory.

Bilinear covariants and their Lounesto classification, the quadratic
interdependence and aggregate-reconstruction machinery, charge-conjugation
eigenspinors, a constant axial-background Dirac sector, spinor field
redefinitions, torsion couplings, and an anisotropic cosmology built on a
self-interacting fermion.
"""

from .bilinears import BilinearSet, Spinor, bilinears, dirac_adjoint
from .classify import (
    LounestoClass,
    OutsideClassification,
    Tolerance,
    canonical_type4,
    canonical_type5,
    classify,
    classify_spinor,
)
from .clifford import gamma_basis, decompose, reconstruct
from .conventions import (
    CONVENTION_ID,
    EPS_LOWER,
    EPS_UPPER,
    GAMMA_DIRAC,
    GAMMA_WEYL,
    METRIC,
    charge_conjugate,
    gamma5_of,
    gammas,
    minkowski_dot,
    sigma_munu,
    slash,
)
from .cosmology import (
    BianchiFactors,
    CosmologySolution,
    b_int_for,
    conservation_check,
    dirac_residual,
    einstein_residuals,
    family_spinor,
    solution_family_spinors,
    solution_perturbed,
    solution_unperturbed,
    volume_ode_residual,
)
from .elko import (
    ElkoSpinor,
    MomentumParams,
    boosted_closed_form,
    dirac_action_relations,
    elko_boosted,
    elko_rest,
)
from .field_redef import (
    ADMISSIBLE_SOURCES,
    PlaneWaveState,
    RedefinitionParams,
    class_map_experiment,
    map_dirac_to_majorana,
    map_regular_to_flagdipole,
    redefine,
    transformed_bilinears,
)
from .fierz import (
    FierzAggregate,
    aggregate,
    aggregate_from_spinor,
    fierz_rearrange_check,
    fierz_residuals,
    is_boomerang,
    takahashi_auto,
    takahashi_reconstruct,
)
from .lv_dirac import (
    LVCoefficients,
    NearPoleError,
    dispersion_quartic,
    hamiltonian_lv,
    propagator_lv,
    spinor_u,
    spinor_v,
    timelike_branches,
)
from .torsion import (
    TorsionTensor,
    WeakField,
    derived_torsion_parts,
    effective_coeffs,
    flagpole_reduction,
    lagrangian_dim45_terms,
    minimal_couplings,
)

__version__ = "0.1.0"
