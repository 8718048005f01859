"""Cohomology of finite group actions and its classification applications.

Pointed-set H0/H1 of finite groups acting on finite groups, H2 for abelian
coefficients, twisted actions and principal homogeneous spaces, Shapiro
induction, Galois descent over finite field towers (invariant bases,
Hilbert-90 style scans, tensor forms), classification and realization of
semisimple commutative algebras, and unit-ideal cohomology of imaginary
quadratic rings. Everything is verified by exhaustive enumeration at desk
scale; `cocycle verify --suite all` runs the theorem suites.
"""

from .cohomology import (
    Cocycle,
    EquivariantHom,
    GammaGroup,
    H1Set,
    action_from_gen_images,
    coboundary_transform,
    cohomologous,
    conjugation_action,
    h0,
    h1,
    h1_trivial_action,
    induced_map,
    inversion_action,
    is_cocycle,
    kernel_of,
    make_cocycle,
    restrict_to_subgroup,
    trivial_action,
    trivial_cocycle,
)
from .errors import CocycleError, SizeLimit
from .etale import (
    EtaleAlgebra,
    EtaleClass,
    classify_etale,
    discriminant,
    factor_structure,
    fixing_kernel,
    is_cyclic_field,
    is_field,
    is_galois,
    realize_over_fq,
)
from .exactness import (
    AbelianPresentation,
    CosetSpace,
    H2Group,
    connecting_delta,
    coset_to_cocycle,
    fixed_cosets,
    h2_central,
    orbit_kernel_bijection,
    quotient_gamma_group,
    six_term_check,
    trivial_module,
)
from .fields import FqTower, make_tower
from .galois import (
    SemilinearAction,
    TensorOnV,
    automorphism_independence_check,
    classify_forms,
    hilbert90_verify,
    invariant_basis,
    sl_h1_verify,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    cyclic_group,
    dihedral_group,
    direct_product,
    enumerate_homs,
    homs_up_to_conjugacy,
    make_group,
    quaternion_group,
    quotient_group,
    symmetric_group,
    trivial_group,
)
from .quad import (
    QuadIdeal,
    QuadRing,
    invariant_principal_quotient,
    is_principal,
    make_ring,
    ramified_primes,
    unit_h1,
    verify_units_iso,
)
from .twisted import (
    GSpace,
    TwistedSemiaction,
    classify_phs,
    cocycle_twist_correspondence,
    is_twisted_action,
    shapiro_induce,
    shapiro_verify,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianPresentation",
    "Cocycle",
    "CocycleError",
    "CosetSpace",
    "EquivariantHom",
    "EtaleAlgebra",
    "EtaleClass",
    "FiniteGroup",
    "FqTower",
    "GSpace",
    "GammaGroup",
    "GroupHom",
    "H1Set",
    "H2Group",
    "QuadIdeal",
    "QuadRing",
    "SemilinearAction",
    "SizeLimit",
    "Subgroup",
    "TensorOnV",
    "TwistedSemiaction",
    "action_from_gen_images",
    "automorphism_independence_check",
    "classify_etale",
    "classify_forms",
    "classify_phs",
    "coboundary_transform",
    "cocycle_twist_correspondence",
    "cohomologous",
    "conjugation_action",
    "connecting_delta",
    "coset_to_cocycle",
    "cyclic_group",
    "dihedral_group",
    "direct_product",
    "discriminant",
    "enumerate_homs",
    "factor_structure",
    "fixed_cosets",
    "fixing_kernel",
    "h0",
    "h1",
    "h1_trivial_action",
    "h2_central",
    "hilbert90_verify",
    "homs_up_to_conjugacy",
    "induced_map",
    "invariant_basis",
    "invariant_principal_quotient",
    "inversion_action",
    "is_cocycle",
    "is_cyclic_field",
    "is_field",
    "is_galois",
    "is_principal",
    "is_twisted_action",
    "kernel_of",
    "make_cocycle",
    "make_group",
    "make_ring",
    "make_tower",
    "orbit_kernel_bijection",
    "quaternion_group",
    "quotient_gamma_group",
    "quotient_group",
    "ramified_primes",
    "realize_over_fq",
    "restrict_to_subgroup",
    "shapiro_induce",
    "shapiro_verify",
    "six_term_check",
    "sl_h1_verify",
    "symmetric_group",
    "trivial_action",
    "trivial_cocycle",
    "trivial_group",
    "trivial_module",
    "unit_h1",
    "verify_units_iso",
]
