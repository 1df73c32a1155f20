"""Multi-racks and multi-quandles on finite carriers."""

from .constructions import (
    AutomorphismFamily,
    alexander_family,
    automorphism_multiquandle,
    conjugate_coset_isomorphism,
    conjugation_multirack,
    conjugation_power_multiquandle,
    coset_multiquandle,
    dihedral_quandle,
    trivial_quandle,
)
from .groups import (
    CosetSpace,
    FiniteGroup,
    Subgroup,
    center,
    conjugate_subgroup,
    exponent,
    group_from_cayley,
    left_cosets,
    power,
    standard_group,
    subgroup_generated,
)
from .knots import KnotDiagram, QuandlePresentation, count_colorings, invariant_profile, parse_pd, wirtinger_presentation
from .multirack import (
    MorphismWitness,
    MultiRack,
    VerificationReport,
    compose,
    is_morphism,
    multirack_from_tables,
    restrict_operations,
    verify,
)
from .search import count_homomorphisms, enumerate_multiquandles, find_isomorphism

__version__ = "0.1.0"
