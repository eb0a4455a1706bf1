"""Exact invariants of Bott towers: cohomology, K- and KO-theory, Steenrod
squares, and the stably complex structures coming from omniorientations."""

from .coeffs import F2, KOScalar, Laurent, RationalLaurent, ko_point_group
from .cohom import (
    GradedClass,
    QuotientAlgebra,
    chern_numbers,
    evaluate_fundamental,
    f2_algebra,
    h_algebra,
    total_chern,
)
from .ktheory import bundle_class, chern_character, conjugate, diff_element, k_algebra
from .kotheory import (
    KOClass,
    KOGenerator,
    UnsupportedFamilyError,
    ko_minus2_basis,
    te_relation,
    to_product,
)
from .steenrod import ConsistencyError, bb_profile, ko_groups_from_bb, sq2
from .structures import (
    EnumerationReport,
    UStructureRecord,
    enumerate_structures,
    szczarba_check,
    verify_paper,
)
from .towers import (
    BottList,
    HeightCapError,
    ListShapeError,
    Omniorientation,
    a_family,
    all_omniorientations,
    bounded_flag,
    cp1_power,
    family_list,
)

__version__ = "0.1.0"

__all__ = [
    "F2",
    "KOScalar",
    "Laurent",
    "RationalLaurent",
    "ko_point_group",
    "GradedClass",
    "QuotientAlgebra",
    "chern_numbers",
    "evaluate_fundamental",
    "f2_algebra",
    "h_algebra",
    "total_chern",
    "bundle_class",
    "chern_character",
    "conjugate",
    "diff_element",
    "k_algebra",
    "KOClass",
    "KOGenerator",
    "UnsupportedFamilyError",
    "ko_minus2_basis",
    "te_relation",
    "to_product",
    "ConsistencyError",
    "bb_profile",
    "ko_groups_from_bb",
    "sq2",
    "EnumerationReport",
    "UStructureRecord",
    "enumerate_structures",
    "szczarba_check",
    "verify_paper",
    "BottList",
    "HeightCapError",
    "ListShapeError",
    "Omniorientation",
    "a_family",
    "all_omniorientations",
    "bounded_flag",
    "cp1_power",
    "family_list",
]
