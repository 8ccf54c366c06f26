"""Exact computations for fermionic group actions on pointed spin-modular categories
and the counting of minimal modular extensions of super-Tannakian categories."""
from .actions import (
    ActionData,
    enumerate_liftings,
    o3_bosonic,
    o3_fermionic,
    rank4_rhos,
    theta_class,
    verify_action,
    verify_braided,
)
from .braided import (
    AbelianThreeCocycle,
    MextElement,
    PointedSpinCategory,
    build_rank4,
    catalog_category,
    classify_h3ab,
    mext_catalog,
    quadratic_form,
    verify_abelian_cocycle,
)
from .cohomology import Cochain, CohomologyGroup, cohomology, qz_cohomology, solve_coboundary
from .errors import BudgetExceeded, FermextError, InvalidInput, NotACocycle
from .groups import FinAbGroup, FiniteGroup, GModule, SuperGroup, enumerate_homs
from .mext import count_mext, count_preimage
from .obstruction import O4Input, o4, o4_vanishes
from .qz import QZ

__version__ = "0.1.0"
