"""Exact computations with mixed Hodge structures, mixed Hodge diagrams,
1-minimal models and Maurer–Cartan elements over Q(i)."""
from .errors import ConstructionError, HodgeMCError, InputError, InvariantViolation, PreconditionError
from .field import I, ONE, ZERO, QI, parse_scalar
from .linalg import DecreasingFiltration, IncreasingFiltration, Subspace
from .mhs import (Bigrading, MixedHodgeStructure, check_mhs, check_morphism, deligne_bigrading,
                  is_r_split, mhs_from_bigrading)
from .dga import (DgaMorphism, ExplicitDga, FreeDga, TdtElement, check_dga_morphism, check_homotopy,
                  cohomology, dec_shift, validate_dga)
from .mhd import MixedHodgeDiagram, check_mhd, induced_mhs_on_cohomology
from .minimal import (ComplementChoice, bigraded_minimal_model, build_I_and_H, canonical_1_minimal_model,
                      ddc_minimal_model, dual_lie_algebra)
from .mc import MaurerCartanElement, check_flat_morphism, check_mc, gauge, transport
from .vmhs import (HodgeRep, VmhsObject, build_context, check_hodge_rep, check_vmhs_morphism,
                   check_vmhs_object, descend, kappa, phi_C)

__version__ = "0.1.0"
