"""Exact computations with split metabelian groups ``M x| Z`` viewed as
modules over the Laurent ring ``Z[t, t^-1]``."""
from .errors import (
    IllDefinedMapError,
    MalformedInputError,
    MetabelianError,
    NotInSError,
    UnsupportedModuleError,
)
from .groups import (
    ParaCertificate,
    ParaStatus,
    ParaVerdict,
    SplitMetabelianGroup,
    gamma_quotient,
    nilpotent_quotient_table,
    para_check_depth,
    subgroup_index,
    telescope_chain,
    verify_para_certificate,
)
from .laurent import LaurentPoly, T, augmentation, in_S
from .linalg import FgAbelianGroup, hermite_normal_form, smith_normal_form
from .modules import (
    CoprimeIdeal,
    CyclicModule,
    FreePresented,
    LatticeModule,
    ModuleMap,
    gamma_omega_bruteforce,
    iadic_quotient,
    induced_iadic_map,
    residually_nilpotent,
)

__version__ = "0.1.0"

__all__ = [
    "CoprimeIdeal", "CyclicModule", "FgAbelianGroup", "FreePresented", "IllDefinedMapError",
    "LatticeModule", "LaurentPoly", "MalformedInputError", "MetabelianError", "ModuleMap",
    "NotInSError", "ParaCertificate", "ParaStatus", "ParaVerdict", "SplitMetabelianGroup", "T",
    "UnsupportedModuleError", "augmentation", "gamma_omega_bruteforce", "gamma_quotient",
    "hermite_normal_form", "iadic_quotient", "in_S", "induced_iadic_map", "nilpotent_quotient_table",
    "para_check_depth", "residually_nilpotent", "smith_normal_form", "subgroup_index",
    "telescope_chain", "verify_para_certificate",
]
