"""Exact truncated p-adic kernel for the canonical Frobenius lift in Morava E-theory."""

from .charfun import ClassFun, SubgroupTable, enum_subgroups, transfer_scaled
from .freealg import AlgElt, MonicPoly, QuotAlgebra, RingMap, alg_trace
from .froblift import (adams_psi, congruence_check, frobenius_class_check, hecke_Tp,
                       sigma_can, theta)
from .models import TheoryModel, height1_model, height2_model, power_op
from .padics import PAdicInt
from .series import BaseElt, BaseRing

__version__ = "0.1.0"

__all__ = [
    "AlgElt", "BaseElt", "BaseRing", "ClassFun", "MonicPoly", "PAdicInt", "QuotAlgebra",
    "RingMap", "SubgroupTable", "TheoryModel", "adams_psi", "alg_trace", "congruence_check",
    "enum_subgroups", "frobenius_class_check", "hecke_Tp", "height1_model", "height2_model",
    "power_op", "sigma_can", "theta", "transfer_scaled",
]
