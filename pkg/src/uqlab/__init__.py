"""Exact verification of root-of-unity representations of affine U_q(sl2)."""

__version__ = "0.1.0"

from .errors import ConditionError, DegenerateError, ParameterError, UqlabError
from .scalar import Cyclo, FieldSpec, qbinom, qbracket, qfact, qint
from .laurent import LaurentPoly
from .tensorrep import TensorModule, build_tensor, check_affine_relations
from .conditions import ConditionReport, check_conditions

__all__ = [
    "__version__",
    "UqlabError",
    "ParameterError",
    "ConditionError",
    "DegenerateError",
    "Cyclo",
    "FieldSpec",
    "LaurentPoly",
    "TensorModule",
    "ConditionReport",
    "build_tensor",
    "check_affine_relations",
    "check_conditions",
    "qint",
    "qfact",
    "qbinom",
    "qbracket",
]
