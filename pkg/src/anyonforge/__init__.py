"""anyonforge: anyon models, fusion-tree braiding, metaplectic qutrit gates,
ternary arithmetic circuits and knot invariants."""

from .laurent import LaurentPoly
from .model import AnyonModel, builtin_model, build_su2k, fusion_product, total_qdim
from .qarith import QContext, qfact, qint, qint_generic

__version__ = "0.1.0"

__all__ = [
    "AnyonModel", "LaurentPoly", "QContext", "build_su2k", "builtin_model",
    "fusion_product", "qfact", "qint", "qint_generic", "total_qdim",
]
