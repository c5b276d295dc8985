"""Exact q-expansion arithmetic, Hecke theory and high-precision numerics for classical modular forms."""

from . import arith, dims, errors, expr, forms, hecke, linalg, numeric, qexp, tau
from .errors import ModFormsError
from .forms import FormDesc, NamedForm
from .numeric import CheckResult, EvalContext
from .qexp import QExp

__version__ = "0.1.0"

__all__ = [
    "arith", "dims", "errors", "expr", "forms", "hecke", "linalg", "numeric", "qexp", "tau",
    "ModFormsError", "FormDesc", "NamedForm", "CheckResult", "EvalContext", "QExp",
]
