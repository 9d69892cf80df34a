"""Hot kernels with a compiled core and a pure-Python fallback.

The Cython module ``_ckernels`` is used when it was built; otherwise, or
when ``LGCY_PURE_PYTHON=1`` is set, the reference module ``_pykernels`` is
loaded.  Both expose the same functions.
"""

from __future__ import annotations

import os

from . import _pykernels as pure

compiled = None
if os.environ.get("LGCY_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled  # type: ignore[no-redef]
    except ImportError:
        compiled = None

impl = compiled if compiled is not None else pure
BACKEND = "cython" if compiled is not None else "python"

poly_mul = impl.poly_mul
poly_addmul_into = impl.poly_addmul_into
sparse_matmul = impl.sparse_matmul
loggamma_derivs = impl.loggamma_derivs
log_gamma_nilpotent = impl.log_gamma_nilpotent
nil_exp = impl.nil_exp
mb_integrand = impl.mb_integrand
mb_integrand_line = impl.mb_integrand_line

__all__ = [
    "BACKEND",
    "compiled",
    "pure",
    "poly_mul",
    "poly_addmul_into",
    "sparse_matmul",
    "loggamma_derivs",
    "log_gamma_nilpotent",
    "nil_exp",
    "mb_integrand",
    "mb_integrand_line",
]
