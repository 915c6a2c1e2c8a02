"""Hot-loop kernels, compiled when available.

The Cython extension ``ftl._ckernels`` is used if it was built; otherwise the
numpy versions from ``ftl._kernels_py`` are used. Set ``FTL_PURE_PYTHON=1``
to force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
eval_mixed = _kernels_py.eval_mixed
chordal = _kernels_py.chordal

if not os.environ.get("FTL_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        eval_mixed = _ckernels.eval_mixed
        chordal = _ckernels.chordal

__all__ = ["BACKEND", "eval_mixed", "chordal"]
