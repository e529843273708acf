"""Search kernel selection.

The compiled kernels are used when the extension was built; otherwise the
pure-Python twins are loaded. Set ``LATIN_CHROMA_PURE=1`` to force the
fallback.
"""
import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("LATIN_CHROMA_PURE", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

FOUND = _pykernels.FOUND
EXHAUSTED = _pykernels.EXHAUSTED
OUT_OF_BUDGET = _pykernels.OUT_OF_BUDGET

kcolor = _impl.kcolor
transversals = _impl.transversals
max_partial_transversal = _impl.max_partial_transversal
tabucol = _impl.tabucol
