"""Kernel backend selection.

The compiled extension ``lambdaforge._kernel._native`` is preferred when it
was built; otherwise the pure-Python twin is used.  Setting the environment
variable ``LAMBDA_FORGE_PURE`` forces the pure backend (the benchmark script
uses this to compare the two).
"""

import os

from . import pure as _pure

if os.environ.get("LAMBDA_FORGE_PURE"):
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]

        BACKEND = "native"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

term_mul = _impl.term_mul
add_scaled = _impl.add_scaled
bilinear = _impl.bilinear

__all__ = ["BACKEND", "term_mul", "add_scaled", "bilinear"]
