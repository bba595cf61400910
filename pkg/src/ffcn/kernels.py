"""Hot-loop kernels: compiled extension if built, pure Python otherwise.

Set ``FFCN_PURE_PYTHON=1`` to force the fallback.  ``BACKEND`` names the
implementation in use.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("FFCN_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

jacobi = _impl.jacobi
char_sums = _impl.char_sums
quadratic_char_sum = _impl.quadratic_char_sum

__all__ = ["BACKEND", "jacobi", "char_sums", "quadratic_char_sum"]
