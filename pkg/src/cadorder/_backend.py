"""Kernel backend selection.

The compiled Cython kernel is used when it imported cleanly; otherwise the
pure Python twin takes over.  Set CADORDER_PURE_PYTHON=1 to force the pure
Python kernel (useful for benchmarking and debugging).
"""

import os

if os.environ.get("CADORDER_PURE_PYTHON"):
    from cadorder import _kernel_py as kernel
else:
    try:
        from cadorder import _kernel as kernel  # type: ignore[no-redef]
    except ImportError:
        from cadorder import _kernel_py as kernel  # type: ignore[no-redef]

BACKEND: str = kernel.IMPL
