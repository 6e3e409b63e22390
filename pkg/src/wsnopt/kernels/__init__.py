"""Hot-path kernels with backend selection at import time.

The compiled extension (kernels._native, Cython) is preferred; the numpy
implementation (kernels._python) is the fallback. Set WSNOPT_KERNELS to
"native" or "python" to force one; forcing "native" raises if the
extension was not built.
"""

import os

_requested = os.environ.get("WSNOPT_KERNELS", "").strip().lower()

if _requested in ("", "native"):
    try:
        from . import _native as _impl
        BACKEND = "native"
    except ImportError:
        if _requested == "native":
            raise
        from . import _python as _impl
        BACKEND = "python"
elif _requested == "python":
    from . import _python as _impl
    BACKEND = "python"
else:
    raise ImportError(
        f"WSNOPT_KERNELS={_requested!r} not understood (use 'native' or 'python')"
    )

coverage_count = _impl.coverage_count
largest_component_size = _impl.largest_component_size
mst_edges = _impl.mst_edges

__all__ = ["BACKEND", "coverage_count", "largest_component_size", "mst_edges"]
