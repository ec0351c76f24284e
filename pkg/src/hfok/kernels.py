"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``HFOK_PURE_PYTHON`` is set to a non-empty value other
than ``0``, the pure-Python implementations are used. ``BACKEND`` names the
active choice.
"""

import os

from . import _kernels_py

_force_py = os.environ.get("HFOK_PURE_PYTHON", "") not in ("", "0")

try:
    if _force_py:
        raise ImportError("pure Python backend requested")
    from . import _kernels_c as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

is_baxter = _impl.is_baxter
is_simple = _impl.is_simple
hfo_scan = _impl.hfo_scan
min_k_scan = _impl.min_k_scan


def available_backends():
    """Return ``{name: module}`` for every importable backend."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels_c
    except ImportError:
        pass
    else:
        found["cython"] = _kernels_c
    return found
