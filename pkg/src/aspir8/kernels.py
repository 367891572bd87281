"""Kernel backend selection.

The compiled extension is preferred when it imports; the numpy fallback is
always available.  Set ``ASPIR8_KERNELS=python`` to force the fallback or
``ASPIR8_KERNELS=compiled`` to require the extension.
"""

from __future__ import annotations

import os

from . import _kernels_py

_FORCE = os.environ.get("ASPIR8_KERNELS", "auto").strip().lower()

try:
    from . import _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

if _FORCE in ("python", "py"):
    _impl = _kernels_py
    BACKEND = "python"
elif _FORCE == "compiled" and _kernels_c is None:
    raise ImportError(
        "ASPIR8_KERNELS=compiled but the aspir8._kernels_c extension is not built"
    )
elif _kernels_c is not None:
    _impl = _kernels_c
    BACKEND = "compiled"
else:
    _impl = _kernels_py
    BACKEND = "python"

step_kernel = _impl.step_kernel


def available_backends() -> dict:
    """Mapping backend name -> step kernel, for benchmarks and parity tests."""
    out = {"python": _kernels_py.step_kernel}
    if _kernels_c is not None:
        out["compiled"] = _kernels_c.step_kernel
    return out
