"""Backend selection for the numerical hot paths.

The compiled extension (`_kernels`, built from Cython) is used when it is
importable, otherwise the numpy fallback (`_kernels_py`). Set
``GHZW_SQUEEZING_BACKEND=python`` or ``=compiled`` to force a choice; forcing
``compiled`` raises ImportError when the extension was not built.
"""

from __future__ import annotations

import os

from . import _kernels_py

_FORCED = os.environ.get("GHZW_SQUEEZING_BACKEND", "").strip().lower()

if _FORCED in ("python", "py"):
    _impl = _kernels_py
    BACKEND = "python"
elif _FORCED in ("compiled", "cython", "ext"):
    from . import _kernels as _impl  # type: ignore[no-redef]

    BACKEND = "compiled"
elif _FORCED:
    raise ValueError(f"unknown GHZW_SQUEEZING_BACKEND value: {_FORCED!r}")
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

apply_single_qubit_kraus = _impl.apply_single_qubit_kraus
expectations_real = _impl.expectations_real


def backend_name() -> str:
    """Name of the backend selected at import time."""
    return BACKEND
