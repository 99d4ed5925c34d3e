"""Backend selection for the transport kernel.

The compiled extension is used when it imports; set ``LGCY_PURE_PYTHON=1``
to force the pure-Python implementation.
"""

from __future__ import annotations

import os

from ._pykernels import StepUnderflow
from ._pykernels import integrate_path as py_integrate_path

BACKEND = "python"
integrate_path = py_integrate_path

if os.environ.get("LGCY_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._ckernels import integrate_path as c_integrate_path
    except ImportError:
        c_integrate_path = None
    else:
        integrate_path = c_integrate_path
        BACKEND = "cython"
else:
    c_integrate_path = None

__all__ = ["BACKEND", "StepUnderflow", "integrate_path", "py_integrate_path", "c_integrate_path"]
