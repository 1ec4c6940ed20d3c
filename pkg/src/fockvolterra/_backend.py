"""Select the compiled kernels when importable, else the numpy fallback.

Set ``FOCKVOLTERRA_PURE=1`` to force the fallback.
"""

import os

if os.environ.get("FOCKVOLTERRA_PURE", "") not in ("", "0"):
    from . import _core_py as core
    COMPILED = False
else:
    try:
        from . import _fastcore as core
        COMPILED = True
    except ImportError:
        from . import _core_py as core
        COMPILED = False

NAME = "cython" if COMPILED else "numpy"

__all__ = ["core", "COMPILED", "NAME"]
