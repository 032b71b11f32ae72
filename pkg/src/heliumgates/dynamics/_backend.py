"""Select the compiled kernel when available, else the numpy fallback.

Set ``HELIUMGATES_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernel_py

if os.environ.get("HELIUMGATES_PURE_PYTHON", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _kernel as _compiled
    except ImportError:  # extension not built
        _compiled = None

kernel = _compiled if _compiled is not None else _kernel_py
BACKEND = "cython" if _compiled is not None else "python"
COMPILED = _compiled
PURE = _kernel_py
