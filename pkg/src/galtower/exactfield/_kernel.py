"""Select the F_p polynomial kernel: compiled extension if importable, else pure Python.

Set ``GALTOWER_PURE_PYTHON=1`` to force the fallback.
"""

import os

from galtower.exactfield import _fpoly_py

BACKEND = "python"
fpoly = _fpoly_py

if not os.environ.get("GALTOWER_PURE_PYTHON"):
    try:
        from galtower.exactfield import _fpoly_ext as fpoly  # noqa: F811

        BACKEND = "compiled"
    except ImportError:
        pass


def backends():
    """Return the available kernels keyed by name (used by the benchmark)."""
    out = {"python": _fpoly_py}
    try:
        from galtower.exactfield import _fpoly_ext

        out["compiled"] = _fpoly_ext
    except ImportError:
        pass
    return out
