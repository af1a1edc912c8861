"""Backend selection for the numerical hot loops.

The compiled extension ``_ckernels`` is used when it was built; otherwise
(or when ``HANKELNORM_PURE_PYTHON`` is set to a non-empty value) the NumPy
versions in ``_pykernels`` are used. ``BACKEND`` names the active one.
"""

import os

from . import _pykernels

if os.environ.get("HANKELNORM_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

power_recurrence = _impl.power_recurrence
hankel_matrix = _impl.hankel_matrix
hankel_quadratic = _impl.hankel_quadratic
grid_winding = _impl.grid_winding
sor_solve = _impl.sor_solve


def available_backends():
    """Modules implementing the kernel API, keyed by backend name."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
