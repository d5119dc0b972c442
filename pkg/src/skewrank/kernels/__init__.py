"""Hot loops, compiled when available.

The Cython module ``_ckernels`` is preferred; setting the environment
variable ``SKEWRANK_PURE_PYTHON=1`` (or a failed build) selects the pure
Python implementations, which define the reference semantics.
"""

import os

from . import _pykernels

BACKEND = "python"
power_sum_counts = _pykernels.power_sum_counts
rank_mod_p = _pykernels.rank_mod_p

if os.environ.get("SKEWRANK_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        _ckernels = None
    else:
        power_sum_counts = _ckernels.power_sum_counts
        rank_mod_p = _ckernels.rank_mod_p
        BACKEND = "cython"
else:
    _ckernels = None


def backends():
    """Available implementations keyed by name."""
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    return out
