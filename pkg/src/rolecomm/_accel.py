"""JIT switch.

Hot loops are compiled with numba unless ``ROLECOMM_DISABLE_NUMBA`` is set
(or numba is not importable), in which case the vectorised numpy kernels
are used instead. Both paths produce identical results.
"""

import os

_DISABLED = os.environ.get("ROLECOMM_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED

NUMBA_OPTS = {"cache": True, "nogil": True}


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
