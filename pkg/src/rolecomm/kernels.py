"""Backend dispatch for the hot loops (see ``_accel``)."""

import numpy as np

from . import _kernels_numpy
from ._accel import USE_NUMBA, backend_name

if USE_NUMBA:
    from . import _kernels_numba as _impl
else:
    _impl = _kernels_numpy

__all__ = ["backend_name", "louvain_local_moves", "mlink_union_find", "prim_mst"]


def prim_mst(z):
    return _impl.prim_mst(np.ascontiguousarray(z, dtype=np.float64))


def mlink_union_find(n, eu, ev, ew):
    return _impl.mlink_union_find(
        int(n),
        np.ascontiguousarray(eu, dtype=np.int64),
        np.ascontiguousarray(ev, dtype=np.int64),
        np.ascontiguousarray(ew, dtype=np.float64),
    )


def louvain_local_moves(b, order, min_gain):
    return _impl.louvain_local_moves(
        np.ascontiguousarray(b, dtype=np.float64),
        np.ascontiguousarray(order, dtype=np.int64),
        float(min_gain),
    )
