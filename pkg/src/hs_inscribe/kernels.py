"""Kernel backend selection.

The compiled extension is used when it was built; otherwise, or when the
environment variable HS_INSCRIBE_PURE is set to a non-empty value other than
"0", the pure-Python module is used.
"""

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("HS_INSCRIBE_PURE", "") in ("", "0"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def plane_distances(normals, offsets, p):
    """Signed distances of point p to the planes n_k . x = c_k."""
    return _impl.plane_distances(_f64(normals), _f64(offsets), _f64(p))


def orient3d(a, b, c, d) -> float:
    return float(_impl.orient3d(_f64(a), _f64(b), _f64(c), _f64(d)))


def scc_labels(n, indptr, indices):
    """Component label for each of the n nodes of a CSR digraph."""
    return _impl.scc_labels(int(n), np.ascontiguousarray(indptr, dtype=np.int64),
                            np.ascontiguousarray(indices, dtype=np.int64))


__all__ = ["BACKEND", "plane_distances", "orient3d", "scc_labels"]
