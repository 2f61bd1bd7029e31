# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled inner loops: plane-side tests for the hull and Tarjan SCC."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def plane_distances(double[:, ::1] normals, double[::1] offsets, double[::1] p):
    """Signed distances n_k . p - c_k of one point to many planes."""
    cdef Py_ssize_t m = normals.shape[0]
    cdef Py_ssize_t k
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    for k in range(m):
        o[k] = normals[k, 0] * p[0] + normals[k, 1] * p[1] + normals[k, 2] * p[2] - offsets[k]
    return out


def orient3d(double[::1] a, double[::1] b, double[::1] c, double[::1] d):
    """det[b-a, c-a, d-a]; positive when d is on the left of triangle abc."""
    cdef double bx = b[0] - a[0], by = b[1] - a[1], bz = b[2] - a[2]
    cdef double cx = c[0] - a[0], cy = c[1] - a[1], cz = c[2] - a[2]
    cdef double dx = d[0] - a[0], dy = d[1] - a[1], dz = d[2] - a[2]
    return (bx * (cy * dz - cz * dy)
            - by * (cx * dz - cz * dx)
            + bz * (cx * dy - cy * dx))


def scc_labels(Py_ssize_t n, long[::1] indptr, long[::1] indices):
    """Strongly connected component label per node (iterative Tarjan)."""
    labels = np.full(n, -1, dtype=np.int64)
    cdef long[::1] lab = labels
    cdef long[::1] index = np.full(n, -1, dtype=np.int64)
    cdef long[::1] low = np.zeros(n, dtype=np.int64)
    cdef long[::1] onstack = np.zeros(n, dtype=np.int64)
    cdef long[::1] stack = np.zeros(n, dtype=np.int64)
    cdef long[::1] cstack = np.zeros(n, dtype=np.int64)
    cdef long[::1] cpos = np.zeros(n, dtype=np.int64)
    cdef Py_ssize_t sp = 0, csp = 0
    cdef long counter = 0, comp = 0
    cdef long root, v, w, e
    for root in range(n):
        if index[root] != -1:
            continue
        cstack[csp] = root
        csp += 1
        cpos[root] = indptr[root]
        index[root] = counter
        low[root] = counter
        counter += 1
        stack[sp] = root
        sp += 1
        onstack[root] = 1
        while csp > 0:
            v = cstack[csp - 1]
            e = cpos[v]
            if e < indptr[v + 1]:
                cpos[v] = e + 1
                w = indices[e]
                if index[w] == -1:
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[sp] = w
                    sp += 1
                    onstack[w] = 1
                    cpos[w] = indptr[w]
                    cstack[csp] = w
                    csp += 1
                elif onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                csp -= 1
                if csp > 0:
                    w = cstack[csp - 1]
                    if low[v] < low[w]:
                        low[w] = low[v]
                if low[v] == index[v]:
                    while True:
                        sp -= 1
                        w = stack[sp]
                        onstack[w] = 0
                        lab[w] = comp
                        if w == v:
                            break
                    comp += 1
    return labels
