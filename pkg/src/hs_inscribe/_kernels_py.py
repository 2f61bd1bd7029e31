"""Pure-Python versions of the compiled kernels, same signatures."""

import numpy as np


def plane_distances(normals, offsets, p):
    normals = np.asarray(normals, dtype=float)
    return normals @ np.asarray(p, dtype=float) - np.asarray(offsets, dtype=float)


def orient3d(a, b, c, d):
    bx, by, bz = b[0] - a[0], b[1] - a[1], b[2] - a[2]
    cx, cy, cz = c[0] - a[0], c[1] - a[1], c[2] - a[2]
    dx, dy, dz = d[0] - a[0], d[1] - a[1], d[2] - a[2]
    return (bx * (cy * dz - cz * dy)
            - by * (cx * dz - cz * dx)
            + bz * (cx * dy - cy * dx))


def scc_labels(n, indptr, indices):
    """Iterative Tarjan; labels are numbered in order of completion."""
    labels = [-1] * n
    index = [-1] * n
    low = [0] * n
    onstack = [False] * n
    stack = []
    counter = 0
    comp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack[root] = True
        work = [(root, int(indptr[root]))]
        while work:
            v, e = work[-1]
            if e < indptr[v + 1]:
                work[-1] = (v, e + 1)
                w = int(indices[e])
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack[w] = True
                    work.append((w, int(indptr[w])))
                elif onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    labels[w] = comp
                    if w == v:
                        break
                comp += 1
    return np.array(labels, dtype=np.int64)
