# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot-path kernels: coverage counting, disk-graph components, Prim MST.

Semantics (comparison on squared distances, first-minimum tie breaking,
strict-improvement updates) are mirrored exactly by kernels._python so the
two backends are interchangeable.
"""

import numpy as np


def coverage_count(const double[:, ::1] nodes, const double[:, ::1] samples, double rs):
    """Number of sample points within rs of at least one node."""
    cdef Py_ssize_t n = nodes.shape[0]
    cdef Py_ssize_t k = samples.shape[0]
    cdef double rs2 = rs * rs
    cdef Py_ssize_t i, j
    cdef long count = 0
    cdef double px, py, dx, dy

    for j in range(k):
        px = samples[j, 0]
        py = samples[j, 1]
        for i in range(n):
            dx = nodes[i, 0] - px
            dy = nodes[i, 1] - py
            if dx * dx + dy * dy <= rs2:
                count += 1
                break
    return count


cdef Py_ssize_t _find(Py_ssize_t[::1] parent, Py_ssize_t x) noexcept:
    # Path halving.
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def largest_component_size(const double[:, ::1] nodes, double rc):
    """Size of the largest connected component of the rc-disk graph."""
    cdef Py_ssize_t n = nodes.shape[0]
    if n == 0:
        return 0

    parent_arr = np.arange(n, dtype=np.intp)
    size_arr = np.ones(n, dtype=np.intp)
    cdef Py_ssize_t[::1] parent = parent_arr
    cdef Py_ssize_t[::1] size = size_arr

    cdef double rc2 = rc * rc
    cdef Py_ssize_t i, j, ri, rj
    cdef double dx, dy

    for i in range(n):
        for j in range(i + 1, n):
            dx = nodes[i, 0] - nodes[j, 0]
            dy = nodes[i, 1] - nodes[j, 1]
            if dx * dx + dy * dy <= rc2:
                ri = _find(parent, i)
                rj = _find(parent, j)
                if ri != rj:
                    # Union by size.
                    if size[ri] < size[rj]:
                        ri, rj = rj, ri
                    parent[rj] = ri
                    size[ri] += size[rj]

    cdef Py_ssize_t best = 1
    for i in range(n):
        if parent[i] == i and size[i] > best:
            best = size[i]
    return best


def mst_edges(const double[:, ::1] nodes, Py_ssize_t start):
    """Prim's MST over all nodes from `start`.

    Returns (parents, children, d2) in tree-growth order; d2 holds squared
    edge lengths. Ties in the cut minimum go to the lowest index (first
    strict minimum), matching the fallback backend.
    """
    cdef Py_ssize_t n = nodes.shape[0]
    us = np.empty(max(n - 1, 0), dtype=np.int64)
    vs = np.empty(max(n - 1, 0), dtype=np.int64)
    d2s = np.empty(max(n - 1, 0), dtype=np.float64)
    if n < 2:
        return us, vs, d2s

    best_arr = np.full(n, np.inf, dtype=np.float64)
    from_arr = np.full(n, -1, dtype=np.intp)
    in_tree_arr = np.zeros(n, dtype=np.uint8)
    cdef double[::1] best = best_arr
    cdef Py_ssize_t[::1] tree_parent = from_arr
    cdef unsigned char[::1] in_tree = in_tree_arr
    cdef long[::1] us_v = us
    cdef long[::1] vs_v = vs
    cdef double[::1] d2s_v = d2s

    cdef Py_ssize_t added, j, pick, current
    cdef double dx, dy, d2, low

    current = start
    in_tree[current] = 1
    for added in range(n - 1):
        # Relax distances to the freshly added node.
        for j in range(n):
            if not in_tree[j]:
                dx = nodes[current, 0] - nodes[j, 0]
                dy = nodes[current, 1] - nodes[j, 1]
                d2 = dx * dx + dy * dy
                if d2 < best[j]:
                    best[j] = d2
                    tree_parent[j] = current
        pick = -1
        low = np.inf
        for j in range(n):
            if not in_tree[j] and best[j] < low:
                low = best[j]
                pick = j
        us_v[added] = tree_parent[pick]
        vs_v[added] = pick
        d2s_v[added] = best[pick]
        in_tree[pick] = 1
        current = pick
    return us, vs, d2s
