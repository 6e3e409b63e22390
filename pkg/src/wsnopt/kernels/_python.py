"""Pure numpy fallback for the compiled kernels.

Mirrors kernels._native operation for operation: same squared-distance
comparisons, same first-minimum tie breaking in Prim's algorithm. Counts,
component sizes and MST edge sets are identical across backends; only
speed differs.
"""

import numpy as np

_SAMPLE_CHUNK = 4096


def coverage_count(nodes, samples, rs):
    """Number of sample points within rs of at least one node."""
    n = nodes.shape[0]
    k = samples.shape[0]
    if n == 0 or k == 0:
        return 0
    rs2 = rs * rs
    x = nodes[:, 0][:, None]
    y = nodes[:, 1][:, None]
    count = 0
    for lo in range(0, k, _SAMPLE_CHUNK):
        chunk = samples[lo:lo + _SAMPLE_CHUNK]
        dx = x - chunk[:, 0][None, :]
        dy = y - chunk[:, 1][None, :]
        covered = (dx * dx + dy * dy <= rs2).any(axis=0)
        count += int(covered.sum())
    return count


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def largest_component_size(nodes, rc):
    """Size of the largest connected component of the rc-disk graph."""
    n = nodes.shape[0]
    if n == 0:
        return 0
    rc2 = rc * rc
    dx = nodes[:, 0][:, None] - nodes[:, 0][None, :]
    dy = nodes[:, 1][:, None] - nodes[:, 1][None, :]
    ii, jj = np.nonzero(np.triu(dx * dx + dy * dy <= rc2, k=1))
    uf = _UnionFind(n)
    for a, b in zip(ii.tolist(), jj.tolist()):
        uf.union(a, b)
    return max(uf.size[uf.find(i)] for i in range(n))


def mst_edges(nodes, start):
    """Prim's MST over all nodes from `start`; see kernels._native.mst_edges."""
    n = nodes.shape[0]
    us = np.empty(max(n - 1, 0), dtype=np.int64)
    vs = np.empty(max(n - 1, 0), dtype=np.int64)
    d2s = np.empty(max(n - 1, 0), dtype=np.float64)
    if n < 2:
        return us, vs, d2s

    best = np.full(n, np.inf)
    tree_parent = np.full(n, -1, dtype=np.int64)
    in_tree = np.zeros(n, dtype=bool)
    in_tree[start] = True
    current = start
    for added in range(n - 1):
        dx = nodes[:, 0] - nodes[current, 0]
        dy = nodes[:, 1] - nodes[current, 1]
        d2 = dx * dx + dy * dy
        improve = ~in_tree & (d2 < best)
        best[improve] = d2[improve]
        tree_parent[improve] = current
        # np.argmin returns the first minimum, as the native scan does.
        masked = np.where(in_tree, np.inf, best)
        pick = int(np.argmin(masked))
        us[added] = tree_parent[pick]
        vs[added] = pick
        d2s[added] = best[pick]
        in_tree[pick] = True
        current = pick
    return us, vs, d2s
