# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled layered relaxation kernel.

Semantics are identical to hcst._kernel_py: each (layer, vertex) cell holds
the lexicographic minimum of (cost, hops, predecessor id) over all candidate
chains, which makes the result independent of edge processing order and
bit-identical to the fallback kernel.
"""

import numpy as np

from libc.stdint cimport int64_t, uint8_t

KERNEL_NAME = "compiled"

cdef int64_t INF = <int64_t>1 << 62


def relax_layers(int n, int hop_limit, src, dst, cst, seg_offsets, seg_targets,
                 seg_ids, src_v, src_layer, blocked):
    cdef int width = n + 1
    cdef int layers = hop_limit + 1

    dist_arr = np.full((layers, width), INF, dtype=np.int64)
    hops_arr = np.zeros((layers, width), dtype=np.int64)
    pred_arr = np.full((layers, width), -1, dtype=np.int64)
    ext_arr = np.zeros((layers, width), dtype=np.uint8)

    cdef int64_t[:, ::1] dist = dist_arr
    cdef int64_t[:, ::1] hops = hops_arr
    cdef int64_t[:, ::1] pred = pred_arr
    cdef uint8_t[:, ::1] ext = ext_arr

    cdef const int64_t[::1] eu = src
    cdef const int64_t[::1] ev = dst
    cdef const int64_t[::1] ec = cst
    cdef const int64_t[::1] sv = src_v
    cdef const int64_t[::1] sl = src_layer
    cdef const uint8_t[::1] blk = blocked

    cdef Py_ssize_t m = eu.shape[0]
    cdef Py_ssize_t n_src = sv.shape[0]
    cdef Py_ssize_t j, i
    cdef int h, v, u, s
    cdef int64_t cand, ck, cd

    for h in range(layers):
        if h > 0:
            for v in range(1, width):
                if dist[h - 1, v] < INF:
                    dist[h, v] = dist[h - 1, v]
                    hops[h, v] = hops[h - 1, v]
                    pred[h, v] = v
                    ext[h, v] = ext[h - 1, v]

        for i in range(n_src):
            if sl[i] == h:
                s = <int>sv[i]
                if dist[h, s] > 0 or hops[h, s] > 0 or pred[h, s] > -1:
                    dist[h, s] = 0
                    hops[h, s] = 0
                    pred[h, s] = -1
                    ext[h, s] = 1

        if h == 0:
            continue

        for j in range(m):
            u = <int>eu[j]
            if ext[h - 1, u] == 0:
                continue
            v = <int>ev[j]
            cand = dist[h - 1, u] + ec[j]
            cd = dist[h, v]
            if cand > cd:
                continue
            ck = hops[h - 1, u] + 1
            if cand < cd or ck < hops[h, v] or (ck == hops[h, v] and u < pred[h, v]):
                dist[h, v] = cand
                hops[h, v] = ck
                pred[h, v] = u
                ext[h, v] = 0 if blk[v] else 1

    return dist_arr, hops_arr, pred_arr, ext_arr
