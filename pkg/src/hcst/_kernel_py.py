"""Pure-Python (numpy) layered relaxation kernel.

This is the fallback used when the compiled extension is unavailable. Both
kernels must produce bit-identical tables: every cell is the lexicographic
minimum of (cost, hops, predecessor id) over all candidates, so the result
does not depend on edge processing order.

Cell encoding per (layer, vertex):
    dist  -- path cost, INF when unreached
    hops  -- number of real edges on the stored chain
    pred  -- predecessor vertex at the previous layer; pred == vertex means a
             stay link (the entry was carried from the layer below), -1 marks
             a source cell or an unreached cell
    ext   -- 1 when the chain may be extended through this vertex; blocked
             vertices are extendable only while the chain is the source's own
             zero-length entry
"""

from __future__ import annotations

import numpy as np

INF = 1 << 62

KERNEL_NAME = "python"


def relax_layers(n, hop_limit, src, dst, cst, seg_offsets, seg_targets, seg_ids,
                 src_v, src_layer, blocked):
    width = n + 1
    layers = hop_limit + 1
    dist = np.full((layers, width), INF, dtype=np.int64)
    hops = np.zeros((layers, width), dtype=np.int64)
    pred = np.full((layers, width), -1, dtype=np.int64)
    ext = np.zeros((layers, width), dtype=np.uint8)
    idx = np.arange(width, dtype=np.int64)
    open_target = (1 - blocked).astype(np.uint8)

    for h in range(layers):
        if h > 0:
            dprev, kprev, eprev = dist[h - 1], hops[h - 1], ext[h - 1]
            finite = dprev < INF
            d = dprev.copy()
            k = kprev.copy()
            p = np.where(finite, idx, -1)
            e = eprev.copy()
        else:
            d, k, p, e = dist[0], hops[0], pred[0], ext[0]

        vs = src_v[src_layer == h]
        if len(vs):
            # a source cell is the lexicographic minimum (0, 0, -1); replace
            # anything that is not already exactly that entry
            fresh = vs[(d[vs] > 0) | (k[vs] > 0) | (p[vs] > -1)]
            d[fresh] = 0
            k[fresh] = 0
            p[fresh] = -1
            e[fresh] = 1

        if h > 0 and len(seg_offsets):
            allowed = eprev[src] != 0
            cand_cost = np.where(allowed, dprev[src] + cst, INF)
            cand_hops = kprev[src] + 1

            seg_cost = np.minimum.reduceat(cand_cost, seg_offsets)
            on_cost = cand_cost == seg_cost[seg_ids]
            seg_hops = np.minimum.reduceat(np.where(on_cost, cand_hops, INF), seg_offsets)
            on_hops = on_cost & (cand_hops == seg_hops[seg_ids])
            seg_pred = np.minimum.reduceat(np.where(on_hops, src, INF), seg_offsets)

            tc, tk, tp = d[seg_targets], k[seg_targets], p[seg_targets]
            better = (seg_cost < INF) & (
                (seg_cost < tc)
                | ((seg_cost == tc) & (seg_hops < tk))
                | ((seg_cost == tc) & (seg_hops == tk) & (seg_pred < tp))
            )
            tgt = seg_targets[better]
            d[tgt] = seg_cost[better]
            k[tgt] = seg_hops[better]
            p[tgt] = seg_pred[better]
            e[tgt] = open_target[tgt]

        dist[h], hops[h], pred[h], ext[h] = d, k, p, e

    return dist, hops, pred, ext
