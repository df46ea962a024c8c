"""Pure-Python subset-automaton kernel.

Used when the compiled ``_kernel`` extension is missing, and for spaces with
more than 64 points (the compiled kernel packs candidate sets into ``uint64``).
"""

from collections import deque

import numpy as np

from .errors import StateCapExceeded

BACKEND = "python"
MAX_POINTS = None


def image_tables(n, fwd):
    """Byte-chunk lookup tables: image(S) = OR_c table[c][(S >> 8c) & 255]."""
    tables = []
    for c in range(0, n, 8):
        width = min(8, n - c)
        row = [0] * 256
        for b in range(1, 1 << width):
            low = b & -b
            bit = low.bit_length() - 1
            row[b] = row[b ^ low] | (1 << fwd[c + bit])
        tables.append(row)
    return tables


def closure(n, balls, adj_ptr, adj_idx, fwd, cap):
    """Breadth-first closure of the subset automaton plus its doomed set.

    States are pairs ``(u, S)``; the initial states are ``(v, balls[v])`` and an
    edge ``u -> w`` of the pseudo-orbit graph sends ``(u, S)`` to
    ``(w, f(S) & balls[w])``. A state is doomed when some path reaches a state
    with ``S == 0``. Returns flat arrays, see ``engine.SubsetAutomaton``.
    """
    if n > cap:
        raise StateCapExceeded(cap, n)
    tables = image_tables(n, fwd)
    adj = [adj_idx[adj_ptr[u]:adj_ptr[u + 1]].tolist() for u in range(n)]

    index = {}
    su, ss, parent, depth = [], [], [], []
    for v in range(n):
        index[balls[v] * n + v] = v
        su.append(v)
        ss.append(balls[v])
        parent.append(-1)
        depth.append(0)

    succ = []
    succ_ptr = [0]
    i = 0
    while i < len(su):
        u, S = su[i], ss[i]
        img = 0
        c = 0
        x = S
        while x:
            img |= tables[c][x & 255]
            x >>= 8
            c += 1
        d = depth[i] + 1
        for w in adj[u]:
            T = img & balls[w]
            key = T * n + w
            j = index.get(key)
            if j is None:
                j = len(su)
                if j >= cap:
                    raise StateCapExceeded(cap, j + 1)
                index[key] = j
                su.append(w)
                ss.append(T)
                parent.append(i)
                depth.append(d)
            succ.append(j)
        succ_ptr.append(len(succ))
        i += 1

    m = len(su)
    succ_arr = np.asarray(succ, dtype=np.int64)
    ptr_arr = np.asarray(succ_ptr, dtype=np.int64)
    src = np.repeat(np.arange(m, dtype=np.int64), np.diff(ptr_arr))
    order = np.argsort(succ_arr, kind="stable")
    rsrc = src[order].tolist()
    rptr = np.searchsorted(succ_arr[order], np.arange(m + 1)).tolist()

    dist = [-1] * m
    nxt = [-1] * m
    queue = deque()
    for s in range(m):
        if ss[s] == 0:
            dist[s] = 0
            queue.append(s)
    while queue:
        s = queue.popleft()
        ds = dist[s] + 1
        for e in range(rptr[s], rptr[s + 1]):
            p = rsrc[e]
            if dist[p] < 0:
                dist[p] = ds
                nxt[p] = s
                queue.append(p)

    return {
        "state_u": np.asarray(su, dtype=np.int32),
        "state_set": ss,
        "parent": np.asarray(parent, dtype=np.int32),
        "depth": np.asarray(depth, dtype=np.int32),
        "succ_ptr": ptr_arr,
        "succ": succ_arr,
        "dist": np.asarray(dist, dtype=np.int32),
        "next": np.asarray(nxt, dtype=np.int32),
    }
