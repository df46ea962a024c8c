# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled subset-automaton kernel for spaces with at most 64 points.

Same contract as ``_pykernel.closure``; candidate sets are ``uint64`` masks and
each pseudo-orbit vertex owns a hash table from mask to state id.
"""

from libc.stdint cimport uint64_t, int32_t, int64_t
from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map
from cython.operator cimport dereference as deref

import numpy as np

from .errors import StateCapExceeded

BACKEND = "cython"
MAX_POINTS = 64


def closure(int n, balls, adj_ptr_in, adj_idx_in, fwd, int64_t cap):
    if n > 64:
        raise ValueError("compiled kernel handles at most 64 points")
    if n > cap:
        raise StateCapExceeded(cap, n)

    cdef int64_t[:] adj_ptr = np.ascontiguousarray(adj_ptr_in, dtype=np.int64)
    cdef int64_t[:] adj_idx = np.ascontiguousarray(adj_idx_in, dtype=np.int64)

    cdef vector[uint64_t] ball
    cdef int v, c, b, bit, width
    for v in range(n):
        ball.push_back(<uint64_t>balls[v])

    # image(S) = OR_c table[c * 256 + ((S >> 8c) & 255)]
    cdef int nchunks = (n + 7) // 8
    cdef vector[uint64_t] table
    table.resize(nchunks * 256, 0)
    cdef uint64_t low
    for c in range(nchunks):
        width = min(8, n - 8 * c)
        for b in range(1, 1 << width):
            low = b & (-b)
            bit = 0
            while (low >> bit) != 1:
                bit += 1
            table[c * 256 + b] = table[c * 256 + (b ^ <int>low)] | ((<uint64_t>1) << <int>fwd[8 * c + bit])

    cdef vector[unordered_map[uint64_t, int32_t]] index
    index.resize(n)
    cdef vector[int32_t] su, parent, depth
    cdef vector[uint64_t] ss
    cdef vector[int32_t] succ
    cdef vector[int64_t] succ_ptr

    for v in range(n):
        index[v][ball[v]] = v
        su.push_back(v)
        ss.push_back(ball[v])
        parent.push_back(-1)
        depth.push_back(0)
    succ_ptr.push_back(0)

    cdef int64_t i = 0, e, j
    cdef int u, w, d
    cdef uint64_t S, T, img, x
    cdef unordered_map[uint64_t, int32_t].iterator it
    while i < <int64_t>su.size():
        u = su[i]
        S = ss[i]
        img = 0
        c = 0
        x = S
        while x:
            img |= table[c * 256 + <int>(x & 255)]
            x >>= 8
            c += 1
        d = depth[i] + 1
        for e in range(adj_ptr[u], adj_ptr[u + 1]):
            w = <int>adj_idx[e]
            T = img & ball[w]
            it = index[w].find(T)
            if it == index[w].end():
                j = <int64_t>su.size()
                if j >= cap:
                    raise StateCapExceeded(cap, j + 1)
                index[w][T] = <int32_t>j
                su.push_back(w)
                ss.push_back(T)
                parent.push_back(<int32_t>i)
                depth.push_back(d)
            else:
                j = deref(it).second
            succ.push_back(<int32_t>j)
        succ_ptr.push_back(<int64_t>succ.size())
        i += 1

    cdef int64_t m = <int64_t>su.size()
    cdef int64_t nt = <int64_t>succ.size()

    # reverse edges, counting sort on the target state
    cdef vector[int64_t] rptr
    rptr.resize(m + 1, 0)
    for e in range(nt):
        rptr[succ[e] + 1] += 1
    for j in range(m):
        rptr[j + 1] += rptr[j]
    cdef vector[int64_t] fill = rptr
    cdef vector[int32_t] rsrc
    rsrc.resize(nt)
    for j in range(m):
        for e in range(succ_ptr[j], succ_ptr[j + 1]):
            rsrc[fill[succ[e]]] = <int32_t>j
            fill[succ[e]] += 1

    dist_arr = np.full(m, -1, dtype=np.int32)
    next_arr = np.full(m, -1, dtype=np.int32)
    cdef int32_t[:] dist = dist_arr
    cdef int32_t[:] nxt = next_arr
    cdef vector[int32_t] queue
    cdef int64_t head = 0, s, p
    for s in range(m):
        if ss[s] == 0:
            dist[s] = 0
            queue.push_back(<int32_t>s)
    while head < <int64_t>queue.size():
        s = queue[head]
        head += 1
        for e in range(rptr[s], rptr[s + 1]):
            p = rsrc[e]
            if dist[p] < 0:
                dist[p] = dist[s] + 1
                nxt[p] = <int32_t>s
                queue.push_back(<int32_t>p)

    su_arr = np.empty(m, dtype=np.int32)
    ss_arr = np.empty(m, dtype=np.uint64)
    par_arr = np.empty(m, dtype=np.int32)
    dep_arr = np.empty(m, dtype=np.int32)
    cdef int32_t[:] su_v = su_arr
    cdef uint64_t[:] ss_v = ss_arr
    cdef int32_t[:] par_v = par_arr
    cdef int32_t[:] dep_v = dep_arr
    for s in range(m):
        su_v[s] = su[s]
        ss_v[s] = ss[s]
        par_v[s] = parent[s]
        dep_v[s] = depth[s]
    succ_arr = np.empty(nt, dtype=np.int64)
    ptr_arr = np.empty(m + 1, dtype=np.int64)
    cdef int64_t[:] succ_v = succ_arr
    cdef int64_t[:] ptr_v = ptr_arr
    for e in range(nt):
        succ_v[e] = succ[e]
    for s in range(m + 1):
        ptr_v[s] = succ_ptr[s]

    return {
        "state_u": su_arr,
        "state_set": ss_arr,
        "parent": par_arr,
        "depth": dep_arr,
        "succ_ptr": ptr_arr,
        "succ": succ_arr,
        "dist": dist_arr,
        "next": next_arr,
    }
