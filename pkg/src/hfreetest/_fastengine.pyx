# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of the pure-Python exploration loop.

Must stay bit-identical to ``engine._explore_pure`` running against a
standard seeded oracle: same random-stream consumption order (one draw
per uniform seed, one draw per neighbor query on a non-isolated vertex)
and the same discovery bookkeeping.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from *:
    ctypedef unsigned long long uint128 "__uint128_t"

ctypedef unsigned long long u64
ctypedef long long i64

cdef u64 GAMMA = 0x9E3779B97F4A7C15ULL


cdef inline u64 mix(u64 z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline i64 draw_below(u64 x, i64 n) nogil:
    return <i64>((<uint128>x * <uint128>(<u64>n)) >> 64)


def explore(
    cnp.int64_t[::1] indptr,
    cnp.int64_t[::1] flat,
    i64 n,
    u64 state,
    cnp.int64_t[::1] forced,
    i64 num_seeds,
    i64 num_rounds,
    i64 queries_per_vertex,
    i64 query_budget,
):
    cdef i64 m2 = flat.shape[0]
    disc_v_arr = np.empty(n, dtype=np.int64)
    disc_r_arr = np.empty(n, dtype=np.int64)
    vround_arr = np.full(n, -1, dtype=np.int64)
    seen_arr = np.zeros(m2, dtype=np.uint8)
    ea_arr = np.empty(m2 // 2 + 1, dtype=np.int64)
    eb_arr = np.empty(m2 // 2 + 1, dtype=np.int64)
    er_arr = np.empty(m2 // 2 + 1, dtype=np.int64)
    qpr_arr = np.zeros(num_rounds + 1, dtype=np.int64)

    cdef cnp.int64_t[::1] disc_v = disc_v_arr
    cdef cnp.int64_t[::1] disc_r = disc_r_arr
    cdef cnp.int64_t[::1] vround = vround_arr
    cdef cnp.uint8_t[::1] seen = seen_arr
    cdef cnp.int64_t[::1] ea = ea_arr
    cdef cnp.int64_t[::1] eb = eb_arr
    cdef cnp.int64_t[::1] er = er_arr
    cdef cnp.int64_t[::1] qpr = qpr_arr

    cdef i64 nd = 0, ne = 0
    cdef i64 i, v, u, s, idx, k, deg, j, slot, lo, hi, mid, pslot
    cdef i64 snap_end, q, executed = 0
    cdef u64 draws = 0
    cdef i64 queries = 0
    cdef bint over_budget = 0

    for i in range(forced.shape[0]):
        v = forced[i]
        if vround[v] < 0:
            vround[v] = 0
            disc_v[nd] = v
            disc_r[nd] = 0
            nd += 1
    for i in range(num_seeds):
        state += GAMMA
        draws += 1
        v = draw_below(mix(state), n)
        if vround[v] < 0:
            vround[v] = 0
            disc_v[nd] = v
            disc_r[nd] = 0
            nd += 1

    for s in range(1, num_rounds + 1):
        snap_end = nd
        q = 0
        for idx in range(snap_end):
            v = disc_v[idx]
            deg = indptr[v + 1] - indptr[v]
            for k in range(queries_per_vertex):
                if query_budget >= 0 and queries + 1 > query_budget:
                    over_budget = 1
                    break
                q += 1
                queries += 1
                if deg == 0:
                    continue
                state += GAMMA
                draws += 1
                j = draw_below(mix(state), deg)
                slot = indptr[v] + j
                u = flat[slot]
                if vround[u] < 0:
                    vround[u] = s
                    disc_v[nd] = u
                    disc_r[nd] = s
                    nd += 1
                if seen[slot] == 0:
                    # locate the same edge in u's sorted neighbor block
                    lo = indptr[u]
                    hi = indptr[u + 1]
                    while lo < hi:
                        mid = (lo + hi) >> 1
                        if flat[mid] < v:
                            lo = mid + 1
                        else:
                            hi = mid
                    pslot = lo
                    seen[slot] = 1
                    seen[pslot] = 1
                    ea[ne] = v if v < u else u
                    eb[ne] = u if v < u else v
                    er[ne] = s
                    ne += 1
            if over_budget:
                break
        qpr[s] = q
        executed = s
        if over_budget:
            break

    return (
        disc_v_arr[:nd].copy(),
        disc_r_arr[:nd].copy(),
        ea_arr[:ne].copy(),
        eb_arr[:ne].copy(),
        er_arr[:ne].copy(),
        qpr_arr[: executed + 1].copy() if executed >= 0 else qpr_arr[:1].copy(),
        executed,
        draws,
        queries,
        over_budget,
    )
