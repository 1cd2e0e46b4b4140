# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled search kernel; see ``_engine_py`` for the algorithm.

Symbol sets are fixed-width arrays of 64-bit words, so alphabets of any
size are supported. Results, including witness and counters, are identical
to the pure-Python kernel.
"""

import time

from libc.stdint cimport uint64_t, int64_t
from libcpp.algorithm cimport sort
from libcpp.pair cimport pair
from libcpp.string cimport string
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef int CHECK_EVERY = 4096


cdef inline int popcount(const uint64_t* s, int w) noexcept nogil:
    cdef int c = 0, t
    for t in range(w):
        c += __builtin_popcountll(s[t])
    return c


cdef inline bint is_subset(const uint64_t* s, const uint64_t* t, int w) noexcept nogil:
    cdef int q
    for q in range(w):
        if s[q] & ~t[q]:
            return False
    return True


cdef void build_tables(list seq, int k, int w, vector[int]& nxt, vector[uint64_t]& suf):
    cdef int n = len(seq)
    cdef int p, x, q
    nxt.assign((n + 1) * k, -1)
    suf.assign((n + 1) * w, 0)
    for p in range(n - 1, -1, -1):
        for x in range(k):
            nxt[p * k + x] = nxt[(p + 1) * k + x]
        for q in range(w):
            suf[p * w + q] = suf[(p + 1) * w + q]
        x = seq[p]
        nxt[p * k + x] = p
        suf[p * w + (x >> 6)] |= (<uint64_t>1) << (x & 63)


cdef list trace(vector[int]& st_i, vector[int]& st_j, vector[int]& st_parent, int sid):
    out = []
    while sid > 0:
        out.append((st_i[sid], st_j[sid]))
        sid = st_parent[sid]
    out.reverse()
    return out


def search(a, b, int k, int mode, int64_t max_states, deadline=None):
    cdef list la = list(a), lb = list(b)
    cdef int n = len(la), m = len(lb)
    cdef int w = (k + 63) // 64 if k > 0 else 1
    cdef vector[int] next_a, next_b
    cdef vector[uint64_t] suf_a, suf_b
    build_tables(la, k, w, next_a, suf_a)
    build_tables(lb, k, w, next_b, suf_b)

    cdef vector[uint64_t] full
    full.assign(w, 0)
    cdef int x, q
    for x in range(k):
        full[x >> 6] |= (<uint64_t>1) << (x & 63)

    cdef vector[int] st_i, st_j, st_parent
    cdef vector[uint64_t] st_s
    st_i.push_back(-1)
    st_j.push_back(-1)
    st_parent.push_back(-1)
    for q in range(w):
        st_s.push_back(0)
    cdef int64_t kept = 1, explored = 0, pending = 1, peak = 1
    cdef vector[vector[int]] buckets
    buckets.resize(n + 1)
    buckets[0].push_back(0)
    cdef unordered_map[string, int] seen
    cdef unordered_map[string, int].iterator it

    cdef int best = 0, best_id = 0, upper = 0, size, upper_here
    cdef vector[uint64_t] avail, later, cur, nxt_s
    avail.assign(w, 0)
    later.assign(w, 0)
    cdef uint64_t bad, c, low
    cdef bint has_deadline = deadline is not None
    cdef double dl = float(deadline) if has_deadline else 0.0

    if mode == 0:
        if k == 0:
            return 1, [], 0, kept, peak
        for q in range(w):
            if full[q] & ~(suf_a[q] & suf_b[q]):
                return 0, [], 0, kept, peak
    else:
        for q in range(w):
            upper += __builtin_popcountll(suf_a[q] & suf_b[q])
        if upper == 0:
            return 1, [], 0, kept, peak

    cdef vector[pair[int, int]] order
    cdef vector[int] survivors, kept_surv
    cdef int bi, i, j, start, stop, sid, nid, t, ni, nj, r
    cdef bint dominated
    cdef string key

    for bi in range(n + 1):
        if buckets[bi].empty():
            continue
        i = bi - 1
        pending -= buckets[bi].size()
        order.clear()
        for r in range(<int>buckets[bi].size()):
            sid = buckets[bi][r]
            order.push_back(pair[int, int](st_j[sid], sid))
        vector[int]().swap(buckets[bi])
        # sids grow with creation, so sorting on (j, sid) is a stable sort on j
        sort(order.begin(), order.end())
        start = 0
        while start < <int>order.size():
            j = order[start].first
            stop = start
            while stop < <int>order.size() and order[stop].first == j:
                stop += 1
            survivors.clear()
            for r in range(start, stop):
                sid = order[r].second
                dominated = False
                for t in range(<int>survivors.size()):
                    if is_subset(&st_s[sid * w], &st_s[survivors[t] * w], w):
                        dominated = True
                        break
                if dominated:
                    continue
                kept_surv.clear()
                for t in range(<int>survivors.size()):
                    if not is_subset(&st_s[survivors[t] * w], &st_s[sid * w], w):
                        kept_surv.push_back(survivors[t])
                kept_surv.push_back(sid)
                survivors.swap(kept_surv)
            start = stop

            for q in range(w):
                avail[q] = suf_a[(i + 1) * w + q] & suf_b[(j + 1) * w + q]
            for r in range(<int>survivors.size()):
                sid = survivors[r]
                cur.assign(&st_s[sid * w], &st_s[sid * w] + w)
                key = string(<char*>&cur[0], w * 8)
                it = seen.find(key)
                if it != seen.end() and deref(it).second <= j:
                    continue
                seen[key] = j
                explored += 1
                if has_deadline and explored % CHECK_EVERY == 0 and time.monotonic() > dl:
                    return -1, trace(st_i, st_j, st_parent, best_id), explored, kept, peak
                if mode == 1:
                    size = popcount(&cur[0], w)
                    for q in range(w):
                        size += __builtin_popcountll(avail[q] & ~cur[q])
                    if size <= best:
                        continue
                for q in range(w):
                    c = avail[q] & ~cur[q]
                    while c:
                        low = c & (~c + 1)
                        c ^= low
                        x = q * 64 + __builtin_ctzll(low)
                        ni = next_a[(i + 1) * k + x]
                        nj = next_b[(j + 1) * k + x]
                        nxt_s.assign(cur.begin(), cur.end())
                        nxt_s[q] |= low
                        if mode == 0:
                            bad = 0
                            for t in range(w):
                                bad |= full[t] & ~nxt_s[t] & ~(suf_a[(ni + 1) * w + t] & suf_b[(nj + 1) * w + t])
                            if bad:
                                continue
                        else:
                            size = popcount(&nxt_s[0], w)
                            upper_here = size
                            for t in range(w):
                                upper_here += __builtin_popcountll(
                                    suf_a[(ni + 1) * w + t] & suf_b[(nj + 1) * w + t] & ~nxt_s[t])
                            if upper_here <= best:
                                continue
                        nid = <int>kept
                        st_i.push_back(ni)
                        st_j.push_back(nj)
                        st_parent.push_back(sid)
                        for t in range(w):
                            st_s.push_back(nxt_s[t])
                        kept += 1
                        if kept > max_states:
                            return -1, trace(st_i, st_j, st_parent, best_id), explored, kept, peak
                        if mode == 0:
                            bad = 0
                            for t in range(w):
                                bad |= full[t] ^ nxt_s[t]
                            if not bad:
                                return 1, trace(st_i, st_j, st_parent, nid), explored, kept, peak
                        elif size > best:
                            best = size
                            best_id = nid
                            if best == upper:
                                return 1, trace(st_i, st_j, st_parent, nid), explored, kept, peak
                        buckets[ni + 1].push_back(nid)
                        pending += 1
                        if pending > peak:
                            peak = pending

    if mode == 0:
        return 0, [], explored, kept, peak
    return 1, trace(st_i, st_j, st_parent, best_id), explored, kept, peak
