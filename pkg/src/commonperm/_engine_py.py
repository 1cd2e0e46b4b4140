"""Pure-Python search kernel. Semantics mirror ``_engine.pyx`` exactly.

A state is (i, j, S): the last aligned positions in a and b plus the set S of
aligned symbols (a Python int used as a bitset). Successors align one more
symbol at its earliest occurrence after (i, j) in both strings, which is the
dominant choice among all occurrences.

States are processed in increasing (i, j) order. Every predecessor of a state
has strictly smaller i, so when a position pair is processed all of its
states are known. Two exact prunings are applied there:

* set dominance: drop S when another state at the same pair has S' >= S;
* position dominance: drop (i, j, S) when S was already expanded at some
  (i', j') <= (i, j).

``mode`` 0 is the Common Permutation decision (prune states that can no
longer cover the alphabet); mode 1 is the longest duplicate-free common
subsequence (prune states whose optimistic bound cannot beat the incumbent).

Returns ``(status, best_state_pairs, explored, kept, peak)`` where status is
1 (goal reached / optimum found), 0 (exhausted without goal) or
-1 (budget exceeded).
"""

from __future__ import annotations

import time

MODE_CP = 0
MODE_LRCS = 1
CHECK_EVERY = 4096


def _next_table(s, k):
    n = len(s)
    table = [None] * (n + 1)
    row = [-1] * k
    table[n] = row[:]
    for p in range(n - 1, -1, -1):
        row[s[p]] = p
        table[p] = row[:]
    return table


def _suffix_sets(s):
    n = len(s)
    suf = [0] * (n + 1)
    acc = 0
    for p in range(n - 1, -1, -1):
        acc |= 1 << s[p]
        suf[p] = acc
    return suf


def search(a, b, k, mode, max_states, deadline=None):
    full = (1 << k) - 1
    next_a = _next_table(a, k)
    next_b = _next_table(b, k)
    suf_a = _suffix_sets(a)
    suf_b = _suffix_sets(b)

    st_i = [-1]
    st_j = [-1]
    st_s = [0]
    st_parent = [-1]
    kept = 1
    explored = 0
    pending = 1
    peak = 1
    buckets = [[] for _ in range(len(a) + 1)]
    buckets[0].append(0)
    seen = {}

    def trace(sid):
        out = []
        while sid > 0:
            out.append((st_i[sid], st_j[sid]))
            sid = st_parent[sid]
        out.reverse()
        return out

    if mode == MODE_CP:
        if k == 0:
            return 1, [], 0, kept, peak
        if full & ~(suf_a[0] & suf_b[0]):
            return 0, [], 0, kept, peak
        best = 0
        best_id = 0
    else:
        best = 0
        best_id = 0
        upper = (suf_a[0] & suf_b[0]).bit_count()
        if upper == 0:
            return 1, [], 0, kept, peak

    for bi in range(len(a) + 1):
        bucket = buckets[bi]
        if not bucket:
            continue
        buckets[bi] = None
        pending -= len(bucket)
        i = bi - 1
        bucket.sort(key=lambda sid: st_j[sid])  # stable: creation order within a pair
        start = 0
        while start < len(bucket):
            j = st_j[bucket[start]]
            stop = start
            while stop < len(bucket) and st_j[bucket[stop]] == j:
                stop += 1
            survivors = []
            for sid in bucket[start:stop]:
                s = st_s[sid]
                if any(s & ~t == 0 for t in (st_s[x] for x in survivors)):
                    continue
                survivors = [x for x in survivors if st_s[x] & ~s != 0]
                survivors.append(sid)
            start = stop

            avail_after = suf_a[i + 1] & suf_b[j + 1]
            for sid in survivors:
                s = st_s[sid]
                # every earlier expansion of s had i' <= i, so its smallest j decides
                prior = seen.get(s)
                if prior is not None and prior <= j:
                    continue
                seen[s] = j
                explored += 1
                if deadline is not None and explored % CHECK_EVERY == 0 and time.monotonic() > deadline:
                    return -1, trace(best_id), explored, kept, peak
                if mode == MODE_LRCS and s.bit_count() + (avail_after & ~s).bit_count() <= best:
                    continue
                row_a = next_a[i + 1]
                row_b = next_b[j + 1]
                cand = avail_after & ~s
                while cand:
                    low = cand & -cand
                    cand ^= low
                    x = low.bit_length() - 1
                    ni = row_a[x]
                    nj = row_b[x]
                    s2 = s | low
                    later = suf_a[ni + 1] & suf_b[nj + 1]
                    if mode == MODE_CP:
                        if full & ~s2 & ~later:
                            continue
                    else:
                        size = s2.bit_count()
                        if size + (later & ~s2).bit_count() <= best:
                            continue
                    nid = kept
                    st_i.append(ni)
                    st_j.append(nj)
                    st_s.append(s2)
                    st_parent.append(sid)
                    kept += 1
                    if kept > max_states:
                        return -1, trace(best_id), explored, kept, peak
                    if mode == MODE_CP:
                        if s2 == full:
                            return 1, trace(nid), explored, kept, peak
                    else:
                        if size > best:
                            best = size
                            best_id = nid
                            if best == upper:
                                return 1, trace(nid), explored, kept, peak
                    buckets[ni + 1].append(nid)
                    pending += 1
                    if pending > peak:
                        peak = pending

    if mode == MODE_CP:
        return 0, [], explored, kept, peak
    return 1, trace(best_id), explored, kept, peak
