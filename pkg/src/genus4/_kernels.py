"""Compiled inner loops for the exhaustive double-cover searches.

All field arithmetic goes through lookup tables so the same kernel serves
prime and prime-power fields.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def double_cover_shard(add, mul, cnt, V, D, QA, QB, has_q, base, top, c1,
                       thr, optimistic, serre, out_coeffs, out_counts):
    """Scan all f = top*b0 + c1*b1 + sum_{j>=2} c_j b_j over c_j in F_q.

    V[j, i], D[j, i]: value and first-order coefficient of basis j at the
    ordinary point i.  QA/QB: the t^2 and t^3 coefficients at the marked
    point.  Emits (coefficients, count) whenever count > thr, skipping
    candidates already known not to give a genus-4 curve.

    Returns (emitted, overflow, counted, pruned).
    """
    nb, npts = V.shape
    q = add.shape[0]
    cap = out_counts.shape[0]
    # partial sums for levels 2..nb-1; level k holds sum_{j<k} c_j b_j
    S = np.zeros((nb + 1, npts), dtype=np.int32)
    SD = np.zeros((nb + 1, npts), dtype=np.int32)
    SA = np.zeros(nb + 1, dtype=np.int32)
    SB = np.zeros(nb + 1, dtype=np.int32)
    for i in range(npts):
        v = mul[top, V[0, i]]
        S[2, i] = add[v, mul[c1, V[1, i]]]
        d = mul[top, D[0, i]]
        SD[2, i] = add[d, mul[c1, D[1, i]]]
    SA[2] = add[mul[top, QA[0]], mul[c1, QA[1]]]
    SB[2] = add[mul[top, QB[0]], mul[c1, QB[1]]]

    coeffs = np.zeros(nb, dtype=np.int32)
    coeffs[0] = top
    coeffs[1] = c1
    emitted = 0
    overflow = False
    counted = 0
    pruned = 0
    last = nb - 1
    # odometer over c_2 .. c_{nb-2}; innermost c_{nb-1} handled inline
    digits = np.zeros(nb, dtype=np.int32)
    level = 2
    while True:
        # refresh partial sums from `level` down to the innermost level
        for k in range(level, last):
            c = digits[k]
            for i in range(npts):
                S[k + 1, i] = add[S[k, i], mul[c, V[k, i]]]
                SD[k + 1, i] = add[SD[k, i], mul[c, D[k, i]]]
            SA[k + 1] = add[SA[k], mul[c, QA[k]]]
            SB[k + 1] = add[SB[k], mul[c, QB[k]]]
        for c in range(q):
            counted += 1
            count = base
            if has_q:
                qa = add[SA[last], mul[c, QA[last]]]
                if qa != 0:
                    count += cnt[qa]
                else:
                    qb = add[SB[last], mul[c, QB[last]]]
                    if qb == 0:
                        continue
                    count += 1
            remaining = npts
            ok = True
            for i in range(npts):
                val = add[S[last, i], mul[c, V[last, i]]]
                remaining -= 1
                if val == 0:
                    if add[SD[last, i], mul[c, D[last, i]]] == 0:
                        ok = False
                        break
                    count += 1
                else:
                    count += cnt[val]
                if count + 2 * remaining <= thr:
                    ok = False
                    pruned += 1
                    break
            if not ok or count > serre or count <= thr:
                continue
            if emitted < cap:
                for k in range(2, last):
                    coeffs[k] = digits[k]
                coeffs[last] = c
                for k in range(nb):
                    out_coeffs[emitted, k] = coeffs[k]
                out_counts[emitted] = count
                emitted += 1
            else:
                overflow = True
            if optimistic:
                thr = count
        # advance the odometer over levels 2 .. last-1
        k = last - 1
        while k >= 2 and digits[k] == q - 1:
            digits[k] = 0
            k -= 1
        if k < 2:
            break
        digits[k] += 1
        level = k
    return emitted, overflow, counted, pruned


def empty_buffers(nb: int, cap: int):
    return np.zeros((cap, nb), dtype=np.int32), np.zeros(cap, dtype=np.int32)
