# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; semantics match ``_pykernels`` exactly."""

from libc.stdint cimport int32_t, int64_t, uint64_t

cdef enum:
    FOUND = 0
    EXHAUSTED = 1
    BUDGET = 2


cdef inline bint _satisfied(Py_ssize_t c, int32_t[::1] colors,
                            const int32_t[::1] ball_ptr, const int32_t[::1] ball_idx,
                            const int32_t[::1] cand_ptr, const int32_t[::1] cand_idx) nogil:
    cdef uint64_t acc = <uint64_t>-1
    cdef uint64_t mask
    cdef Py_ssize_t p, q
    cdef int32_t f
    for p in range(cand_ptr[c], cand_ptr[c + 1]):
        f = cand_idx[p]
        mask = 0
        for q in range(ball_ptr[f], ball_ptr[f + 1]):
            mask |= (<uint64_t>1) << colors[ball_idx[q]]
        acc &= mask
        if acc == 0:
            return False
    return True


def search_bad_coloring(Py_ssize_t n_elems, int r,
                        const int32_t[::1] ball_ptr, const int32_t[::1] ball_idx,
                        const int32_t[::1] cand_ptr, const int32_t[::1] cand_idx,
                        const int32_t[::1] trig_ptr, const int32_t[::1] trig_cand,
                        int64_t budget, prefix=()):
    if n_elems == 0:
        return FOUND, [], 0
    if r > 64:
        raise ValueError("at most 64 colors supported")
    import numpy as np
    cdef int32_t[::1] colors = np.full(n_elems, -1, dtype=np.int32)
    cdef int32_t[::1] prevmax = np.full(n_elems + 1, -1, dtype=np.int32)
    cdef int64_t nodes = 0
    cdef Py_ssize_t e = 0, p, fixed = len(prefix)
    cdef int32_t c, limit
    cdef bint dead
    cdef int status
    for e in range(fixed):
        colors[e] = prefix[e]
        prevmax[e + 1] = prevmax[e] if prevmax[e] > colors[e] else colors[e]
        for p in range(trig_ptr[e], trig_ptr[e + 1]):
            if _satisfied(trig_cand[p], colors, ball_ptr, ball_idx, cand_ptr, cand_idx):
                return EXHAUSTED, None, nodes
    if fixed == n_elems:
        return FOUND, [int(x) for x in colors], nodes
    e = fixed
    with nogil:
        while True:
            c = colors[e] + 1
            limit = prevmax[e] + 1
            if limit > r - 1:
                limit = r - 1
            if c > limit:
                colors[e] = -1
                e -= 1
                if e < fixed:
                    status = EXHAUSTED
                    break
                continue
            colors[e] = c
            nodes += 1
            if budget and nodes > budget:
                status = BUDGET
                break
            dead = False
            for p in range(trig_ptr[e], trig_ptr[e + 1]):
                if _satisfied(trig_cand[p], colors, ball_ptr, ball_idx, cand_ptr, cand_idx):
                    dead = True
                    break
            if dead:
                continue
            if e == n_elems - 1:
                status = FOUND
                break
            prevmax[e + 1] = prevmax[e] if prevmax[e] > c else c
            e += 1
            colors[e] = -1
    if status == FOUND:
        return FOUND, [int(x) for x in colors], nodes
    return status, None, nodes


def first_satisfied(const int32_t[::1] colors_in,
                    const int32_t[::1] ball_ptr, const int32_t[::1] ball_idx,
                    const int32_t[::1] cand_ptr, const int32_t[::1] cand_idx):
    import numpy as np
    cdef int32_t[::1] colors = np.array(colors_in, dtype=np.int32)
    cdef Py_ssize_t c, ncand = cand_ptr.shape[0] - 1
    for c in range(ncand):
        if _satisfied(c, colors, ball_ptr, ball_idx, cand_ptr, cand_idx):
            return c
    return -1
