# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table kernels with the same signatures as _pykernels."""

from libc.stdlib cimport malloc, free


def minor_index(int a, tuple values, int k):
    cdef int n = len(values)
    cdef long total = 1
    cdef int i, j
    cdef long p
    for i in range(k):
        total *= a
    cdef long *weights = <long *> malloc(k * sizeof(long))
    cdef int *digits = <int *> malloc((k + 1) * sizeof(int))
    try:
        for j in range(k):
            weights[j] = 0
            digits[j] = 0
        p = 1
        for i in range(n - 1, -1, -1):
            weights[<int> values[i]] += p
            p *= a
        out = [0] * total
        cdef_fill(out, weights, digits, k, a, total)
        return out
    finally:
        free(weights)
        free(digits)


cdef void cdef_fill(list out, long *weights, int *digits, int k, int a, long total):
    cdef long pos = 0
    cdef long t
    cdef int j
    for t in range(total):
        out[t] = pos
        j = k - 1
        while j >= 0:
            digits[j] += 1
            pos += weights[j]
            if digits[j] < a:
                break
            pos -= weights[j] * a
            digits[j] = 0
            j -= 1


def apply_index(bytes table, list idx):
    cdef Py_ssize_t L = len(idx)
    cdef bytearray out = bytearray(L)
    cdef const unsigned char[:] t = table
    cdef Py_ssize_t i
    for i in range(L):
        out[i] = t[<Py_ssize_t> idx[i]]
    return bytes(out)


cdef int _preserves(const unsigned char[:] table, int a, int n, const unsigned char[:] rel,
                    int y, int m, const unsigned char[:] mask, int b, int *choice, long *place) nogil:
    cdef int i, r
    cdef long pos, code
    for i in range(n):
        choice[i] = 0
    while True:
        code = 0
        for r in range(y):
            pos = 0
            for i in range(n):
                pos += rel[choice[i] * y + r] * place[i]
            code = code * b + table[pos]
        if not mask[code]:
            return 0
        i = n - 1
        while i >= 0:
            choice[i] += 1
            if choice[i] < m:
                break
            choice[i] = 0
            i -= 1
        if i < 0:
            return 1


def preserves(bytes table, int a, int n, bytes rel, int y, int m, bytes mask, int b, long budget):
    if m == 0:
        return 1
    if (<double> m) ** n > budget:
        return -1
    cdef int *choice = <int *> malloc(n * sizeof(int))
    cdef long *place = <long *> malloc(n * sizeof(long))
    cdef int i
    cdef long p = 1
    try:
        for i in range(n - 1, -1, -1):
            place[i] = p
            p *= a
        return _preserves(table, a, n, rel, y, m, mask, b, choice, place)
    finally:
        free(choice)
        free(place)


def pol_tables(int a, int b, int n, list rels, long budget):
    cdef long size = 1
    cdef int i, j, r
    for i in range(n):
        size *= a
    cdef int nrel = len(rels)
    for rel in rels:
        if rel[2] > 0 and (<double> rel[2]) ** n > budget:
            raise OverflowError("column budget exceeded")
    cdef bytearray buf = bytearray(size)
    cdef unsigned char[:] t = buf
    cdef int *choice = <int *> malloc(n * sizeof(int))
    cdef long *place = <long *> malloc(n * sizeof(long))
    cdef long p = 1
    out = []
    cdef const unsigned char[:] relv
    cdef const unsigned char[:] maskv
    try:
        for i in range(n - 1, -1, -1):
            place[i] = p
            p *= a
        while True:
            ok = True
            for j in range(nrel):
                rel, y, m, mask = rels[j]
                if m == 0:
                    continue
                relv = rel
                maskv = mask
                if not _preserves(t, a, n, relv, y, m, maskv, b, choice, place):
                    ok = False
                    break
            if ok:
                out.append(bytes(buf))
            i = size - 1
            while i >= 0:
                t[i] += 1
                if t[i] < b:
                    break
                t[i] = 0
                i -= 1
            if i < 0:
                break
        return out
    finally:
        free(choice)
        free(place)
