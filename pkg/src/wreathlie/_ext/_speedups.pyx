# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels (see ``_pure`` for the reference)."""

from libc.stdlib cimport malloc, calloc, realloc, free
from libc.string cimport memcpy, memcmp
from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING

BACKEND = "cython"


cdef inline long _mono_mul(long a, long b, long p, int nvars) nogil:
    cdef long out = 0, scale = 1, e
    cdef int i
    for i in range(nvars):
        e = a % p + b % p
        if e >= p:
            e -= p - 1
        out += e * scale
        scale *= p
        a //= p
        b //= p
    return out


def mono_index_mul(long a, long b, long p, int nvars):
    return _mono_mul(a, b, p, nvars)


def poly_mul(dict a, dict b, long p, int nvars):
    if not a or not b:
        return {}
    cdef long size = 1
    cdef int i
    for i in range(nvars):
        size *= p
    cdef Py_ssize_t na = len(a), nb = len(b), x, y
    cdef long *ai = <long *> malloc(na * sizeof(long))
    cdef long *ac = <long *> malloc(na * sizeof(long))
    cdef long *bi = <long *> malloc(nb * sizeof(long))
    cdef long *bc = <long *> malloc(nb * sizeof(long))
    cdef long *acc = <long *> calloc(size, sizeof(long))
    cdef dict out = {}
    try:
        x = 0
        for k, c in a.items():
            ai[x] = k
            ac[x] = c
            x += 1
        x = 0
        for k, c in b.items():
            bi[x] = k
            bc[x] = c
            x += 1
        with nogil:
            for x in range(na):
                for y in range(nb):
                    acc[_mono_mul(ai[x], bi[y], p, nvars)] += ac[x] * bc[y]
        for x in range(size):
            if acc[x] % p:
                out[x] = acc[x] % p
    finally:
        free(ai)
        free(ac)
        free(bi)
        free(bc)
        free(acc)
    return out


def compose(bytes u, bytes v):
    cdef Py_ssize_t d = len(u), i
    cdef const unsigned char *pu = <const unsigned char *> PyBytes_AS_STRING(u)
    cdef const unsigned char *pv = <const unsigned char *> PyBytes_AS_STRING(v)
    out = PyBytes_FromStringAndSize(NULL, d)
    cdef unsigned char *po = <unsigned char *> PyBytes_AS_STRING(out)
    for i in range(d):
        po[i] = pv[pu[i]]
    return out


cdef inline unsigned long long _hash_row(const unsigned char *row, int d) nogil:
    cdef unsigned long long h = 1469598103934665603ULL
    cdef int i
    for i in range(d):
        h ^= row[i]
        h *= 1099511628211ULL
    return h


def generate_subgroup(gens, int degree):
    """Breadth-first closure with rows kept in one C buffer and an
    open-addressing hash index over them."""
    cdef int d = degree, ng = len(gens), g, i
    cdef unsigned char *gtab = <unsigned char *> malloc(max(ng, 1) * d)
    for g in range(ng):
        memcpy(gtab + g * d, PyBytes_AS_STRING(gens[g]), d)

    cdef Py_ssize_t cap = 1024, count = 0, head = 0, j
    cdef Py_ssize_t hcap = 2048
    cdef unsigned char *rows = <unsigned char *> malloc(cap * d)
    cdef Py_ssize_t *slots = <Py_ssize_t *> malloc(hcap * sizeof(Py_ssize_t))
    cdef unsigned char *cand = <unsigned char *> malloc(d)
    cdef unsigned long long h
    cdef Py_ssize_t pos, k
    for j in range(hcap):
        slots[j] = -1

    for i in range(d):
        rows[i] = <unsigned char> i
    slots[_hash_row(rows, d) & (hcap - 1)] = 0
    count = 1

    try:
        with nogil:
            while head < count:
                for g in range(ng):
                    for i in range(d):
                        cand[i] = gtab[g * d + rows[head * d + i]]
                    h = _hash_row(cand, d)
                    pos = h & (hcap - 1)
                    while slots[pos] != -1:
                        if memcmp(rows + slots[pos] * d, cand, d) == 0:
                            break
                        pos = (pos + 1) & (hcap - 1)
                    if slots[pos] != -1:
                        continue
                    if count == cap:
                        cap *= 2
                        rows = <unsigned char *> realloc(rows, cap * d)
                    memcpy(rows + count * d, cand, d)
                    slots[pos] = count
                    count += 1
                    if 2 * count > hcap:
                        free(slots)
                        hcap *= 4
                        slots = <Py_ssize_t *> malloc(hcap * sizeof(Py_ssize_t))
                        for j in range(hcap):
                            slots[j] = -1
                        for k in range(count):
                            pos = _hash_row(rows + k * d, d) & (hcap - 1)
                            while slots[pos] != -1:
                                pos = (pos + 1) & (hcap - 1)
                            slots[pos] = k
                head += 1
        return {PyBytes_FromStringAndSize(<char *> rows + k * d, d) for k in range(count)}
    finally:
        free(gtab)
        free(rows)
        free(slots)
        free(cand)
