# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p matrix kernels.

Same interface as leibalg._kernels_py; selected at import by leibalg._backend.
Entries are canonical residues in [0, p) with p < 2**20, so all intermediate
products fit comfortably in int64.
"""

from libc.stdlib cimport free, malloc

BACKEND_NAME = "cython"


cdef long long inv_mod(long long a, long long p):
    # extended Euclid; a is nonzero mod p
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod(int nrows, int ncols, data, long long p):
    """Reduced row echelon form of a flat row-major matrix mod p."""
    cdef int total = nrows * ncols
    cdef long long *m = <long long *> malloc(total * sizeof(long long)) if total else NULL
    cdef int i, j, c, r, pr
    cdef long long piv, inv, f, tmp
    pivots = []
    try:
        for i in range(total):
            m[i] = data[i]
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            pr = -1
            for i in range(r, nrows):
                if m[i * ncols + c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(c, ncols):
                    tmp = m[r * ncols + j]
                    m[r * ncols + j] = m[pr * ncols + j]
                    m[pr * ncols + j] = tmp
            piv = m[r * ncols + c]
            if piv != 1:
                inv = inv_mod(piv, p)
                for j in range(c, ncols):
                    m[r * ncols + j] = m[r * ncols + j] * inv % p
            for i in range(nrows):
                if i == r:
                    continue
                f = m[i * ncols + c]
                if f != 0:
                    for j in range(c, ncols):
                        m[i * ncols + j] = (m[i * ncols + j] - f * m[r * ncols + j]) % p
                        if m[i * ncols + j] < 0:
                            m[i * ncols + j] += p
            pivots.append(c)
            r += 1
        out = [m[i] for i in range(total)]
    finally:
        if m != NULL:
            free(m)
    return out, pivots


def matmul_mod(int n, int k, int mm, a, b, long long p):
    """Flat row-major product of an (n x k) and a (k x mm) matrix mod p."""
    cdef long long *ca = <long long *> malloc(n * k * sizeof(long long)) if n * k else NULL
    cdef long long *cb = <long long *> malloc(k * mm * sizeof(long long)) if k * mm else NULL
    cdef long long *co = <long long *> malloc(n * mm * sizeof(long long)) if n * mm else NULL
    cdef int i, j, t
    cdef long long av
    try:
        for i in range(n * k):
            ca[i] = a[i]
        for i in range(k * mm):
            cb[i] = b[i]
        for i in range(n * mm):
            co[i] = 0
        for i in range(n):
            for t in range(k):
                av = ca[i * k + t]
                if av != 0:
                    for j in range(mm):
                        co[i * mm + j] = (co[i * mm + j] + av * cb[t * mm + j]) % p
        out = [co[i] for i in range(n * mm)]
    finally:
        if ca != NULL:
            free(ca)
        if cb != NULL:
            free(cb)
        if co != NULL:
            free(co)
    return out
