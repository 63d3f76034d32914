"""Pure Python mod-p matrix kernels.

Fallback implementation of the interface in leibalg._speedups.  Matrices are
flat row-major lists of canonical residues (ints in [0, p)).  Both backends
must stay observationally identical; tests compare them entry for entry.
"""

from __future__ import annotations

BACKEND_NAME = "python"


def rref_mod(nrows, ncols, data, p):
    """Reduced row echelon form of a flat row-major matrix mod p.

    Returns (reduced, pivots): the reduced flat matrix (zero rows sink to the
    bottom) and the pivot column of each nonzero row, in order.
    """
    m = list(data)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if m[i * ncols + c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            # rows at or below r are zero left of column c, swap the tails
            for j in range(c, ncols):
                m[r * ncols + j], m[pr * ncols + j] = m[pr * ncols + j], m[r * ncols + j]
        piv = m[r * ncols + c]
        if piv != 1:
            inv = pow(piv, p - 2, p)
            for j in range(c, ncols):
                m[r * ncols + j] = m[r * ncols + j] * inv % p
        for i in range(nrows):
            if i == r:
                continue
            f = m[i * ncols + c]
            if f:
                for j in range(c, ncols):
                    m[i * ncols + j] = (m[i * ncols + j] - f * m[r * ncols + j]) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def matmul_mod(n, k, m, a, b, p):
    """Flat row-major product of an (n x k) and a (k x m) matrix mod p."""
    out = [0] * (n * m)
    for i in range(n):
        ai = i * k
        oi = i * m
        for t in range(k):
            av = a[ai + t]
            if av:
                bt = t * m
                for j in range(m):
                    out[oi + j] = (out[oi + j] + av * b[bt + j]) % p
    return out
