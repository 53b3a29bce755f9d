# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop for the stabilizer double sum.

For every pair (a, b) with a a row of A and b a row of B, forms the
composition t[x] = a[b[x]], takes its cycle type, and increments the count
bucket for that type.  Buckets are addressed by a radix key (sorted cycle
lengths folded base degree+1) binary-searched in a sorted key table.
"""
from libc.string cimport memset


def count_pairs(const unsigned char[:, ::1] A, const unsigned char[:, ::1] B,
                const unsigned long long[::1] keys, long long[::1] counts):
    """Accumulate cycle-type counts of a∘b over all row pairs into ``counts``."""
    cdef Py_ssize_t na = A.shape[0], nb = B.shape[0], p = A.shape[1]
    cdef Py_ssize_t i, j, x, start, nkeys = keys.shape[0]
    cdef unsigned char t[256]
    cdef unsigned char seen[256]
    cdef Py_ssize_t lens[256]
    cdef Py_ssize_t ncyc, ln, k, pos
    cdef unsigned long long key, base = <unsigned long long> (p + 1)
    cdef Py_ssize_t lo, hi, mid

    if p == 0:
        counts[0] += na * nb
        return

    with nogil:
        for i in range(na):
            for j in range(nb):
                for x in range(p):
                    t[x] = A[i, B[j, x]]
                memset(seen, 0, p)
                ncyc = 0
                for start in range(p):
                    if seen[start]:
                        continue
                    ln = 0
                    x = start
                    while not seen[x]:
                        seen[x] = 1
                        x = t[x]
                        ln += 1
                    # insertion sort, descending
                    pos = ncyc
                    while pos > 0 and lens[pos - 1] < ln:
                        lens[pos] = lens[pos - 1]
                        pos -= 1
                    lens[pos] = ln
                    ncyc += 1
                key = 0
                for k in range(ncyc):
                    key = key * base + <unsigned long long> lens[k]
                lo = 0
                hi = nkeys - 1
                while lo < hi:
                    mid = (lo + hi) >> 1
                    if keys[mid] < key:
                        lo = mid + 1
                    else:
                        hi = mid
                counts[lo] += 1
