# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dynamic-programming kernels for the weighted alignment.

Weights are float64 holding exact integers or -inf; IEEE arithmetic gives the
saturating -inf semantics for free, so no -ffast-math here.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef double NEG_INF = float("-inf")


def rotation_scores(const cnp.int64_t[::1] sym, const double[:, ::1] weights, Py_ssize_t nrot):
    """Best utility of aligning ``sym`` with every rotation ``0..nrot-1`` of the triples.

    ``weights[k, j]`` is the weight of symbol class ``k`` against triple ``j``.
    """
    cdef Py_ssize_t m = sym.shape[0]
    cdef Py_ssize_t n = weights.shape[1]
    cdef Py_ssize_t i, j, r, k, jlo, jhi
    cdef double c
    cdef double *row
    cdef double *prev
    cdef const double *wk
    if n == 0:
        return np.zeros(nrot)
    if n > m:
        return np.full(nrot, NEG_INF)

    cdef double[:, ::1] doubled = np.ascontiguousarray(np.concatenate([weights, weights], axis=1))
    cdef double[:, ::1] table = np.full((n + 1, nrot), NEG_INF)
    table[0, :] = 0.0

    with nogil:
        for i in range(m):
            k = sym[i]
            jhi = i + 1 if i + 1 < n else n
            jlo = n - (m - 1 - i)
            if jlo < 1:
                jlo = 1
            for j in range(jhi, jlo - 1, -1):
                row = &table[j, 0]
                prev = &table[j - 1, 0]
                wk = &doubled[k, j - 1]
                for r in range(nrot):
                    c = prev[r] + wk[r]
                    row[r] = c if c > row[r] else row[r]
    return np.asarray(table[n]).copy()


def suffix_table(const cnp.int64_t[::1] sym, const double[:, ::1] weights):
    """Table ``E[i, j]``: best utility matching triples ``j:`` into symbols ``i:``."""
    cdef Py_ssize_t m = sym.shape[0]
    cdef Py_ssize_t n = weights.shape[1]
    cdef Py_ssize_t i, j
    cdef double c, skip
    cdef double[:, ::1] table = np.full((m + 1, n + 1), NEG_INF)
    with nogil:
        for i in range(m, -1, -1):
            table[i, n] = 0.0
            if i == m:
                continue
            for j in range(n - 1, -1, -1):
                skip = table[i + 1, j]
                c = weights[sym[i], j] + table[i + 1, j + 1]
                table[i, j] = c if c > skip else skip
    return np.asarray(table)
