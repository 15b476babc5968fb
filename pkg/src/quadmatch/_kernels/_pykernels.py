"""Pure numpy versions of the compiled kernels, same signatures and results."""

import numpy as np


def rotation_scores(sym, weights, nrot):
    sym = np.asarray(sym, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.float64)
    m = sym.shape[0]
    n = weights.shape[1]
    if n == 0:
        return np.zeros(nrot)
    if n > m:
        return np.full(nrot, -np.inf)
    # rotated[k, j, r] = weights[k, (r + j) % n]
    idx = (np.arange(n)[:, None] + np.arange(nrot)[None, :]) % n
    rotated = weights[:, idx]
    table = np.full((n + 1, nrot), -np.inf)
    table[0] = 0.0
    for i in range(m):
        jhi = min(i + 1, n)
        jlo = max(1, n - (m - 1 - i))
        cand = table[jlo - 1:jhi] + rotated[sym[i], jlo - 1:jhi]
        np.maximum(table[jlo:jhi + 1], cand, out=table[jlo:jhi + 1])
    return table[n].copy()


def suffix_table(sym, weights):
    sym = np.asarray(sym, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.float64)
    m = sym.shape[0]
    n = weights.shape[1]
    table = np.full((m + 1, n + 1), -np.inf)
    table[:, n] = 0.0
    for i in range(m - 1, -1, -1):
        np.maximum(table[i + 1, :n], weights[sym[i]] + table[i + 1, 1:], out=table[i, :n])
    return table
