"""Exact Gaussian elimination over a field (QQ or GF(p))."""

from __future__ import annotations


def rref(rows, ring):
    """Reduced row echelon form.  Returns ``(matrix, pivot_columns)``."""
    m = [[ring(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = ring.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows, ncols, ring):
    """Basis of ``{x : rows @ x = 0}``, one vector per free column (ascending).

    Each basis vector has a 1 in its free column; the order is deterministic.
    """
    if not rows:
        basis = []
        for j in range(ncols):
            v = [ring.zero] * ncols
            v[j] = ring.one
            basis.append(v)
        return basis
    m, pivots = rref(rows, ring)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ring.zero] * ncols
        v[f] = ring.one
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis
