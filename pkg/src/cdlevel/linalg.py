"""Exact Gaussian elimination on raw field values (see FieldDescriptor.r* ops)."""

from __future__ import annotations

from .fields import FieldDescriptor


def nullspace(F: FieldDescriptor, rows: list[list]) -> list[list]:
    """Basis of {x : rows @ x = 0} as raw-valued vectors."""
    if not rows:
        return []
    m = [list(r) for r in rows]
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not F.ris_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.rinv(m[r][c])
        m[r] = [F.rmul(x, inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and not F.ris_zero(m[i][c]):
                f = m[i][c]
                m[i] = [F.rsub(x, F.rmul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.rzero()] * ncols
        v[fc] = F.rone()
        for i, pc in enumerate(pivots):
            v[pc] = F.rneg(m[i][fc])
        basis.append(v)
    return basis


def diagonalize_symmetric(F: FieldDescriptor, gram: list[list]) -> list:
    """Diagonal entries of a form congruent to the symmetric matrix ``gram`` (char != 2)."""
    g = [list(r) for r in gram]
    n = len(g)
    diag = []
    for i in range(n):
        if F.ris_zero(g[i][i]):
            j = next((j for j in range(i + 1, n) if not F.ris_zero(g[j][j])), None)
            if j is not None:
                g[i], g[j] = g[j], g[i]
                for row in g:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((j for j in range(i + 1, n) if not F.ris_zero(g[i][j])), None)
                if j is None:
                    diag.append(F.rzero())
                    continue
                # e_i <- e_i + e_j makes the pivot 2 g_ij != 0
                for k in range(n):
                    g[i][k] = F.radd(g[i][k], g[j][k])
                for k in range(n):
                    g[k][i] = F.radd(g[k][i], g[k][j])
        piv = g[i][i]
        inv = F.rinv(piv)
        for j in range(i + 1, n):
            if F.ris_zero(g[j][i]):
                continue
            f = F.rmul(g[j][i], inv)
            for k in range(i, n):
                g[j][k] = F.rsub(g[j][k], F.rmul(f, g[i][k]))
            for k in range(i, n):
                g[k][j] = F.rsub(g[k][j], F.rmul(f, g[k][i]))
        diag.append(piv)
    return diag
