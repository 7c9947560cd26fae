"""Dense exact linear algebra over Q(a) (Gaussian elimination)."""

from __future__ import annotations

from .algebra import ONE, ZERO, AlphaRat


def rref(rows: list[list[AlphaRat]]):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c].num), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].inverse()
        M[r] = [v * inv if v.num else v for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c].num:
                f = M[i][c]
                M[i] = [u - f * v if v.num else u for u, v in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def nullspace(rows: list[list[AlphaRat]], ncols: int) -> list[list[AlphaRat]]:
    """Basis of {v : rows v = 0}; each vector has a 1 at its free column."""
    if not rows:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(R, pivots):
            if row[f].num:
                v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows: list[list[AlphaRat]], rhs: list[AlphaRat]):
    """One solution of rows v = rhs (free variables set to zero), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    v = [ZERO] * ncols
    for row, p in zip(R, pivots):
        v[p] = row[-1]
    return v
