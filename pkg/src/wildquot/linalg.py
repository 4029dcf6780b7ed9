"""Exact linear algebra: over finite fields (integer codes) and over Q."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def rref(F, rows):
    """Reduced row echelon form over ``F``; returns (rows, pivot_columns).

    Pivots are taken as the first nonzero entry in column order, scanning
    rows top to bottom, so the result is deterministic.
    """
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        s = inv(M[r][c])
        row = [mul(s, x) if x else 0 for x in M[r]]
        M[r] = row
        nz = [j for j in range(c, ncols) if row[j]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = neg(M[i][c])
                Mi = M[i]
                for j in nz:
                    Mi[j] = add(Mi[j], mul(f, row[j]))
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F, rows) -> int:
    return len(rref(F, rows)[1])


def nullspace(F, rows, ncols: int | None = None) -> list[list[int]]:
    """Basis of {v : A v = 0}, one vector per free column, free entry set to 1."""
    if ncols is None:
        ncols = len(rows[0])
    R, pivots = rref(F, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, pivots):
            if row[f]:
                v[pc] = F.neg(row[f])
        basis.append(v)
    return basis


def solve(F, A, b):
    """One solution of A x = b, or None when inconsistent."""
    ncols = len(A[0])
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, pivots = rref(F, aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


def matmul(F, A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                Oi = out[i]
                for j in range(m):
                    if Bt[j]:
                        Oi[j] = F.add(Oi[j], F.mul(a, Bt[j]))
    return out


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def kron(F, A, B):
    out = []
    for a_row in A:
        for b_row in B:
            out.append([F.mul(a, b) for a in a_row for b in b_row])
    return out


# ---------------------------------------------------------------------------
# prime fields, vectorised


def rank_mod_p(A, p: int) -> int:
    """Rank of an integer matrix over F_p by forward elimination in numpy."""
    M = np.array(A, dtype=np.int64) % p
    r = 0
    while M.size:
        nz = np.nonzero(M[:, 0])[0]
        if nz.size == 0:
            M = M[:, 1:]
            continue
        piv = nz[0]
        row = (M[piv, 1:] * pow(int(M[piv, 0]), p - 2, p)) % p
        rest = np.delete(M, piv, axis=0)
        M = (rest[:, 1:] - np.outer(rest[:, 0], row)) % p
        r += 1
    return r


def matmul_mod_p(A, B, p: int):
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p


# ---------------------------------------------------------------------------
# rational matrices (sparse rows), used for intersection forms


def _sparse(M):
    return [{j: Fraction(x) for j, x in enumerate(row) if x} for row in M]


def leading_pivots(M) -> list[Fraction]:
    """Pivots of Gaussian elimination without row exchanges.

    The k-th leading principal minor is the product of the first k pivots.
    A zero pivot stops the elimination and is returned as the last entry.
    """
    rows = _sparse(M)
    n = len(rows)
    pivots = []
    for k in range(n):
        piv = rows[k].get(k, Fraction(0))
        pivots.append(piv)
        if piv == 0:
            break
        rk = rows[k]
        for i in range(k + 1, n):
            f = rows[i].get(k)
            if not f:
                continue
            f = f / piv
            ri = rows[i]
            for j, x in rk.items():
                if j < k:
                    continue
                v = ri.get(j, 0) - f * x
                if v:
                    ri[j] = v
                else:
                    ri.pop(j, None)
    return pivots


def is_negative_definite(M) -> bool:
    """Sylvester's criterion: leading principal minors alternate in sign, starting negative."""
    piv = leading_pivots(M)
    return len(piv) == len(M) and all(x < 0 for x in piv)


def leading_minors(M) -> list[Fraction]:
    out, acc = [], Fraction(1)
    for x in leading_pivots(M):
        acc *= x
        out.append(acc)
    return out


def solve_rational(M, b) -> list[Fraction]:
    """Exact solution of M x = b for invertible rational M."""
    n = len(M)
    rows = _sparse(M)
    rhs = [Fraction(x) for x in b]
    for k in range(n):
        piv_row = next((i for i in range(k, n) if rows[i].get(k)), None)
        if piv_row is None:
            raise ZeroDivisionError("singular matrix")
        rows[k], rows[piv_row] = rows[piv_row], rows[k]
        rhs[k], rhs[piv_row] = rhs[piv_row], rhs[k]
        piv = rows[k][k]
        rk = rows[k]
        for i in range(n):
            if i == k:
                continue
            f = rows[i].get(k)
            if not f:
                continue
            f = f / piv
            ri = rows[i]
            for j, x in rk.items():
                v = ri.get(j, 0) - f * x
                if v:
                    ri[j] = v
                else:
                    ri.pop(j, None)
            rhs[i] -= f * rhs[k]
    return [rhs[k] / rows[k][k] for k in range(n)]


def rational_rank(M) -> int:
    rows = _sparse(M)
    n = len(rows)
    ncols = len(M[0]) if M else 0
    r = 0
    for c in range(ncols):
        piv_row = next((i for i in range(r, n) if rows[i].get(c)), None)
        if piv_row is None:
            continue
        rows[r], rows[piv_row] = rows[piv_row], rows[r]
        rr = rows[r]
        for i in range(r + 1, n):
            f = rows[i].get(c)
            if not f:
                continue
            f = f / rr[c]
            ri = rows[i]
            for j, x in rr.items():
                v = ri.get(j, 0) - f * x
                if v:
                    ri[j] = v
                else:
                    ri.pop(j, None)
        r += 1
    return r
