"""Tensor products of unipotent Jordan blocks and fixed spaces of invariant differentials."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .curve import CurveSpec, block_slices, differential_action
from .gf import is_prime
from .linalg import nullspace, rank_mod_p


@dataclass(frozen=True)
class NilpotentSpectrum:
    """Multiplicities lambda_r in J_d(1) (x) J_d'(1) = sum_r J_r(1)^lambda_r."""

    d: int
    d_prime: int
    p: int
    multiplicities: dict  # r -> lambda_r, only r with lambda_r > 0
    rank_ladder: tuple  # rank N^k for k = 0, 1, ...

    @property
    def block_count(self) -> int:
        return sum(self.multiplicities.values())

    @property
    def total_size(self) -> int:
        return sum(r * m for r, m in self.multiplicities.items())


def jordan_block(d: int) -> np.ndarray:
    """Lower triangular unipotent Jordan block J_d(1)."""
    return np.eye(d, dtype=np.int64) + np.eye(d, k=-1, dtype=np.int64)


def jordan_tensor(d: int, d_prime: int, p: int) -> NilpotentSpectrum:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not (1 <= d <= p and 1 <= d_prime <= p):
        raise ValueError("block sizes must lie in 1..p")
    n = d * d_prime
    N = (np.kron(jordan_block(d), jordan_block(d_prime)) - np.eye(n, dtype=np.int64)) % p
    ladder = [n]
    power = np.eye(n, dtype=np.int64)
    while ladder[-1] > 0:
        power = (power @ N) % p
        ladder.append(rank_mod_p(power, p))
        if len(ladder) > n + 1:
            raise ArithmeticError("matrix is not nilpotent")
    ladder.append(0)
    mult = {}
    for r in range(1, len(ladder) - 1):
        lam = ladder[r - 1] - 2 * ladder[r] + ladder[r + 1]
        if lam:
            mult[r] = lam
    return NilpotentSpectrum(d, d_prime, p, mult, tuple(ladder[:-1]))


def kernel_dimensions(d: int, d_prime: int, p: int) -> list[int]:
    """dim ker N^k for k = 1, 2, ... via nullspace, independent of the rank path."""
    from .gf import prime_field
    from .linalg import matmul

    F = prime_field(p)
    J = lambda k: [[1 if (i == j or i == j + 1) else 0 for j in range(k)] for i in range(k)]
    A, B = J(d), J(d_prime)
    n = d * d_prime
    N = [[(A[i // d_prime][j // d_prime] * B[i % d_prime][j % d_prime] - (i == j)) % p for j in range(n)]
         for i in range(n)]
    out = []
    P = N
    while True:
        k = len(nullspace(F, P, n))
        out.append(k)
        if k == n:
            return out
        P = matmul(F, P, N)


def spectrum_from_kernels(kernels: list[int]) -> dict:
    """Jordan block multiplicities from dim ker N^k, k = 1, 2, ..."""
    k = [0, *kernels]
    k += [k[-1], k[-1]]
    out = {}
    for r in range(1, len(kernels) + 1):
        lam = 2 * k[r] - k[r - 1] - k[r + 1]
        if lam:
            out[r] = lam
    return out


FIXED_DIM_MAX_Q = 16


def fixed_dim_tensor(c: CurveSpec, c_prime: CurveSpec) -> int:
    """dim of the G-fixed part of H^0(Omega_C) (x) H^0(Omega_C') under the diagonal action.

    Joint kernel of (M_g (x) M'_g - I) over the generators g of G.  The
    action is block diagonal in the V_j, so the computation runs blockwise.
    The action does not involve f, so the result depends only on the field.
    """
    if c.tower != c_prime.tower:
        raise ValueError("curves must share the field tower")
    if c.q > FIXED_DIM_MAX_Q:
        raise ValueError(f"fixed-space computation is limited to q <= {FIXED_DIM_MAX_Q}")
    return _fixed_dim_tensor(c, c_prime)


@lru_cache(maxsize=None)
def _fixed_dim_tensor(c: CurveSpec, c_prime: CurveSpec) -> int:
    F = c.F
    gens = c.tower.group_generators
    mats = [(differential_action(c, g), differential_action(c_prime, g)) for g in gens]
    blocks, blocks_p = block_slices(c), block_slices(c_prime)
    for A, _ in mats:
        _check_block_diagonal(A, blocks)
    for _, B in mats:
        _check_block_diagonal(B, blocks_p)
    total = 0
    for sa in blocks:
        for sb in blocks_p:
            n = len(sa) * len(sb)
            rows = []
            for A, B in mats:
                Ab = [[A[i][j] for j in sa] for i in sa]
                Bb = [[B[i][j] for j in sb] for i in sb]
                for ia in range(len(sa)):
                    for ib in range(len(sb)):
                        r = ia * len(sb) + ib
                        row = []
                        for ja in range(len(sa)):
                            a = Ab[ia][ja]
                            for jb in range(len(sb)):
                                v = F.mul(a, Bb[ib][jb]) if a else 0
                                if ja * len(sb) + jb == r:
                                    v = F.sub(v, 1)
                                row.append(v)
                        rows.append(row)
            total += len(nullspace(F, rows, n))
    return total


def _check_block_diagonal(A, slices):
    owner = {}
    for b, sl in enumerate(slices):
        for i in sl:
            owner[i] = b
    for i, row in enumerate(A):
        for j, v in enumerate(row):
            if v and owner[i] != owner[j]:
                raise ArithmeticError("differential action is not block diagonal")


def h0_omega_quotient_prime(p: int) -> int:
    """Closed form (2p^3 - 9p^2 + 13p - 6)/6 for q = p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    num = 2 * p**3 - 9 * p**2 + 13 * p - 6
    assert num % 6 == 0
    return num // 6


def min_sum(p: int) -> int:
    """sum of min(d, d') over 1 <= d, d' <= p - 2."""
    return sum(min(d, e) for d in range(1, p - 1) for e in range(1, p - 1))
