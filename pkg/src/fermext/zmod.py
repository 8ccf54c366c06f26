"""Linear algebra over Z/N and small integer lattices.

Systems over Z/N are split by the Chinese remainder theorem into prime
powers q = p^e.  Over the local ring Z/q every element is a unit times a
power of p, so pivoting on an entry of minimal p-valuation diagonalizes any
matrix by invertible row and column operations.
"""
from __future__ import annotations

from math import gcd

import numpy as np
from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp


def prime_power_factors(N: int) -> list[tuple[int, int, int]]:
    """[(p, e, p^e)] for N = prod p^e."""
    out, n, p = [], N, 2
    while n > 1:
        if p * p > n:
            p = n
        if n % p == 0:
            e, q = 0, 1
            while n % p == 0:
                n //= p
                e += 1
                q *= p
            out.append((p, e, q))
        p += 1
    return out


def crt_idempotents(N: int) -> list[tuple[int, int]]:
    """[(q, e_q)] with e_q = 1 mod q and 0 mod N/q."""
    out = []
    for _, _, q in prime_power_factors(N):
        r = N // q
        out.append((q, r * pow(r, -1, q) % N))
    return out


class LocalDiagonalization:
    """D = U A V over Z/q, q = p^e, with D diagonal of p-powers.

    Only what solving and kernels need is kept: V (column transform), the
    transformed right-hand sides and the pivot valuations.
    """

    def __init__(self, A, p: int, e: int, rhs=None):
        q = p**e
        A = np.array(A, dtype=np.int64) % q
        m, n = A.shape
        V = np.eye(n, dtype=np.int64)
        B = None if rhs is None else np.array(rhs, dtype=np.int64).reshape(m, -1) % q
        vals = []
        t = 0
        while t < min(m, n):
            sub = A[t:, t:]
            nz = sub != 0
            if not nz.any():
                break
            pos = None
            pk, val = 1, 0
            while True:
                hit = nz & (sub % (pk * p) != 0)
                if hit.any():
                    pos = np.unravel_index(np.argmax(hit), hit.shape)
                    break
                pk *= p
                val += 1
            i, j = pos[0] + t, pos[1] + t
            if i != t:
                A[[t, i]] = A[[i, t]]
                if B is not None:
                    B[[t, i]] = B[[i, t]]
            if j != t:
                A[:, [t, j]] = A[:, [j, t]]
                V[:, [t, j]] = V[:, [j, t]]
            unit = int(A[t, t]) // pk
            uinv = pow(unit, -1, q)
            A[t] = A[t] * uinv % q
            if B is not None:
                B[t] = B[t] * uinv % q
            # rows
            f = A[:, t] // pk
            f[t] = 0
            rows = np.nonzero(f)[0]
            if rows.size:
                A[rows] = (A[rows] - np.outer(f[rows], A[t])) % q
                if B is not None:
                    B[rows] = (B[rows] - np.outer(f[rows], B[t])) % q
            # columns
            g = A[t] // pk
            g[t] = 0
            cols = np.nonzero(g)[0]
            if cols.size:
                V[:, cols] = (V[:, cols] - np.outer(V[:, t], g[cols])) % q
                A[t, cols] = 0
            vals.append(val)
            t += 1
        self.p, self.e, self.q = p, e, q
        self.shape = (m, n)
        self.V = V
        self.B = B
        self.vals = vals
        self.rank = len(vals)

    def kernel(self) -> tuple[list[np.ndarray], int]:
        p, e, q = self.p, self.e, self.q
        m, n = self.shape
        gens, order = [], 1
        for t, v in enumerate(self.vals):
            if v > 0:
                gens.append(self.V[:, t] * p ** (e - v) % q)
                order *= p**v
        for t in range(self.rank, n):
            gens.append(self.V[:, t] % q)
            order *= q
        return gens, order

    def solve(self, col: int = 0):
        if self.B is None:
            raise ValueError("no right-hand side supplied")
        p, q = self.p, self.q
        b = self.B[:, col]
        n = self.shape[1]
        y = np.zeros(n, dtype=np.int64)
        for t, v in enumerate(self.vals):
            pk = p**v
            if b[t] % pk:
                return None
            y[t] = b[t] // pk
        if np.any(b[self.rank:] % q):
            return None
        return self.V @ y % q


def kernel_mod(A, N: int) -> tuple[list[np.ndarray], int]:
    """Generators and order of {x in (Z/N)^n : A x = 0}."""
    A = np.array(A, dtype=np.int64)
    n = A.shape[1]
    if N == 1:
        return [], 1
    gens, order = [], 1
    for (p, e, q), (_, idem) in zip(prime_power_factors(N), crt_idempotents(N)):
        if A.shape[0] == 0:
            local = [np.eye(n, dtype=np.int64)[:, j] for j in range(n)], q**n
        else:
            local = LocalDiagonalization(A, p, e).kernel()
        gens += [g * idem % N for g in local[0]]
        order *= local[1]
    return gens, order


def solve_mod(A, b, N: int):
    """Some x with A x = b over Z/N, or None."""
    A = np.array(A, dtype=np.int64)
    b = np.array(b, dtype=np.int64)
    n = A.shape[1]
    x = np.zeros(n, dtype=np.int64)
    if N == 1:
        return x
    if A.shape[0] == 0:
        return x
    for (p, e, q), (_, idem) in zip(prime_power_factors(N), crt_idempotents(N)):
        y = LocalDiagonalization(A, p, e, rhs=b).solve()
        if y is None:
            return None
        x = (x + y * idem) % N
    return x


def smith(M: list[list[int]]):
    """(diagonal, U, V) with U M V = diag; U, V unimodular (sympy matrices)."""
    S, U, V = smith_normal_decomp(Matrix(M))
    k = min(S.shape)
    return [abs(int(S[i, i])) for i in range(k)], U, V


def lattice_basis(gens: list, dim: int) -> Matrix:
    """Square basis matrix (columns) of a full-rank lattice in Z^dim."""
    G = Matrix.hstack(*[Matrix([int(x) for x in g]) for g in gens])
    H = hermite_normal_form(G)
    if H.shape != (dim, dim):
        raise ValueError("lattice is not of full rank")
    return H


def invariant_factors_of_quotient(orders: list[int]) -> list[int]:
    """Invariant factors of prod Z/orders[i] (entries 1 are dropped)."""
    diag = [o for o in orders if o != 1]
    if not diag:
        return []
    d, _, _ = smith([[diag[i] if i == j else 0 for j in range(len(diag))] for i in range(len(diag))])
    return sorted(x for x in d if x != 1)


def lcm_list(xs) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out
