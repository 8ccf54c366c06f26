"""Group cohomology with coefficients in finite G-modules.

Cochains are normalized bar cochains.  Cohomology groups are computed on the
reduced resolution of ``resolution.py`` (a few cells per degree instead of
(|G|-1)^n), then transported back to bar cochains, so representatives are
honest functions on G^n.  Coboundary membership with an explicit witness is
decided by a dense linear solve over Z/exponent(M) on the bar complex.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from math import gcd

import numpy as np
from sympy import Matrix, zeros

from .errors import BudgetExceeded, InvalidInput, InvalidMap, InvalidSequence, NotACocycle
from .groups import FinAbGroup, FiniteGroup, GModule, as_finite_group
from .qz import QZ
from .resolution import ReducedResolution, bar_boundary
from .zmod import kernel_mod, lattice_basis, smith, solve_mod

DEFAULT_BUDGET = 10**7


def budget() -> int:
    env = os.environ.get("FERMEXT_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _check_budget(G: FiniteGroup, n: int, rank: int, cap: int | None) -> None:
    cap = budget() if cap is None else cap
    size = (G.n - 1) ** n * max(rank, 1)
    if size > cap:
        raise BudgetExceeded(f"{size} cochain entries in degree {n} exceed budget {cap}")


def cells(G: FiniteGroup, n: int) -> list[tuple]:
    return list(itertools.product(G.nonidentity(), repeat=n))


@dataclass
class Cochain:
    """A normalized n-cochain G^n -> M; zero values are not stored."""

    module: GModule
    degree: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        M = self.module.M
        clean = {}
        for k, v in self.values.items():
            k = tuple(k)
            if len(k) != self.degree:
                raise InvalidInput(f"cochain key {k} has wrong length for degree {self.degree}")
            if 0 in k:
                continue
            v = M.reduce(v)
            if any(v):
                clean[k] = v
        self.values = clean

    @property
    def G(self) -> FiniteGroup:
        return self.module.G

    def __call__(self, *args) -> tuple:
        return self.values.get(tuple(args), self.module.M.zero())

    @classmethod
    def from_function(cls, module: GModule, degree: int, fn) -> "Cochain":
        return cls(module, degree, {x: fn(*x) for x in cells(module.G, degree)})

    def __add__(self, other: "Cochain") -> "Cochain":
        M = self.module.M
        keys = set(self.values) | set(other.values)
        return Cochain(self.module, self.degree, {k: M.add(self(*k), other(*k)) for k in keys})

    def __neg__(self) -> "Cochain":
        M = self.module.M
        return Cochain(self.module, self.degree, {k: M.neg(v) for k, v in self.values.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, k: int) -> "Cochain":
        M = self.module.M
        return Cochain(self.module, self.degree, {x: M.scale(k, v) for x, v in self.values.items()})

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other) -> bool:
        return isinstance(other, Cochain) and self.degree == other.degree and self.values == other.values

    def vector(self) -> np.ndarray:
        r = self.module.M.rank
        cs = cells(self.G, self.degree)
        out = np.zeros(len(cs) * r, dtype=np.int64)
        for i, x in enumerate(cs):
            out[i * r:(i + 1) * r] = self(*x)
        return out

    @classmethod
    def from_vector(cls, module: GModule, degree: int, vec) -> "Cochain":
        r = module.M.rank
        cs = cells(module.G, degree)
        return cls(module, degree, {x: tuple(int(v) for v in vec[i * r:(i + 1) * r]) for i, x in enumerate(cs)})

    def to_json(self) -> dict:
        G = self.G
        out = {}
        for k in sorted(self.values):
            v = self.values[k]
            out["|".join(G.label(g) for g in k)] = list(v)
        return out


def qz_module(G, N: int) -> GModule:
    """(1/N)Z/Z ~ Z/N with trivial action."""
    return GModule.trivial(G, FinAbGroup([N]) if N > 1 else FinAbGroup([]))


def qz_cochain(G, degree: int, fn, N: int) -> Cochain:
    """A Q/Z-valued function as a cochain in (1/N)Z/Z."""
    M = qz_module(G, N)

    def val(*x):
        q = fn(*x)
        if N % q.den:
            raise InvalidInput(f"value {q} does not lie in (1/{N})Z/Z")
        return (q.scaled_to(N),)

    return Cochain.from_function(M, degree, val)


def qz_value(c: Cochain, *args) -> QZ:
    """Value of a (1/N)Z/Z cochain as a QZ."""
    (x,) = c(*args)
    return QZ(x, c.module.M.exponent())


def coboundary(c: Cochain) -> Cochain:
    """(dc)(g1..g_{n+1}) = g1.c(g2..) + sum (-1)^i c(..g_i g_{i+1}..) + (-1)^{n+1} c(g1..g_n)."""
    Mod, M, G, n = c.module, c.module.M, c.G, c.degree
    vals = {}
    for x in cells(G, n + 1):
        acc = Mod.act(x[0], c(*x[1:]))
        for i in range(n):
            p = G.mul(x[i], x[i + 1])
            if p:
                term = c(*(x[:i] + (p,) + x[i + 2:]))
                acc = M.add(acc, term) if i % 2 else M.sub(acc, term)
        last = c(*x[:n])
        acc = M.sub(acc, last) if n % 2 == 0 else M.add(acc, last)
        vals[x] = acc
    return Cochain(Mod, n + 1, vals)


def _zg_matrix(module: GModule, r: dict) -> np.ndarray:
    k = module.M.rank
    out = np.zeros((k, k), dtype=np.int64)
    for g, a in r.items():
        out += a * np.array(module.matrices[g], dtype=np.int64).reshape(k, k)
    return out


def bar_coboundary_matrix(module: GModule, n: int) -> np.ndarray:
    """Integer matrix of d: C^n -> C^{n+1} in cell-major coordinates."""
    G, r = module.G, module.M.rank
    src = {x: i for i, x in enumerate(cells(G, n))}
    tgt = cells(G, n + 1)
    D = np.zeros((len(tgt) * r, len(src) * r), dtype=np.int64)
    for i, x in enumerate(tgt):
        for y, coeff in bar_boundary(G, x).items():
            j = src[y]
            D[i * r:(i + 1) * r, j * r:(j + 1) * r] += _zg_matrix(module, coeff)
    return D


def _row_scale(M: FinAbGroup, count: int) -> np.ndarray:
    N = M.exponent()
    return np.tile(np.array([N // n for n in M.invariant_factors], dtype=np.int64), count)


def solve_coboundary(c: Cochain, cap: int | None = None):
    """Some (n-1)-cochain x with dx = c, or None if c is not a coboundary."""
    Mod, M, n = c.module, c.module.M, c.degree
    if n == 0:
        return None if c.values else Cochain(Mod, 0)
    _check_budget(c.G, n, M.rank * (c.G.n - 1) ** (n - 1), cap)
    N = M.exponent()
    if N == 1:
        return Cochain(Mod, n - 1)
    D = bar_coboundary_matrix(Mod, n - 1)
    s = _row_scale(M, len(cells(c.G, n)))
    x = solve_mod((D * s[:, None]) % N, c.vector() * s % N, N)
    if x is None:
        return None
    return Cochain.from_vector(Mod, n - 1, x)


def is_cocycle(c: Cochain) -> bool:
    return coboundary(c).is_zero()


def is_z2_coboundary(G, alpha: dict) -> bool:
    G = as_finite_group(G)
    c = Cochain(GModule.trivial(G, FinAbGroup([2])), 2, {k: (v,) for k, v in alpha.items()})
    return solve_coboundary(c) is not None


_RESOLUTIONS: dict = {}


def reduced_resolution(G: FiniteGroup, top: int) -> ReducedResolution:
    key = tuple(map(tuple, G.table))
    R = _RESOLUTIONS.get(key)
    if R is None or R.top < top:
        R = ReducedResolution(G, top)
        _RESOLUTIONS[key] = R
    return R


class ReducedComplex:
    """Hom_G(F, M) for the reduced resolution F, as integer matrices."""

    def __init__(self, module: GModule, top: int):
        self.module = module
        self.R = reduced_resolution(module.G, top)
        self.r = module.M.rank

    def dim(self, k: int) -> int:
        return len(self.R.cells[k]) * self.r

    def moduli(self, k: int) -> list[int]:
        return list(self.module.M.invariant_factors) * len(self.R.cells[k])

    def matrix(self, k: int) -> np.ndarray:
        """d: Hom(F_k, M) -> Hom(F_{k+1}, M)."""
        r = self.r
        src = {c: i for i, c in enumerate(self.R.cells[k])}
        tgt = self.R.cells[k + 1]
        D = np.zeros((len(tgt) * r, len(src) * r), dtype=np.int64)
        for i, x in enumerate(tgt):
            for c, coeff in self.R.bd[k + 1][x].items():
                j = src[c]
                D[i * r:(i + 1) * r, j * r:(j + 1) * r] += _zg_matrix(self.module, coeff)
        return D

    def to_bar(self, k: int, vec) -> Cochain:
        """Pull a reduced cochain back along the projection B -> F."""
        Mod, M, r = self.module, self.module.M, self.r
        idx = {c: i for i, c in enumerate(self.R.cells[k])}
        vals = {}
        for x in cells(Mod.G, k):
            acc = np.zeros(r, dtype=np.int64)
            for c, coeff in self.R.project(x).items():
                i = idx[c]
                acc += _zg_matrix(Mod, coeff) @ np.array(vec[i * r:(i + 1) * r], dtype=np.int64)
            vals[x] = tuple(int(a) for a in acc)
        return Cochain(Mod, k, vals)

    def from_bar(self, c: Cochain) -> np.ndarray:
        """Restrict a bar cochain along the inclusion F -> B."""
        r = self.r
        out = np.zeros(self.dim(c.degree), dtype=np.int64)
        for i, e in enumerate(self.R.cells[c.degree]):
            acc = np.zeros(r, dtype=np.int64)
            for x, coeff in self.R.include(e).items():
                acc += _zg_matrix(self.module, coeff) @ np.array(c(*x), dtype=np.int64)
            out[i * r:(i + 1) * r] = acc
        return out


@dataclass
class CohomologyGroup:
    """H^n(G, M) = ker d_n / im d_{n-1} with generators."""

    module: GModule
    degree: int
    invariant_factors: list
    representatives: list
    total_order: int
    _complex: ReducedComplex = field(repr=False, default=None)
    _basis: object = field(repr=False, default=None)  # P U^{-1}
    _coords: object = field(repr=False, default=None)  # U P^{-1}
    _slots: list = field(repr=False, default_factory=list)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{n}" for n in self.invariant_factors)

    def reduced_coordinates(self, vec) -> tuple:
        """Class coordinates of a reduced cocycle."""
        y = self._coords * Matrix([int(v) for v in vec])
        out = []
        for slot, s in zip(self._slots, self.invariant_factors):
            v = y[slot]
            if v.q != 1:
                raise NotACocycle("vector is not a cocycle")
            out.append(int(v) % s)
        return tuple(out)

    def class_of(self, c: Cochain) -> tuple:
        """Coordinates of the class of a bar cocycle in terms of the generators."""
        if c.degree != self.degree:
            raise InvalidInput("degree mismatch")
        if not is_cocycle(c):
            raise NotACocycle("cochain is not a cocycle")
        return self.reduced_coordinates(self._complex.from_bar(c))

    def all_representatives(self) -> list[Cochain]:
        """One cocycle per class, combinations of the generators in lexicographic order."""
        zero = Cochain(self.module, self.degree, {})
        out = []
        for coeffs in itertools.product(*(range(s) for s in self.invariant_factors)):
            c = zero
            for k, r in zip(coeffs, self.representatives):
                c = c + r.scale(k)
            out.append(c)
        return out

    def reduced_generator(self, i: int) -> list[int]:
        col = self._basis[:, self._slots[i]]
        return [int(x) for x in col]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "invariant_factors": list(self.invariant_factors),
            "total_order": self.total_order,
            "representatives": [r.to_json() for r in self.representatives],
        }


def cohomology(module: GModule, n: int, cap: int | None = None) -> CohomologyGroup:
    if n < 0:
        raise InvalidInput("degree must be non-negative")
    G, M = module.G, module.M
    _check_budget(G, n + 1, M.rank, cap)
    cx = ReducedComplex(module, n + 1)
    c = cx.dim(n)
    if c == 0 or M.order() == 1:
        return CohomologyGroup(module, n, [], [], 1, cx, Matrix(0, 0, []), Matrix(0, 0, []), [])
    N = M.exponent()
    Dn = cx.matrix(n)
    s = np.array([N // m for m in cx.moduli(n + 1)], dtype=np.int64)
    gens, _ = kernel_mod((Dn * s[:, None]) % N, N)
    eye = np.eye(c, dtype=np.int64)
    P = lattice_basis([g for g in gens] + [N * eye[:, j] for j in range(c)], c)
    W = [m * eye[:, j] for j, m in enumerate(cx.moduli(n))]
    if n > 0:
        Dp = cx.matrix(n - 1)
        W += [Dp[:, j] for j in range(Dp.shape[1])]
    Wm = Matrix.hstack(*[Matrix([int(x) for x in w]) for w in W])
    Pinv = P.inv()
    Y = Pinv * Wm
    diag, U, _ = smith([[int(Y[i, j]) for j in range(Y.shape[1])] for i in range(Y.shape[0])])
    slots = [i for i, d in enumerate(diag) if d != 1]
    factors = [diag[i] for i in slots]
    basis = P * U.inv()
    coords = U * Pinv
    reps = []
    for i in slots:
        reps.append(cx.to_bar(n, [int(x) for x in basis[:, i]]))
    total = 1
    for f in factors:
        total *= f
    return CohomologyGroup(module, n, factors, reps, total, cx, basis, coords, slots)


def cohomology_order(module: GModule, n: int) -> int:
    return cohomology(module, n).total_order


@dataclass
class ModuleMap:
    """A G-equivariant homomorphism given by an integer matrix on coordinates."""

    source: GModule
    target: GModule
    matrix: list

    def __post_init__(self):
        S, T = self.source.M, self.target.M
        self.matrix = [[int(x) for x in row] for row in self.matrix]
        if len(self.matrix) != T.rank or any(len(row) != S.rank for row in self.matrix):
            raise InvalidMap("matrix shape does not match the modules")
        for i, ni in enumerate(T.invariant_factors):
            for j, nj in enumerate(S.invariant_factors):
                if self.matrix[i][j] * nj % ni:
                    raise InvalidMap("matrix is not a well defined homomorphism")
        for g in range(self.source.G.n):
            for m in S.generators():
                if self(self.source.act(g, m)) != self.target.act(g, self(m)):
                    raise InvalidMap("map is not G-equivariant")

    def __call__(self, m) -> tuple:
        T = self.target.M
        return tuple(sum(a * x for a, x in zip(row, m)) % n for row, n in zip(self.matrix, T.invariant_factors))

    def on_cochain(self, c: Cochain) -> Cochain:
        return Cochain(self.target, c.degree, {k: self(v) for k, v in c.values.items()})


@dataclass
class InducedMap:
    source: CohomologyGroup
    target: CohomologyGroup
    matrix: list  # column i = image of source generator i

    def __call__(self, coords) -> tuple:
        out = []
        for row, t in zip(self.matrix, self.target.invariant_factors):
            out.append(sum(a * x for a, x in zip(row, coords)) % t)
        return tuple(out)

    def image_order(self) -> int:
        t = self.target.invariant_factors
        if not t:
            return 1
        cols = [[self.matrix[i][j] for i in range(len(t))] for j in range(len(self.source.invariant_factors))]
        cols += [[t[i] if i == j else 0 for i in range(len(t))] for j in range(len(t))]
        diag, _, _ = smith([[c[i] for c in cols] for i in range(len(t))])
        index = 1
        for d in diag:
            index *= d
        total = 1
        for x in t:
            total *= x
        return total // index

    def kernel_order(self) -> int:
        return self.source.total_order // self.image_order()

    def kernel(self) -> list[tuple]:
        """All kernel elements as source coordinates (exhaustive)."""
        return [x for x in itertools.product(*(range(s) for s in self.source.invariant_factors))
                if not any(self(x))]


def induced_map(f: ModuleMap, n: int) -> InducedMap:
    Hs = cohomology(f.source, n)
    Ht = cohomology(f.target, n)
    cx = Ht._complex
    r_s, r_t = f.source.M.rank, f.target.M.rank
    cols = []
    for i in range(len(Hs.invariant_factors)):
        v = Hs.reduced_generator(i)
        w = []
        for k in range(len(v) // r_s):
            w += list(f(tuple(v[k * r_s:(k + 1) * r_s])))
        cols.append(Ht.reduced_coordinates(w))
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(len(Ht.invariant_factors))]
    return InducedMap(Hs, Ht, matrix)


@dataclass
class ShortExactSequence:
    """0 -> K --i--> M --p--> Q -> 0 of G-modules."""

    i: ModuleMap
    p: ModuleMap

    def __post_init__(self):
        K, M, Q = self.i.source.M, self.i.target.M, self.p.target.M
        if self.p.source.M != M:
            raise InvalidSequence("middle modules differ")
        image = {self.i(k) for k in K.elements()}
        if len(image) != K.order():
            raise InvalidSequence("first map is not injective")
        if len({self.p(m) for m in M.elements()}) != Q.order():
            raise InvalidSequence("second map is not surjective")
        if any(any(self.p(x)) for x in image) or K.order() * Q.order() != M.order():
            raise InvalidSequence("sequence is not exact in the middle")
        self._preimage = {self.i(k): k for k in K.elements()}

    def section(self, kind: str = "min") -> dict:
        lifts: dict = {}
        for m in self.i.target.M.elements():
            q = self.p(m)
            if kind == "min":
                lifts.setdefault(q, m)
            else:
                lifts[q] = m
        return lifts


def connecting_hom(ses: ShortExactSequence, c: Cochain, section: str = "min") -> Cochain:
    """delta: H^n(G, Q) -> H^{n+1}(G, K) on cocycle level."""
    if c.module.M != ses.p.target.M:
        raise InvalidInput("cochain does not take values in the quotient module")
    s = ses.section(section)
    Mod = ses.i.target
    lift = Cochain(Mod, c.degree, {k: s[v] for k, v in c.values.items()})
    d = coboundary(lift)
    vals = {}
    for k, v in d.values.items():
        if v not in ses._preimage:
            raise NotACocycle("input is not a cocycle")
        vals[k] = ses._preimage[v]
    return Cochain(ses.i.source, c.degree + 1, vals)


def qz_cohomology(G, n: int, N: int | None = None) -> CohomologyGroup:
    """H^n(G, Q/Z) as the image of H^n(G, (1/N)Z/Z) in H^n(G, (1/N^2)Z/Z).

    Any N divisible by |G| works: the universal coefficient sequence shows
    the Ext part dies under multiplication by N while the Hom part injects.
    Representatives take values in (1/N^2)Z/Z.
    """
    G = as_finite_group(G)
    N = G.n if N is None else N
    if N % G.n:
        raise InvalidInput("N must be a multiple of |G|")
    small, big = qz_module(G, N), qz_module(G, N * N)
    if G.n == 1 and n > 0:
        return CohomologyGroup(big, n, [], [], 1)
    if n == 0:
        return cohomology(big, 0)
    emb = ModuleMap(small, big, [[N]])
    F = induced_map(emb, n)
    Ht = F.target
    # subgroup of Ht generated by the columns of F
    t = Ht.invariant_factors
    if not t:
        return CohomologyGroup(big, n, [], [], 1, Ht._complex)
    cols = [[F.matrix[i][j] for i in range(len(t))] for j in range(len(F.source.invariant_factors))]
    cols += [[t[i] if i == j else 0 for i in range(len(t))] for j in range(len(t))]
    A = Matrix([[c[i] for c in cols] for i in range(len(t))])
    # lattice L = span(cols) in Z^len(t); image = L / diag(t)
    L = lattice_basis([A[:, j] for j in range(A.shape[1])], len(t))
    T = Matrix.diag(*t)
    Y = L.inv() * T
    diag, U, _ = smith([[int(Y[i, j]) for j in range(Y.shape[1])] for i in range(Y.shape[0])])
    slots = [i for i, d in enumerate(diag) if d != 1]
    gens_in_t = L * U.inv()
    reps, factors = [], []
    for i in slots:
        coords = [int(x) for x in gens_in_t[:, i]]
        vec = zeros(Ht._basis.shape[0], 1)
        for j, a in enumerate(coords):
            vec += a * Ht._basis[:, Ht._slots[j]]
        reps.append(Ht._complex.to_bar(n, [int(x) for x in vec]))
        factors.append(diag[i])
    total = 1
    for f in factors:
        total *= f
    return CohomologyGroup(big, n, factors, reps, total, Ht._complex)
