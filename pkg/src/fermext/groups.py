"""Finite groups, homomorphisms between small groups, and G-modules.

Two kinds of group appear:

* ``FinAbGroup`` -- a finite abelian group given by invariant factors.  Its
  elements are coordinate tuples.  These are the fusion groups ``A`` of
  pointed categories and the coefficient modules of cohomology.
* ``FiniteGroup`` -- an arbitrary finite group stored as a multiplication
  table over element indices ``0..n-1`` (index 0 is the identity).  These are
  the acting groups ``G``.  Abelian ones are built from a ``FinAbGroup``,
  non-abelian ones from permutation generators.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from math import gcd, lcm, prod
from typing import Sequence

from .errors import BudgetExceeded, InvalidFermion, InvalidInput
from .qz import QZ

DEFAULT_HOM_BUDGET = 10**3


def _budget(default: int) -> int:
    env = os.environ.get("FERMEXT_BUDGET")
    return int(env) if env else default


class FinAbGroup:
    """Z/n_1 x ... x Z/n_r with n_i | n_{i+1}, every n_i >= 2."""

    def __init__(self, invariant_factors: Sequence[int] = ()):
        factors = tuple(int(n) for n in invariant_factors)
        for n in factors:
            if n < 2:
                raise InvalidInput(f"invariant factors must be >= 2, got {factors}")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise InvalidInput(f"invariant factors must form a divisor chain, got {factors}")
        self.invariant_factors = factors

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "FinAbGroup":
        """Canonical form of Z/o_1 x ... x Z/o_s for arbitrary orders."""
        primes: dict[int, list[int]] = {}
        for o in orders:
            n, p = int(o), 2
            while n > 1:
                if n % p == 0:
                    q = 1
                    while n % p == 0:
                        n //= p
                        q *= p
                    primes.setdefault(p, []).append(q)
                p += 1
        if not primes:
            return cls(())
        rank = max(len(v) for v in primes.values())
        factors = [1] * rank
        for powers in primes.values():
            powers.sort()
            for i, q in enumerate(powers):
                factors[rank - len(powers) + i] *= q
        return cls([f for f in factors if f > 1])

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def order(self) -> int:
        return prod(self.invariant_factors)

    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def zero(self) -> tuple:
        return (0,) * self.rank

    def elements(self) -> list[tuple]:
        """All elements in lexicographic coordinate order."""
        return [tuple(c) for c in itertools.product(*(range(n) for n in self.invariant_factors))]

    def generators(self) -> list[tuple]:
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def reduce(self, coords: Sequence[int]) -> tuple:
        if len(coords) != self.rank:
            raise InvalidInput(f"element {list(coords)} has wrong length for {self}")
        return tuple(int(c) % n for c, n in zip(coords, self.invariant_factors))

    def add(self, a, b) -> tuple:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.invariant_factors))

    def neg(self, a) -> tuple:
        return tuple(-x % n for x, n in zip(a, self.invariant_factors))

    def sub(self, a, b) -> tuple:
        return tuple((x - y) % n for x, y, n in zip(a, b, self.invariant_factors))

    def scale(self, k: int, a) -> tuple:
        return tuple(k * x % n for x, n in zip(a, self.invariant_factors))

    def element_order(self, a) -> int:
        return lcm(1, *(n // gcd(n, x) for x, n in zip(a, self.invariant_factors)))

    def index(self, a) -> int:
        i = 0
        for x, n in zip(a, self.invariant_factors):
            i = i * n + x
        return i

    def __eq__(self, other) -> bool:
        return isinstance(other, FinAbGroup) and self.invariant_factors == other.invariant_factors

    def __hash__(self) -> int:
        return hash(self.invariant_factors)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{n}" for n in self.invariant_factors)

    def __repr__(self) -> str:
        return f"FinAbGroup({list(self.invariant_factors)})"

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors)}


def dual_group(A: FinAbGroup) -> FinAbGroup:
    """The character group of A; it has the same invariant factors."""
    return FinAbGroup(A.invariant_factors)


def evaluate(A: FinAbGroup, chi, a) -> QZ:
    """The pairing chi(a) = sum chi_i a_i / n_i in Q/Z."""
    total = QZ(0)
    for x, y, n in zip(chi, a, A.invariant_factors):
        total = total + QZ(x * y, n)
    return total


def character_from_values(A: FinAbGroup, values) -> tuple:
    """The character taking value ``values(e_i)`` on the canonical generators.

    ``values`` maps a generator index to a QZ.  Raises if the values are not
    the values of a character (order of the value must divide n_i).
    """
    coords = []
    for i, n in enumerate(A.invariant_factors):
        v = values(i)
        if n % v.den:
            raise InvalidInput(f"value {v} on generator {i} is not {n}-torsion")
        coords.append(v.scaled_to(n))
    return tuple(coords)


class FiniteGroup:
    """A finite group as a multiplication table on indices, identity = 0.

    ``gens`` are generator indices and ``words[g]`` expresses element ``g`` as
    a list of generator positions (used to extend maps defined on generators).
    """

    def __init__(self, table, labels, gens, name: str = "", abelian: FinAbGroup | None = None):
        self.table = [list(row) for row in table]
        self.labels = list(labels)
        self.n = len(self.labels)
        self.gens = list(gens)
        self.name = name
        self.abelian = abelian
        if any(self.table[0][g] != g or self.table[g][0] != g for g in range(self.n)):
            raise InvalidInput("index 0 must be the identity")
        self.inv = [0] * self.n
        for g in range(self.n):
            self.inv[g] = self.table[g].index(0)
        self.words = self._words()

    def _words(self) -> list[list[int]]:
        words: list[list[int] | None] = [None] * self.n
        words[0] = []
        frontier = [0]
        while frontier:
            nxt = []
            for g in frontier:
                for k, s in enumerate(self.gens):
                    h = self.table[g][s]
                    if words[h] is None:
                        words[h] = words[g] + [k]
                        nxt.append(h)
            frontier = nxt
        if any(w is None for w in words):
            raise InvalidInput("generators do not generate the group")
        return words  # type: ignore[return-value]

    @classmethod
    def from_abelian(cls, A: FinAbGroup) -> "FiniteGroup":
        elems = A.elements()
        idx = {e: i for i, e in enumerate(elems)}
        table = [[idx[A.add(a, b)] for b in elems] for a in elems]
        gens = [idx[g] for g in A.generators()]
        return cls(table, elems, gens, name=str(A), abelian=A)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls.from_abelian(FinAbGroup([n]) if n > 1 else FinAbGroup([]))

    @classmethod
    def from_permutations(cls, gens: Sequence[Sequence[int]], name: str = "") -> "FiniteGroup":
        """Closure of permutation generators (permutations as image lists)."""
        gens = [tuple(g) for g in gens]
        if not gens:
            raise InvalidInput("need at least one generator")
        ident = tuple(range(len(gens[0])))
        elems = [ident]
        seen = {ident: 0}
        i = 0
        while i < len(elems):
            for s in gens:
                h = tuple(s[x] for x in elems[i])  # s after elems[i]
                if h not in seen:
                    seen[h] = len(elems)
                    elems.append(h)
            i += 1
        table = [[seen[tuple(a[x] for x in b)] for b in elems] for a in elems]
        return cls(table, elems, [seen[s] for s in gens], name=name)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def order(self) -> int:
        return self.n

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    def nonidentity(self) -> list[int]:
        return list(range(1, self.n))

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.n) for b in range(self.n))

    def label(self, g: int) -> str:
        lab = self.labels[g]
        return ",".join(map(str, lab)) if isinstance(lab, tuple) else str(lab)

    def index_of_label(self, lab) -> int:
        if isinstance(lab, list):
            lab = tuple(lab)
        if lab in self.labels:
            return self.labels.index(lab)
        if isinstance(lab, int) and self.abelian is not None and self.abelian.rank == 1:
            return self.labels.index((lab % self.abelian.exponent(),))
        raise InvalidInput(f"no element labelled {lab!r} in {self}")

    def extend(self, images: Sequence, mul, one):
        """Extend generator images to every element along ``words``."""
        out = []
        for w in self.words:
            x = one
            for k in w:
                x = mul(x, images[k])
            out.append(x)
        return out

    def __str__(self) -> str:
        return self.name or f"group of order {self.n}"

    def __repr__(self) -> str:
        return f"FiniteGroup({self})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self) -> int:
        return hash((self.n, tuple(map(tuple, self.table[:2]))))

    def to_json(self) -> dict:
        if self.abelian is not None:
            return self.abelian.to_json()
        return {"permutations": [list(self.labels[g]) for g in self.gens]}


def as_finite_group(G) -> FiniteGroup:
    return G if isinstance(G, FiniteGroup) else FiniteGroup.from_abelian(G)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given by the images of the source generators.

    ``table[g]`` is the image of every source element (target indices).
    """

    source: FiniteGroup
    target: FiniteGroup
    images: tuple
    table: tuple = field(repr=False, compare=False)

    def __call__(self, g: int) -> int:
        return self.table[g]

    def is_trivial(self) -> bool:
        return all(x == 0 for x in self.table)

    def kernel(self) -> list[int]:
        return [g for g, x in enumerate(self.table) if x == 0]

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.target.n


def enumerate_homs(G, H, budget: int | None = None) -> list[GroupHom]:
    """Every homomorphism G -> H, ordered lexicographically by generator images."""
    G, H = as_finite_group(G), as_finite_group(H)
    budget = _budget(DEFAULT_HOM_BUDGET) if budget is None else budget
    cands = []
    for s in G.gens:
        k = G.element_order(s)
        cands.append([h for h in range(H.n) if k % H.element_order(h) == 0])
    total = prod(len(c) for c in cands)
    if total > budget:
        raise BudgetExceeded(f"{total} candidate generator images exceed budget {budget}")
    out = []
    for images in itertools.product(*cands):
        table = G.extend(images, H.mul, 0)
        if all(table[G.mul(a, b)] == H.mul(table[a], table[b]) for a in range(G.n) for b in range(G.n)):
            out.append(GroupHom(G, H, tuple(images), tuple(table)))
    return out


def restriction_map(A: FinAbGroup, f) -> tuple[GroupHom, bool]:
    """Restriction of characters of A to <f> ~ Z/2, chi -> chi(f).

    Returns the homomorphism (dual group -> Z/2) and whether it is surjective.
    """
    f = A.reduce(f)
    if f == A.zero() or A.element_order(f) != 2:
        raise InvalidFermion(f"{list(f)} does not have order 2 in {A}")
    Ahat = as_finite_group(dual_group(A))
    Z2 = FiniteGroup.cyclic(2)
    images = tuple(evaluate(A, chi, f).scaled_to(2) for chi in dual_group(A).generators())
    hom_table = tuple(evaluate(A, Ahat.labels[i], f).scaled_to(2) for i in range(Ahat.n))
    hom = GroupHom(Ahat, Z2, images, hom_table)
    return hom, hom.is_surjective()


class GModule:
    """A finite abelian group M with G acting by automorphisms.

    ``matrices[g]`` is an integer r x r matrix; ``g.m`` has coordinates
    ``sum_j matrices[g][i][j] m_j mod n_i``.  Construction checks that every
    matrix is a well defined bijection and that g -> matrices[g] respects the
    group law (exhaustively over G x G x M).
    """

    def __init__(self, G, M: FinAbGroup, matrices=None, check: bool = True):
        self.G = as_finite_group(G)
        self.M = M
        r = M.rank
        ident = [[int(i == j) for j in range(r)] for i in range(r)]
        if matrices is None:
            matrices = [ident] * self.G.n
        self.matrices = [tuple(tuple(int(x) for x in row) for row in m) for m in matrices]
        if len(self.matrices) != self.G.n:
            raise InvalidInput("need one matrix per group element")
        self._elems = M.elements()
        self._act = [{m: self._apply(g, m) for m in self._elems} for g in range(self.G.n)]
        if check:
            self._check()

    @classmethod
    def trivial(cls, G, M: FinAbGroup) -> "GModule":
        return cls(G, M, None, check=False)

    @classmethod
    def from_generators(cls, G, M: FinAbGroup, gen_matrices: Sequence) -> "GModule":
        """Extend matrices given on G.gens to the whole group, then verify."""
        G = as_finite_group(G)
        r = M.rank
        ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))

        def compose(a, b):
            return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(r)) for j in range(r)) for i in range(r))

        mats = G.extend([tuple(map(tuple, m)) for m in gen_matrices], compose, ident)
        return cls(G, M, mats)

    def _apply(self, g: int, m) -> tuple:
        A = self.matrices[g]
        return tuple(sum(A[i][j] * m[j] for j in range(len(m))) % n for i, n in enumerate(self.M.invariant_factors))

    def _check(self) -> None:
        M, G = self.M, self.G
        for g in range(G.n):
            A = self.matrices[g]
            for i, ni in enumerate(M.invariant_factors):
                for j, nj in enumerate(M.invariant_factors):
                    if A[i][j] * nj % ni:
                        raise InvalidInput(f"matrix of element {G.label(g)} is not well defined on {M}")
            if len(set(self._act[g].values())) != len(self._elems):
                raise InvalidInput(f"element {G.label(g)} does not act bijectively")
        for g in range(G.n):
            for h in range(G.n):
                gh = G.mul(g, h)
                if any(self._act[gh][m] != self._act[g][self._act[h][m]] for m in self._elems):
                    raise InvalidInput("action does not respect the group law")
        for g in range(G.n):
            for a in M.generators():
                for b in M.generators():
                    if self._act[g][M.add(a, b)] != M.add(self._act[g][a], self._act[g][b]):
                        raise InvalidInput("action is not additive")

    def act(self, g: int, m) -> tuple:
        return self._act[g][tuple(m)]

    def is_trivial(self) -> bool:
        return all(self._act[g][m] == m for g in range(self.G.n) for m in self._elems)

    def dual(self) -> "GModule":
        """The character module with (g.chi)(a) = chi(g^-1 a)."""
        M, G = self.M, self.G
        gens = M.generators()
        mats = []
        for g in range(G.n):
            ginv = G.inv[g]
            cols = []
            for chi in gens:
                cols.append(character_from_values(M, lambda i: evaluate(M, chi, self.act(ginv, gens[i]))))
            mats.append([[cols[j][i] for j in range(M.rank)] for i in range(M.rank)])
        return GModule(G, dual_group(M), mats)

    def __repr__(self) -> str:
        kind = "trivial" if self.is_trivial() else "twisted"
        return f"GModule({self.G}, {self.M}, {kind})"


@dataclass
class SuperGroup:
    """A pair (G, alpha) with alpha a normalized Z/2-valued 2-cocycle on G.

    ``alpha`` maps pairs of non-identity element indices to 0 or 1; missing
    pairs are 0.
    """

    G: FiniteGroup
    alpha: dict
    name: str = ""

    def __post_init__(self):
        self.alpha = {k: v % 2 for k, v in self.alpha.items() if v % 2}
        G = self.G
        a = self.value
        for g in range(G.n):
            for h in range(G.n):
                for k in range(G.n):
                    if (a(h, k) - a(G.mul(g, h), k) + a(g, G.mul(h, k)) - a(g, h)) % 2:
                        raise InvalidInput(f"alpha is not a 2-cocycle at {(g, h, k)}")

    def value(self, g: int, h: int) -> int:
        return self.alpha.get((g, h), 0)

    @classmethod
    def from_central_extension(cls, Gt: FiniteGroup, z: int, name: str = "") -> "SuperGroup":
        """(G~, z) -> (G~/<z>, alpha) using the minimal-index section."""
        if Gt.element_order(z) != 2 or any(Gt.mul(z, g) != Gt.mul(g, z) for g in range(Gt.n)):
            raise InvalidInput("z must be a central element of order 2")
        reps, coset = [], {}
        for g in range(Gt.n):
            if g in coset:
                continue
            coset[g] = coset[Gt.mul(g, z)] = len(reps)
            reps.append(g)
        table = [[coset[Gt.mul(a, b)] for b in reps] for a in reps]
        gens = sorted({coset[s] for s in Gt.gens} - {0}) or [0]
        Q = FiniteGroup(table, [Gt.labels[g] for g in reps], gens, name=f"{Gt}/<{Gt.label(z)}>")
        G, perm = _canonical_if_abelian(Q)
        alpha = {}
        for i, a in enumerate(reps):
            for j, b in enumerate(reps):
                p = Gt.mul(a, b)
                if p != reps[coset[p]]:
                    alpha[(perm[i], perm[j])] = 1
        return cls(G, alpha, name=name or f"({Gt}, {Gt.label(z)})")

    def is_trivial_class(self) -> bool:
        from .cohomology import is_z2_coboundary

        return is_z2_coboundary(self.G, self.alpha)

    def to_json(self) -> dict:
        return {
            "group": self.G.to_json(),
            "alpha": {f"{self.G.label(g)}|{self.G.label(h)}": "1/2" for (g, h) in sorted(self.alpha)},
        }


def _canonical_if_abelian(Q: FiniteGroup) -> tuple[FiniteGroup, list[int]]:
    """An abelian Q is replaced by its canonical form; returns (group, index map)."""
    if not Q.is_abelian():
        return Q, list(range(Q.n))
    canon = FiniteGroup.from_abelian(abelian_invariants(Q))
    for h in enumerate_homs(Q, canon, budget=10**6):
        if len(set(h.table)) == Q.n:
            return canon, list(h.table)
    raise InvalidInput("quotient is not isomorphic to its canonical form")


def _divisor_chains(n: int, smallest: int = 2) -> list[list[int]]:
    if n == 1:
        return [[]]
    out = []
    for d in range(smallest, n + 1):
        if n % d == 0:
            out += [[d] + c for c in _divisor_chains(n // d, d) if not c or c[0] % d == 0]
    return out


def abelian_invariants(Q: FiniteGroup) -> FinAbGroup:
    """Invariant factors of an abelian FiniteGroup (matched on element orders)."""
    stats = sorted(Q.element_order(g) for g in range(Q.n))
    for chain in _divisor_chains(Q.n):
        A = FinAbGroup(chain)
        if sorted(A.element_order(a) for a in A.elements()) == stats:
            return A
    raise InvalidInput("group is not abelian")
