"""Actions of a finite group on a pointed (spin-)braided category.

An action is given by rho: G -> Aut(A) together with normalized maps
mu(g; a, b) and gamma(g, h; a) in Q/Z satisfying (additive form)

  E1  mu(g;b,c) + mu(g;a,b+c) - mu(g;a+b,c) - mu(g;a,b) = omega(a,b,c) - omega(ga,gb,gc)
  E2  mu(g;ha,hb) + mu(h;a,b) - mu(gh;a,b) = gamma(g,h;a+b) - gamma(g,h;a) - gamma(g,h;b)
  E3  gamma(gh,k;a) + gamma(g,h;ka) = gamma(h,k;a) + gamma(g,hk;a)

and, for actions by braided autoequivalences,

  B   mu(g;a,b) - mu(g;b,a) = c(a,b) - c(ga,gb).

Two actions with the same rho are equivalent when they differ by the twist
of a normalized beta(g; a):

  mu    += beta(g;a) + beta(g;b) - beta(g;a+b)
  gamma -= beta(g;ha) + beta(h;a) - beta(gh;a)
"""
from __future__ import annotations

import itertools
from math import lcm
from dataclasses import dataclass, field

import numpy as np

from .braided import PointedSpinCategory, apply_matrix, braided_autoequivalences, vertex
from .cohomology import (
    Cochain,
    ModuleMap,
    ShortExactSequence,
    cohomology,
    connecting_hom,
    induced_map,
    is_cocycle,
    solve_coboundary,
)
from .errors import InvalidInput, InvalidMu, NormalizationRequired
from .groups import _divisor_chains, FinAbGroup, FiniteGroup, GModule, character_from_values, enumerate_homs, evaluate
from .qz import HALF, QZ, ZERO
from .report import Report
from .zmod import kernel_mod, solve_mod

Z2 = FinAbGroup([2])


@dataclass
class ActionData:
    """(rho, mu, gamma) for G acting on a pointed spin category.

    ``rho`` is a GModule on the fusion group A.  ``mu`` maps (g, a, b) and
    ``gamma`` maps (g, h, a) to QZ, with G elements as indices and A elements
    as coordinate tuples; missing entries are 0.
    """

    rho: GModule
    target: PointedSpinCategory
    mu: dict = field(default_factory=dict)
    gamma: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.rho.M != self.target.group:
            raise InvalidInput("rho does not act on the fusion group of the target")
        self.mu = {k: v for k, v in self.mu.items() if v}
        self.gamma = {k: v for k, v in self.gamma.items() if v}
        f = self.target.fermion
        for g in range(self.G.n):
            if self.rho.act(g, f) != f:
                raise InvalidInput(f"rho({self.G.label(g)}) does not fix the fermion")

    @property
    def G(self) -> FiniteGroup:
        return self.rho.G

    @property
    def A(self) -> FinAbGroup:
        return self.target.group

    def m(self, g, a, b) -> QZ:
        return self.mu.get((g, a, b), ZERO)

    def y(self, g, h, a) -> QZ:
        return self.gamma.get((g, h, a), ZERO)

    def act(self, g, a):
        return self.rho.act(g, a)

    def twisted(self, beta) -> "ActionData":
        """The equivalent action obtained from beta(g, a) -> QZ."""
        G, A = self.G, self.A
        E = A.elements()
        mu, gamma = dict(self.mu), dict(self.gamma)
        for g in G.nonidentity():
            for a in E:
                for b in E:
                    mu[(g, a, b)] = self.m(g, a, b) + beta(g, a) + beta(g, b) - beta(g, A.add(a, b))
            for h in G.nonidentity():
                for a in E:
                    x = beta(g, self.act(h, a)) + beta(h, a) - beta(G.mul(g, h), a)
                    gamma[(g, h, a)] = self.y(g, h, a) - x
        return ActionData(self.rho, self.target, mu, gamma)

    def with_cell(self, table: str, key, delta: QZ) -> "ActionData":
        mu, gamma = dict(self.mu), dict(self.gamma)
        d = mu if table == "mu" else gamma
        d[key] = d.get(key, ZERO) + delta
        return ActionData(self.rho, self.target, mu, gamma)


def verify_action(data: ActionData) -> Report:
    """Check normalization and the three action equations over all arguments."""
    G, A = data.G, data.A
    E = A.elements()
    z = A.zero()
    w = data.target.cocycle.w
    m, y, act, add = data.m, data.y, data.act, A.add
    rep = Report()
    for g in range(G.n):
        for a in E:
            rep.check("normalization(mu)", (g, z, a), m(g, z, a), ZERO)
            rep.check("normalization(mu)", (g, a, z), m(g, a, z), ZERO)
            for b in E:
                rep.check("normalization(mu)", (0, a, b), m(0, a, b), ZERO)
        for h in range(G.n):
            rep.check("normalization(gamma)", (g, h, z), y(g, h, z), ZERO)
        for a in E:
            rep.check("normalization(gamma)", (0, g, a), y(0, g, a), ZERO)
            rep.check("normalization(gamma)", (g, 0, a), y(g, 0, a), ZERO)
    for g in range(G.n):
        for a, b, c in itertools.product(E, repeat=3):
            lhs = m(g, b, c) + m(g, a, add(b, c)) - m(g, add(a, b), c) - m(g, a, b)
            rhs = w(a, b, c) - w(act(g, a), act(g, b), act(g, c))
            rep.check("E1", (g, a, b, c), lhs, rhs)
    for g in range(G.n):
        for h in range(G.n):
            gh = G.mul(g, h)
            for a, b in itertools.product(E, repeat=2):
                lhs = m(g, act(h, a), act(h, b)) + m(h, a, b) - m(gh, a, b)
                rhs = y(g, h, add(a, b)) - y(g, h, a) - y(g, h, b)
                rep.check("E2", (g, h, a, b), lhs, rhs)
    for g, h, k in itertools.product(range(G.n), repeat=3):
        for a in E:
            lhs = y(G.mul(g, h), k, a) + y(g, h, act(k, a))
            rhs = y(h, k, a) + y(g, G.mul(h, k), a)
            rep.check("E3", (g, h, k, a), lhs, rhs)
    return rep


def verify_braided(data: ActionData) -> Report:
    """c(ga, gb) + mu(g;a,b) = c(a,b) + mu(g;b,a) for all g, a, b."""
    c = data.target.cocycle.br
    rep = Report()
    E = data.A.elements()
    for g in range(data.G.n):
        for a, b in itertools.product(E, repeat=2):
            lhs = c(data.act(g, a), data.act(g, b)) + data.m(g, a, b)
            rhs = c(a, b) + data.m(g, b, a)
            rep.check("braided", (g, a, b), lhs, rhs)
    return rep


# ---- theta and the fermionic obstruction ---------------------------------


def is_f_normalized(data: ActionData) -> bool:
    f = data.target.fermion
    return all(data.m(g, f, f) == ZERO for g in range(data.G.n))


def f_normalize(data: ActionData) -> ActionData:
    """Twist so that mu(g; f, f) = 0 for every g."""
    f = data.target.fermion
    shift = {}
    for g in data.G.nonidentity():
        v = data.m(g, f, f)
        # beta(g; f) = -v/2 kills mu(g;f,f); pick the half with the smaller numerator
        shift[g] = QZ(-v.num, 2 * v.den)
    return data.twisted(lambda g, a: shift.get(g, ZERO) if a == f else ZERO)


def _z2_module(G) -> GModule:
    return GModule.trivial(G, Z2)


def theta_class(data: ActionData) -> Cochain:
    """theta(g, h) = gamma(g, h; f) in Z/2 for f-normalized data."""
    if not is_f_normalized(data):
        raise NormalizationRequired("mu(g; f, f) must vanish; apply f_normalize first")
    f = data.target.fermion
    vals = {}
    for g in data.G.nonidentity():
        for h in data.G.nonidentity():
            v = data.y(g, h, f)
            if v not in (ZERO, HALF):
                raise InvalidInput(f"gamma(g,h;f) = {v} is not in {{0, 1/2}}")
            vals[(g, h)] = (v.scaled_to(2),)
    theta = Cochain(_z2_module(data.G), 2, vals)
    if not is_cocycle(theta):
        raise InvalidInput("theta is not a 2-cocycle; the action data is invalid")
    return theta


def dual_module(rho: GModule) -> GModule:
    """Characters of A with (g.chi)(a) = chi(rho(g)^-1 a)."""
    return rho.dual()


def restriction(rho: GModule, f) -> ShortExactSequence | None:
    """0 -> Ker r -> A^ -> Z/2 -> 0 with r(chi) = chi(f); None when r is trivial."""
    Ahat = dual_module(rho)
    A = rho.M
    G = rho.G
    r_row = [evaluate(A, e, f).scaled_to(2) for e in A.generators()]
    if not any(r_row):
        return None
    Z2mod = _z2_module(G)
    r = ModuleMap(Ahat, Z2mod, [r_row])
    kernel = [chi for chi in Ahat.M.elements() if not any(r(chi))]
    # Ker r as an abstract group, with a basis found inside A^ by brute force
    Kgroup, emb = _subgroup_presentation(Ahat.M, kernel)
    mats = []
    for g in range(G.n):
        img = [Ahat.act(g, emb(e)) for e in Kgroup.generators()]
        mats.append(_coords_matrix(Kgroup, emb, img))
    Kmod = GModule(G, Kgroup, mats)
    i = ModuleMap(Kmod, Ahat, [[emb(e)[row] for e in Kgroup.generators()] for row in range(A.rank)])
    return ShortExactSequence(i, r)


def _subgroup_presentation(M: FinAbGroup, elems: list):
    """A FinAbGroup K and an embedding K -> M onto the subgroup ``elems``."""
    elems = sorted(elems)
    orders = sorted(M.element_order(x) for x in elems)
    for chain in _chains(len(elems)):
        K = FinAbGroup(chain)
        if sorted(K.element_order(x) for x in K.elements()) != orders:
            continue
        for gens in itertools.product(elems, repeat=K.rank):
            if any(M.element_order(x) != n for x, n in zip(gens, K.invariant_factors)):
                continue

            def emb(k, gens=gens):
                out = M.zero()
                for c, x in zip(k, gens):
                    out = M.add(out, M.scale(c, x))
                return out

            if len({emb(k) for k in K.elements()}) == len(elems):
                return K, emb
    raise InvalidInput("could not present the subgroup")


def _chains(n: int) -> list[list[int]]:
    return _divisor_chains(n)


def _coords_matrix(K: FinAbGroup, emb, images) -> list[list[int]]:
    """Matrix of the endomorphism of K sending generator j to emb^-1(images[j])."""
    inv = {emb(k): k for k in K.elements()}
    cols = [inv[x] for x in images]
    return [[cols[j][i] for j in range(K.rank)] for i in range(K.rank)]


@dataclass
class FermionicObstruction:
    """O3(rho, alpha): either a class in H^2(G, Z/2) or d2 of it in H^3(G, Ker r)."""

    branch: str  # "H2" when r is trivial, "H3" otherwise
    cocycle: Cochain
    witness: Cochain | None

    @property
    def vanishes(self) -> bool:
        return self.witness is not None

    def __bool__(self) -> bool:
        return not self.vanishes


def o3_fermionic(theta: Cochain, alpha: Cochain, rho: GModule, f) -> FermionicObstruction:
    """theta - alpha in H^2(G, Z/2) when r is trivial, d2(theta - alpha) in H^3(G, Ker r) otherwise."""
    if theta.degree != 2 or alpha.degree != 2:
        raise InvalidInput("theta and alpha must be 2-cochains")
    diff = Cochain(theta.module, 2, (theta - Cochain(theta.module, 2, alpha.values)).values)
    ses = restriction(rho, f)
    if ses is None:
        return FermionicObstruction("H2", diff, solve_coboundary(diff))
    d2 = connecting_hom(ses, diff)
    return FermionicObstruction("H3", d2, solve_coboundary(d2))


def r_star_kernel_order(rho: GModule, f, n: int = 2) -> int:
    """|Ker(r_*: H^n(G, A^) -> H^n(G, Z/2))|."""
    ses = restriction(rho, f)
    if ses is None:
        return cohomology(dual_module(rho), n).total_order
    return induced_map(ses.p, n).kernel_order()


# ---- the bosonic obstruction ---------------------------------------------


def _char(A: FinAbGroup, fn) -> tuple:
    return character_from_values(A, lambda i: fn(A.generators()[i]))


def o3_bosonic(data: ActionData, check: bool = True) -> Cochain:
    """O3(g,h,l)(a) = gamma(h,l;a) + gamma(g,hl;a) - gamma(gh,l;a) - gamma(g,h;la).

    Returned as a left-module cocycle in Z^3(G, A^) under the reindexing
    (g1, g2, g3) -> (g3^-1, g2^-1, g1^-1).
    """
    rep = verify_action(data)
    if check:
        bad = [v for v in rep.violations if v.rule.startswith(("E1", "normalization(mu)"))]
        if bad:
            raise InvalidMu(f"mu violates the monoidal-functor equation: {bad[0]}")
        if any(v.rule == "E2" for v in rep.violations):
            raise InvalidInput("gamma(g,h;-) is not a monoidal isomorphism (E2 fails)")
    G, A = data.G, data.A
    y, act = data.y, data.act
    Ahat = dual_module(data.rho)
    vals = {}
    for g1, g2, g3 in itertools.product(G.nonidentity(), repeat=3):
        g, h, l = G.inv[g3], G.inv[g2], G.inv[g1]

        def o3(a, g=g, h=h, l=l):
            return y(h, l, a) + y(g, G.mul(h, l), a) - y(G.mul(g, h), l, a) - y(g, h, act(l, a))

        for a in A.elements():
            for b in A.elements():
                if o3(A.add(a, b)) != o3(a) + o3(b):
                    raise InvalidInput("O3 value is not a character")
        vals[(g1, g2, g3)] = _char(A, o3)
    out = Cochain(Ahat, 3, vals)
    if check and not is_cocycle(out):
        raise InvalidInput("O3 is not a 3-cocycle")
    return out


# ---- liftings as linear systems over Z/N -----------------------------------


class LiftingSystem:
    """The equations E1, E2, E3, B for fixed rho, as a linear system over Z/N.

    Unknowns: mu(g;a,b) for g != e, a, b != 0 and gamma(g,h;a) for g, h != e,
    a != 0, valued in (1/N)Z/Z.
    """

    def __init__(self, rho: GModule, target: PointedSpinCategory, N: int):
        self.rho, self.target, self.N = rho, target, N
        G, A = rho.G, target.group
        self.G, self.A = G, A
        nz = [a for a in A.elements() if a != A.zero()]
        ng = G.nonidentity()
        self.mu_keys = [(g, a, b) for g in ng for a in nz for b in nz]
        self.gamma_keys = [(g, h, a) for g in ng for h in ng for a in nz]
        self.beta_keys = [(g, a) for g in ng for a in nz]
        self.idx = {("mu",) + k: i for i, k in enumerate(self.mu_keys)}
        off = len(self.mu_keys)
        self.idx.update({("gamma",) + k: off + i for i, k in enumerate(self.gamma_keys)})
        self.nvars = off + len(self.gamma_keys)
        self._build()

    def _scaled(self, q: QZ) -> int:
        if self.N % q.den:
            raise InvalidInput(f"value {q} is not in (1/{self.N})Z/Z; increase N")
        return q.scaled_to(self.N)

    def _row(self, terms) -> np.ndarray:
        r = np.zeros(self.nvars, dtype=np.int64)
        for key, s in terms:
            i = self.idx.get(key)
            if i is not None:
                r[i] += s
        return r

    def _build(self) -> None:
        G, A, N = self.G, self.A, self.N
        act, add = self.rho.act, A.add
        coc = self.target.cocycle
        E = A.elements()
        rows, rhs = [], []

        def eq(terms, value: QZ):
            r = self._row(terms) % N
            v = self._scaled(value)
            if r.any() or v:
                rows.append(r)
                rhs.append(v)

        for g in range(1, G.n):
            for a, b, c in itertools.product(E, repeat=3):
                eq([(("mu", g, b, c), 1), (("mu", g, a, add(b, c)), 1), (("mu", g, add(a, b), c), -1), (("mu", g, a, b), -1)],
                   coc.w(a, b, c) - coc.w(act(g, a), act(g, b), act(g, c)))
            for a, b in itertools.product(E, repeat=2):
                eq([(("mu", g, a, b), 1), (("mu", g, b, a), -1)], coc.br(a, b) - coc.br(act(g, a), act(g, b)))
        for g in range(G.n):
            for h in range(G.n):
                gh = G.mul(g, h)
                for a, b in itertools.product(E, repeat=2):
                    eq([(("mu", g, act(h, a), act(h, b)), 1), (("mu", h, a, b), 1), (("mu", gh, a, b), -1),
                        (("gamma", g, h, add(a, b)), -1), (("gamma", g, h, a), 1), (("gamma", g, h, b), 1)], ZERO)
        for g, h, k in itertools.product(range(G.n), repeat=3):
            for a in E:
                eq([(("gamma", G.mul(g, h), k, a), 1), (("gamma", g, h, act(k, a)), 1),
                    (("gamma", h, k, a), -1), (("gamma", g, G.mul(h, k), a), -1)], ZERO)
        self.eqs = np.array(rows, dtype=np.int64).reshape(-1, self.nvars)
        self.rhs = np.array(rhs, dtype=np.int64)

    def fermion_rows(self, alpha: Cochain | None):
        """mu(g;f,f) = 0, and gamma(g,h;f) = alpha(g,h)/2 when alpha is given."""
        f = self.target.fermion
        N = self.N
        rows, rhs = [], []
        for g in self.G.nonidentity():
            rows.append(self._row([(("mu", g, f, f), 1)]))
            rhs.append(0)
        if alpha is not None:
            for g in self.G.nonidentity():
                for h in self.G.nonidentity():
                    rows.append(self._row([(("gamma", g, h, f), 1)]))
                    rhs.append(alpha(g, h)[0] * (N // 2))
        return np.array(rows, dtype=np.int64).reshape(-1, self.nvars), np.array(rhs, dtype=np.int64)

    def twist_matrix(self) -> np.ndarray:
        """Columns: the twist of beta = e_(g,a), reduced mod N."""
        return self.twist_matrix_int() % self.N

    def twist_matrix_int(self) -> np.ndarray:
        """Integer matrix of the twist, before reduction."""
        G, A = self.G, self.A
        act = self.rho.act
        T = np.zeros((self.nvars, len(self.beta_keys)), dtype=np.int64)
        bidx = {k: j for j, k in enumerate(self.beta_keys)}

        def add(key, j, s):
            i = self.idx.get(key)
            if i is not None:
                T[i, j] += s

        for (g, x), j in bidx.items():
            for (g2, a, b) in self.mu_keys:
                if g2 == g:
                    add(("mu", g, a, b), j, (a == x) + (b == x) - (A.add(a, b) == x))
            for (g1, h, a) in self.gamma_keys:
                s = 0
                s += g1 == g and act(h, a) == x
                s += h == g and a == x
                s -= G.mul(g1, h) == g and a == x
                add(("gamma", g1, h, a), j, -s)
        return T

    def to_action(self, vec) -> ActionData:
        N = self.N
        mu = {k: QZ(int(vec[self.idx[("mu",) + k]]), N) for k in self.mu_keys}
        gamma = {k: QZ(int(vec[self.idx[("gamma",) + k]]), N) for k in self.gamma_keys}
        return ActionData(self.rho, self.target, mu, gamma)


def default_value_bound(G: FiniteGroup, A: FinAbGroup) -> int:
    """lcm(2|A||G|, 8): the table values of every rank-4 action lie in (1/8)Z/Z."""
    return lcm(2 * A.order() * G.n, 8)


@dataclass
class LiftingEnumeration:
    """Equivalence classes of (alpha-)liftings of rho."""

    rho: GModule
    target: PointedSpinCategory
    alpha: Cochain | None
    N: int
    count: int
    particular: ActionData | None
    solution_count: int = 0
    twist_count: int = 0

    @property
    def nonempty(self) -> bool:
        return self.count > 0

    def __len__(self) -> int:
        return self.count


def _count(system: LiftingSystem, alpha: Cochain | None):
    """(#classes, particular solution, #solutions, #twist images).

    Twists are taken with values in (1/M)Z/Z, M = 2N exp(A): over (1/N)Z/Z
    alone some symmetric solutions of E1 would not be recognised as
    coboundaries.  Only twists whose effect stays in (1/N)Z/Z and preserves
    the fermion constraints act on the solution set.
    """
    N = system.N
    F, Frhs = system.fermion_rows(alpha)
    A = np.vstack([system.eqs, F]) % N
    b = np.concatenate([system.rhs, Frhs]) % N
    x = solve_mod(A, b, N)
    if x is None:
        return 0, None, 0, 0
    _, sol = kernel_mod(A, N)
    M = 2 * N * system.A.exponent()
    T = system.twist_matrix_int()
    _, kt = kernel_mod(T % M, M)
    allowed = np.vstack([(N * T) % M, (F @ T) % M])
    _, b0 = kernel_mod(allowed, M)
    twists = b0 // kt
    if sol % twists:
        raise InvalidInput("twists do not form a subgroup of the solutions")
    return sol // twists, x, sol, twists


def enumerate_liftings(rho: GModule, target: PointedSpinCategory, alpha: Cochain | None = None,
                       N: int | None = None, check_stable: bool = True) -> LiftingEnumeration:
    """Count equivalence classes of liftings of rho to braided actions.

    With ``alpha`` the liftings are restricted to fermionic actions whose
    theta class is alpha.  The count is computed over (1/N)Z/Z and, with
    ``check_stable``, confirmed over (1/2N)Z/Z.
    """
    N = default_value_bound(rho.G, target.group) if N is None else N
    if rho.G.n == 1:
        return LiftingEnumeration(rho, target, alpha, N, 1, ActionData(rho, target), 1, 1)
    system = LiftingSystem(rho, target, N)
    count, x, sol, twists = _count(system, alpha)
    if check_stable:
        c2, _, _, _ = _count(LiftingSystem(rho, target, 2 * N), alpha)
        if c2 != count:
            raise InvalidInput(f"lifting count is not stable in N: {count} at N={N}, {c2} at N={2 * N}")
    part = system.to_action(x) if x is not None else None
    return LiftingEnumeration(rho, target, alpha, N, count, part, sol, twists)


def bosonic_lifting(rho: GModule, target: PointedSpinCategory, N: int | None = None) -> ActionData | None:
    """Some f-normalized braided action realizing rho, or None."""
    N = default_value_bound(rho.G, target.group) if N is None else N
    if rho.G.n == 1:
        return ActionData(rho, target)
    system = LiftingSystem(rho, target, N)
    F, Frhs = system.fermion_rows(None)
    x = solve_mod(np.vstack([system.eqs, F]) % N, np.concatenate([system.rhs, Frhs]) % N, N)
    return None if x is None else system.to_action(x)


# ---- homomorphisms into Aut_br(C, f) ----------------------------------------


def swap_matrix(target: PointedSpinCategory) -> list[list[int]]:
    """The automorphism v -> v + f of a rank-4 fusion group."""
    A = target.group
    v = vertex(target)
    image_v = A.add(v, target.fermion)
    cols = []
    for e in A.generators():
        if e == v:
            cols.append(image_v)
        elif e == target.fermion:
            cols.append(e)
        else:
            raise InvalidInput("unexpected generator")
    if A.rank == 1:
        return [[image_v[0]]]
    return [[cols[j][i] for j in range(A.rank)] for i in range(A.rank)]


def aut_br_rank4(target: PointedSpinCategory) -> list:
    """[identity, swap]; cross-checked against brute-force search over automorphisms."""
    A = target.group
    ident = [[int(i == j) for j in range(A.rank)] for i in range(A.rank)]
    out = [ident, swap_matrix(target)]
    brute = braided_autoequivalences(target)
    key = lambda m: tuple(apply_matrix(A, m, a) for a in A.elements())
    if sorted(map(key, brute)) != sorted(map(key, out)):
        raise InvalidInput("Aut_br(C, f) is not {id, v <-> v+f}")
    return out


def rank4_rhos(G: FiniteGroup, target: PointedSpinCategory) -> list[GModule]:
    """Every homomorphism G -> Aut_br(target, f) ~ Z/2 as a G-module structure on A."""
    auts = aut_br_rank4(target)
    out = []
    for hom in enumerate_homs(G, FiniteGroup.cyclic(2)):
        out.append(GModule(G, target.group, [auts[hom(g)] for g in range(G.n)]))
    return out
