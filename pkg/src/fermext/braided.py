"""Pointed braided fusion categories Vec_A^(omega, c) and the rank-4 catalog.

An abelian 3-cocycle (omega, c) on A with values in Q/Z satisfies the two
hexagon identities (additive form)

    c(g, h+k) - c(g, h) - c(g, k) = omega(g,h,k) + omega(h,k,g) - omega(h,g,k)
    c(g+h, k) - c(g, k) - c(h, k) = omega(g,k,h) - omega(g,h,k) - omega(k,g,h)

Its class is determined by the quadratic form q(l) = c(l, l).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, InvalidFermion, InvalidInput, InvalidParameter
from .groups import FinAbGroup
from .qz import HALF, QZ, ZERO
from .report import Report
from .zmod import kernel_mod

KLEIN = FinAbGroup([2, 2])
Z4 = FinAbGroup([4])


@dataclass
class AbelianThreeCocycle:
    """omega: A^3 -> Q/Z and c: A^2 -> Q/Z as dicts on element tuples (missing = 0)."""

    group: FinAbGroup
    omega: dict
    c: dict

    def w(self, a, b, c) -> QZ:
        return self.omega.get((a, b, c), ZERO)

    def br(self, a, b) -> QZ:
        return self.c.get((a, b), ZERO)

    @classmethod
    def from_functions(cls, A: FinAbGroup, omega_fn, c_fn) -> "AbelianThreeCocycle":
        E = A.elements()
        omega = {}
        for t in itertools.product(E, repeat=3):
            v = omega_fn(*t)
            if v:
                omega[t] = v
        c = {}
        for t in itertools.product(E, repeat=2):
            v = c_fn(*t)
            if v:
                c[t] = v
        return cls(A, omega, c)

    def __add__(self, other: "AbelianThreeCocycle") -> "AbelianThreeCocycle":
        A = self.group
        return AbelianThreeCocycle.from_functions(
            A, lambda a, b, c: self.w(a, b, c) + other.w(a, b, c), lambda a, b: self.br(a, b) + other.br(a, b)
        )

    def denominator(self) -> int:
        d = 1
        for v in list(self.omega.values()) + list(self.c.values()):
            d = d * v.den // np.gcd(d, v.den)
        return int(d)

    def to_json(self) -> dict:
        A = self.group
        lab = lambda a: ",".join(map(str, a))
        return {
            "group": A.to_json(),
            "omega": {"|".join(map(lab, k)): str(v) for k, v in sorted(self.omega.items())},
            "c": {"|".join(map(lab, k)): str(v) for k, v in sorted(self.c.items())},
        }


def verify_abelian_cocycle(data: AbelianThreeCocycle) -> Report:
    """Check normalization, both hexagons and the 3-cocycle condition on omega."""
    A, w, c = data.group, data.w, data.br
    E = A.elements()
    z = A.zero()
    rep = Report()
    add = A.add
    for a in E:
        rep.check("normalization(c)", (z, a), c(z, a), ZERO)
        rep.check("normalization(c)", (a, z), c(a, z), ZERO)
        for b in E:
            rep.check("normalization(omega)", (z, a, b), w(z, a, b), ZERO)
            rep.check("normalization(omega)", (a, z, b), w(a, z, b), ZERO)
            rep.check("normalization(omega)", (a, b, z), w(a, b, z), ZERO)
    for g, h, k in itertools.product(E, repeat=3):
        rep.check("hexagon1", (g, h, k), c(g, add(h, k)) - c(g, h) - c(g, k), w(g, h, k) + w(h, k, g) - w(h, g, k))
        rep.check("hexagon2", (g, h, k), c(add(g, h), k) - c(g, k) - c(h, k), w(g, k, h) - w(g, h, k) - w(k, g, h))
    for a, b, cc, d in itertools.product(E, repeat=4):
        lhs = w(b, cc, d) - w(add(a, b), cc, d) + w(a, add(b, cc), d) - w(a, b, add(cc, d)) + w(a, b, cc)
        rep.check("pentagon", (a, b, cc, d), lhs, ZERO)
    return rep


@dataclass
class PointedSpinCategory:
    """A pointed braided category with a distinguished fermion f."""

    cocycle: AbelianThreeCocycle
    fermion: tuple
    label: str = ""
    k_invariant: QZ | None = None

    def __post_init__(self):
        A = self.cocycle.group
        self.fermion = A.reduce(self.fermion)
        if A.element_order(self.fermion) != 2:
            raise InvalidFermion(f"fermion {list(self.fermion)} does not have order 2")
        if self.cocycle.br(self.fermion, self.fermion) != HALF:
            raise InvalidFermion(f"c(f,f) = {self.cocycle.br(self.fermion, self.fermion)}, expected 1/2")

    @property
    def group(self) -> FinAbGroup:
        return self.cocycle.group

    def __str__(self) -> str:
        return self.label or f"Vec_{self.group}"


def build_rank4(family: str, k) -> PointedSpinCategory:
    """The rank-4 spin-modular category with fusion group Klein or Z/4 and q(v) = k."""
    k = QZ.parse(k) if not isinstance(k, QZ) else k
    family = family.lower()
    if family in ("klein", "z2xz2"):
        if 4 * k != ZERO:
            raise InvalidParameter(f"Klein family needs 4k = 0, got k = {k}")

        def omega(x, y, z):
            return 2 * k * x[0] if y[0] + z[0] >= 2 else ZERO

        def c(x, y):
            return HALF * ((x[0] + x[1]) * y[1]) + k * (x[0] * y[0])

        cat = PointedSpinCategory(AbelianThreeCocycle.from_functions(KLEIN, omega, c), (0, 1), k_invariant=k)
    elif family in ("z4", "cyclic"):
        if 4 * k != HALF:
            raise InvalidParameter(f"Z/4 family needs 4k = 1/2, got k = {k}")

        def omega(x, y, z):
            return HALF * x[0] if y[0] + z[0] >= 4 else ZERO

        def c(x, y):
            return k * (x[0] * y[0])

        cat = PointedSpinCategory(AbelianThreeCocycle.from_functions(Z4, omega, c), (2,), k_invariant=k)
    else:
        raise InvalidParameter(f"unknown family {family!r}")
    cat.label = rank4_name(family, k)
    return cat


def rank4_name(family: str, k: QZ) -> str:
    if family.lower() in ("klein", "z2xz2"):
        return {"0": "toric", "1/2": "3f", "1/4": "semion2+", "3/4": "semion2-"}[str(k)]
    return f"z4-k{k}"


def vertex(cat: PointedSpinCategory) -> tuple:
    """The generator v of the rank-4 presentation."""
    return (1, 0) if cat.group == KLEIN else (1,)


def quadratic_form(cat) -> dict:
    coc = cat.cocycle if isinstance(cat, PointedSpinCategory) else cat
    A = coc.group
    q = {a: coc.br(a, a) for a in A.elements()}
    for a in A.elements():
        if q[A.neg(a)] != q[a]:
            raise InvalidInput(f"q(-l) != q(l) at {a}")
    return q


def bicharacter(cat) -> dict:
    coc = cat.cocycle if isinstance(cat, PointedSpinCategory) else cat
    A = coc.group
    q = {a: coc.br(a, a) for a in A.elements()}
    b = {(x, y): q[A.add(x, y)] - q[x] - q[y] for x in A.elements() for y in A.elements()}
    for x, y, z in itertools.product(A.elements(), repeat=3):
        if b[(A.add(x, y), z)] != b[(x, z)] + b[(y, z)]:
            raise InvalidInput(f"b_q is not bilinear at {(x, y, z)}")
    return b


def is_quadratic_form(A: FinAbGroup, q: dict) -> bool:
    E = A.elements()
    if any(q[A.neg(a)] != q[a] for a in E):
        return False
    b = {(x, y): q[A.add(x, y)] - q[x] - q[y] for x in E for y in E}
    return all(b[(A.add(x, y), z)] == b[(x, z)] + b[(y, z)] for x, y, z in itertools.product(E, repeat=3))


def muger_center(cat) -> list:
    """Radical of b_q, i.e. the objects whose double braiding with everything is trivial."""
    coc = cat.cocycle if isinstance(cat, PointedSpinCategory) else cat
    A = coc.group
    b = bicharacter(coc)
    return [y for y in A.elements() if all(b[(y, x)] == ZERO for x in A.elements())]


def is_nondegenerate(cat) -> bool:
    return len(muger_center(cat)) == 1


def fermions(cat) -> list:
    coc = cat.cocycle if isinstance(cat, PointedSpinCategory) else cat
    A = coc.group
    return [a for a in A.elements() if a != A.zero() and A.element_order(a) == 2 and coc.br(a, a) == HALF]


def automorphisms(A: FinAbGroup) -> list[list[list[int]]]:
    """All automorphisms of A as integer matrices (column j = image of e_j)."""
    images = []
    for j, n in enumerate(A.invariant_factors):
        images.append([a for a in A.elements() if n % A.element_order(a) == 0])
    out = []
    for choice in itertools.product(*images):
        mat = [[choice[j][i] for j in range(A.rank)] for i in range(A.rank)]
        ok = all(mat[i][j] * nj % ni == 0 for i, ni in enumerate(A.invariant_factors)
                 for j, nj in enumerate(A.invariant_factors))
        if not ok:
            continue
        f = lambda a: tuple(sum(mat[i][j] * a[j] for j in range(A.rank)) % n for i, n in enumerate(A.invariant_factors))
        if len({f(a) for a in A.elements()}) == A.order():
            out.append(mat)
    return out


def apply_matrix(A: FinAbGroup, mat, a) -> tuple:
    return tuple(sum(mat[i][j] * a[j] for j in range(A.rank)) % n for i, n in enumerate(A.invariant_factors))


def braided_autoequivalences(cat: PointedSpinCategory) -> list:
    """Automorphisms of A preserving q and fixing f (= Aut_br(cat, f) on isomorphism classes)."""
    A = cat.group
    q = quadratic_form(cat)
    out = []
    for mat in automorphisms(A):
        if apply_matrix(A, mat, cat.fermion) != cat.fermion:
            continue
        if all(q[apply_matrix(A, mat, a)] == q[a] for a in A.elements()):
            out.append(mat)
    return out


@dataclass(frozen=True)
class MextElement:
    """One of the 16 minimal modular extensions of SVec."""

    name: str
    kind: str  # "pointed" or "ising"
    zeta_index: int | None = None

    @property
    def category(self) -> PointedSpinCategory | None:
        if self.kind != "pointed":
            return None
        return catalog_category(self.name)

    @property
    def is_pointed(self) -> bool:
        return self.kind == "pointed"


POINTED_NAMES = ["toric", "semion2+", "3f", "semion2-", "z4-k1/8", "z4-k3/8", "z4-k5/8", "z4-k7/8"]
_PARAMS = {
    "toric": ("klein", "0"), "semion2+": ("klein", "1/4"), "3f": ("klein", "1/2"), "semion2-": ("klein", "3/4"),
    "z4-k1/8": ("z4", "1/8"), "z4-k3/8": ("z4", "3/8"), "z4-k5/8": ("z4", "5/8"), "z4-k7/8": ("z4", "7/8"),
}
_CACHE: dict = {}


def catalog_category(name: str) -> PointedSpinCategory:
    if name not in _PARAMS:
        raise InvalidParameter(f"unknown pointed catalog entry {name!r}")
    if name not in _CACHE:
        fam, k = _PARAMS[name]
        _CACHE[name] = build_rank4(fam, k)
    return _CACHE[name]


def mext_catalog() -> list[MextElement]:
    """The 8 pointed and 8 Ising modular extensions of SVec."""
    out = [MextElement(n, "pointed") for n in POINTED_NAMES]
    out += [MextElement(f"ising{i}", "ising", i) for i in range(8)]
    return out


def catalog_entry(name: str) -> MextElement:
    for e in mext_catalog():
        if e.name == name:
            return e
    raise InvalidParameter(f"unknown catalog entry {name!r}")


# ---- H^3_ab by linear algebra over Z/N ---------------------------------


@dataclass
class _AbelianSystem:
    A: FinAbGroup
    N: int
    triples: list
    pairs: list
    eqs: np.ndarray
    coboundaries: list = field(default_factory=list)

    def to_cocycle(self, vec) -> AbelianThreeCocycle:
        n3 = len(self.triples)
        omega = {t: QZ(int(vec[i]), self.N) for i, t in enumerate(self.triples) if vec[i] % self.N}
        c = {p: QZ(int(vec[n3 + i]), self.N) for i, p in enumerate(self.pairs) if vec[n3 + i] % self.N}
        return AbelianThreeCocycle(self.A, omega, c)


def _abelian_system(A: FinAbGroup, N: int) -> _AbelianSystem:
    nz = [a for a in A.elements() if a != A.zero()]
    triples = list(itertools.product(nz, repeat=3))
    pairs = list(itertools.product(nz, repeat=2))
    ti = {t: i for i, t in enumerate(triples)}
    pi = {p: len(triples) + i for i, p in enumerate(pairs)}
    nv = len(triples) + len(pairs)
    rows = []
    E = A.elements()

    def row(terms):
        r = np.zeros(nv, dtype=np.int64)
        for key, s in terms:
            idx = ti.get(key) if len(key) == 3 else pi.get(key)
            if idx is not None:
                r[idx] += s
        return r % N

    add = A.add
    for g, h, k in itertools.product(E, repeat=3):
        rows.append(row([((g, add(h, k)), 1), ((g, h), -1), ((g, k), -1),
                         ((g, h, k), -1), ((h, k, g), -1), ((h, g, k), 1)]))
        rows.append(row([((add(g, h), k), 1), ((g, k), -1), ((h, k), -1),
                         ((g, k, h), -1), ((g, h, k), 1), ((k, g, h), 1)]))
    for a, b, c, d in itertools.product(E, repeat=4):
        rows.append(row([((b, c, d), 1), ((add(a, b), c, d), -1), ((a, add(b, c), d), 1),
                         ((a, b, add(c, d)), -1), ((a, b, c), 1)]))
    eqs = np.array([r for r in rows if r.any()], dtype=np.int64).reshape(-1, nv)
    sysm = _AbelianSystem(A, N, triples, pairs, eqs)
    # coboundary of alpha = e_{(x,y)}: omega = d(alpha), c = alpha(g,h) - alpha(h,g)
    for x in pairs:
        vec = np.zeros(nv, dtype=np.int64)
        for (a, b, c) in triples:
            val = 0
            val += (b, c) == x
            val -= (add(a, b), c) == x
            val += (a, add(b, c)) == x
            val -= (a, b) == x
            vec[ti[(a, b, c)]] += val
        for (g, h) in pairs:
            vec[pi[(g, h)]] += ((g, h) == x) - ((h, g) == x)
        sysm.coboundaries.append(vec % N)
    return sysm


def abelian_coboundary(A: FinAbGroup, alpha) -> AbelianThreeCocycle:
    """(omega, c) = (d alpha, alpha(g,h) - alpha(h,g)) for alpha: A^2 -> Q/Z."""
    add = A.add
    return AbelianThreeCocycle.from_functions(
        A,
        lambda a, b, c: alpha(b, c) - alpha(add(a, b), c) + alpha(a, add(b, c)) - alpha(a, b),
        lambda g, h: alpha(g, h) - alpha(h, g),
    )


@dataclass
class H3abClass:
    q: dict
    representative: AbelianThreeCocycle

    def key(self) -> tuple:
        return tuple(self.q[a] for a in sorted(self.q))


@dataclass
class H3abResult:
    group: FinAbGroup
    N: int
    classes: list
    cocycle_count: int
    coboundary_count: int

    def __len__(self) -> int:
        return len(self.classes)


def abelian_cocycle_generators(A: FinAbGroup, N: int) -> tuple[list[AbelianThreeCocycle], int]:
    """Generators of Z^3_ab(A, (1/N)Z/Z) and its order."""
    sysm = _abelian_system(A, N)
    gens, order = kernel_mod(sysm.eqs, N)
    return [sysm.to_cocycle(g) for g in gens], order


def classify_h3ab(A: FinAbGroup, N: int | None = None, budget: int = 10**7) -> H3abResult:
    """H^3_ab(A, (1/N)Z/Z): classes of abelian 3-cocycles keyed by their quadratic form."""
    N = 8 * A.exponent() if N is None else N
    if A.order() ** 3 * N > budget:
        raise BudgetExceeded(f"|A|^3 N = {A.order() ** 3 * N} exceeds budget {budget}")
    if A.order() == 1:
        return H3abResult(A, N, [H3abClass({A.zero(): ZERO}, AbelianThreeCocycle(A, {}, {}))], 1, 1)
    sysm = _abelian_system(A, N)
    gens, zorder = kernel_mod(sysm.eqs, N)
    B = np.array(sysm.coboundaries, dtype=np.int64).T
    _, kernel_of_alpha = kernel_mod(B, N)
    border = N ** B.shape[1] // kernel_of_alpha
    E = A.elements()
    n3 = len(sysm.triples)
    pidx = {p: n3 + i for i, p in enumerate(sysm.pairs)}

    def qvec(vec):
        return tuple(int(vec[pidx[(a, a)]]) % N if a != A.zero() else 0 for a in E)

    # span of the q-images, remembering a preimage for each
    start = np.zeros(n3 + len(sysm.pairs), dtype=np.int64)
    seen = {qvec(start): start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = (v + g) % N
                key = qvec(w)
                if key not in seen:
                    seen[key] = w
                    nxt.append(w)
        frontier = nxt
    classes = []
    for key in sorted(seen):
        rep = sysm.to_cocycle(seen[key])
        q = {a: QZ(x, N) for a, x in zip(E, key)}
        classes.append(H3abClass(q, rep))
    if zorder // border != len(classes):
        raise InvalidInput(
            f"quadratic form is not a complete invariant here: |Z|/|B| = {zorder // border}, forms = {len(classes)}"
        )
    return H3abResult(A, N, classes, zorder, border)


def enumerate_abelian_cocycles(A: FinAbGroup, N: int, limit: int = 10**4) -> list[AbelianThreeCocycle]:
    """Every element of Z^3_ab(A, (1/N)Z/Z); refuses when there are more than ``limit``."""
    sysm = _abelian_system(A, N)
    gens, order = kernel_mod(sysm.eqs, N)
    if order > limit:
        raise BudgetExceeded(f"{order} abelian cocycles exceed limit {limit}")
    start = np.zeros(sysm.eqs.shape[1], dtype=np.int64)
    seen = {tuple(start)}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = (v + g) % N
                if tuple(w) not in seen:
                    seen.add(tuple(w))
                    nxt.append(w)
        frontier = nxt
    return [sysm.to_cocycle(np.array(v)) for v in sorted(seen)]


def combine_abelian_cocycles(gens: list[AbelianThreeCocycle], coeffs) -> AbelianThreeCocycle:
    A = gens[0].group
    out = AbelianThreeCocycle(A, {}, {})
    for g, k in zip(gens, coeffs):
        out = out + AbelianThreeCocycle(A, {t: k * v for t, v in g.omega.items()}, {t: k * v for t, v in g.c.items()})
    return out
