"""A small free resolution obtained by reducing the normalized bar resolution.

The bar resolution B_n has one free ZG-generator [g1|...|gn] per tuple of
non-identity elements.  Whenever the boundary of a cell a in degree k+1 has a
unit coefficient u = +-h on a cell b in degree k, the pair (a, b) can be
cancelled (algebraic Morse theory / Gaussian elimination of chain complexes).
The result is a homotopy equivalent complex F with very few cells in low
degrees, together with

* the projection B -> F, so a cochain on F pulls back to a bar cochain, and
* the inclusion F -> B, so a bar cochain restricts to F.

Ring elements of ZG are dicts {group index: integer}.
"""
from __future__ import annotations

import itertools
from collections import defaultdict

from .groups import FiniteGroup


def zg_mul(G: FiniteGroup, r: dict, s: dict) -> dict:
    out: dict = defaultdict(int)
    for g, a in r.items():
        row = G.table[g]
        for h, b in s.items():
            out[row[h]] += a * b
    return {k: v for k, v in out.items() if v}


def zg_add_into(target: dict, r: dict, scale: int = 1) -> None:
    for g, a in r.items():
        v = target.get(g, 0) + scale * a
        if v:
            target[g] = v
        else:
            target.pop(g, None)


def _unit(r: dict):
    """(h, sign) if r = sign*h, else None."""
    if len(r) == 1:
        (h, a), = r.items()
        if a in (1, -1):
            return h, a
    return None


def bar_boundary(G: FiniteGroup, cell: tuple) -> dict:
    """Boundary of a normalized bar cell as {cell: ZG element}."""
    n = len(cell)
    out: dict = defaultdict(lambda: defaultdict(int))
    if n == 0:
        return {}
    out[cell[1:]][cell[0]] += 1
    for i in range(n - 1):
        p = G.table[cell[i]][cell[i + 1]]
        if p:
            out[cell[:i] + (p,) + cell[i + 2:]][0] += (-1) ** (i + 1)
    out[cell[:-1]][0] += (-1) ** n
    return {c: {g: a for g, a in r.items() if a} for c, r in out.items() if any(r.values())}


class ReducedResolution:
    """The reduced complex of G up to degree ``top`` (boundaries into degree top-1 and below)."""

    def __init__(self, G: FiniteGroup, top: int):
        self.G = G
        self.top = top
        nonid = G.nonidentity()
        cells = [list(itertools.product(nonid, repeat=k)) for k in range(top + 1)]
        # bd[k][a] = {b: r} for a in degree k; co[k][b] = {a: r} for b in degree k
        bd = [dict() for _ in range(top + 1)]
        co = [defaultdict(dict) for _ in range(top + 1)]
        for k in range(1, top + 1):
            for a in cells[k]:
                d = bar_boundary(G, a)
                bd[k][a] = d
                for b, r in d.items():
                    co[k - 1][b][a] = r
        alive = [set(c) for c in cells]
        # projection data: lower cell b -> {c: coefficient} meaning b = sum coeff*c
        self._proj: dict = {}
        self._killed_upper: set = set()
        # inclusion data per degree of the upper cell: list of (a, uinv, {e: kappa_e})
        self._incl: list[list] = [[] for _ in range(top + 1)]
        for k in range(top):
            for b in cells[k]:
                if b not in alive[k]:
                    continue
                cands = [a for a, r in co[k][b].items() if _unit(r) is not None]
                if not cands:
                    continue
                a = min(cands, key=lambda a: (len(bd[k + 1][a]), a))
                self._eliminate(k, a, b, bd, co, alive)
        self.cells = [sorted(a) for a in alive]
        self.bd = [{a: dict(bd[k][a]) for a in self.cells[k]} if k else {} for k in range(top + 1)]

    def _eliminate(self, k, a, b, bd, co, alive):
        G = self.G
        h, sign = _unit(bd[k + 1][a][b])
        uinv = {G.inv[h]: sign}
        da = dict(bd[k + 1][a])
        del da[b]
        # w_c = u^{-1} lambda_c
        w = {c: zg_mul(G, uinv, lam) for c, lam in da.items()}
        self._proj[b] = {c: {g: -x for g, x in wc.items()} for c, wc in w.items()}
        self._killed_upper.add(a)
        kappa = {e: r for e, r in co[k][b].items() if e != a}
        self._incl[k + 1].append((a, uinv, kappa))
        # remove a and b from the boundary structure
        for c in bd[k + 1][a]:
            del co[k][c][a]
        del bd[k + 1][a]
        for e in kappa:
            del bd[k + 1][e][b]
        del co[k][b]
        for e, ke in kappa.items():
            de = bd[k + 1][e]
            for c, wc in w.items():
                prod = zg_mul(G, ke, wc)
                cur = dict(de.get(c, {}))
                zg_add_into(cur, prod, -1)
                if cur:
                    de[c] = cur
                    co[k][c][e] = cur
                else:
                    de.pop(c, None)
                    co[k][c].pop(e, None)
        if k + 2 <= self.top:
            for x in list(co[k + 1].get(a, {})):
                del bd[k + 2][x][a]
            co[k + 1].pop(a, None)
        if k >= 1:
            for y in bd[k].pop(b, {}):
                co[k - 1][y].pop(b, None)
        alive[k].discard(b)
        alive[k + 1].discard(a)

    def project(self, cell: tuple) -> dict:
        """Image of a bar cell in F as {reduced cell: ZG element}."""
        memo = self.__dict__.setdefault("_memo", {})
        if cell in memo:
            return memo[cell]
        if cell in self._killed_upper:
            out = {}
        elif cell in self._proj:
            out: dict = {}
            for c, coef in self._proj[cell].items():
                for x, r in self.project(c).items():
                    cur = out.setdefault(x, {})
                    zg_add_into(cur, zg_mul(self.G, coef, r))
                    if not cur:
                        del out[x]
        else:
            out = {cell: {0: 1}}
        memo[cell] = out
        return out

    def include(self, cell: tuple) -> dict:
        """Image of a reduced cell in the bar resolution as {bar cell: ZG element}."""
        G = self.G
        expr = {cell: {0: 1}}
        for a, uinv, kappa in reversed(self._incl[len(cell)]):
            acc: dict = {}
            for y, ry in expr.items():
                ky = kappa.get(y)
                if ky:
                    zg_add_into(acc, zg_mul(G, ry, zg_mul(G, ky, uinv)), -1)
            if acc:
                cur = expr.setdefault(a, {})
                zg_add_into(cur, acc)
                if not cur:
                    del expr[a]
        return expr
