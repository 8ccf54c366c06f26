"""The H^4 obstruction O4(rho~, mu) for pointed braided targets.

For a pointed category every structural morphism is a scalar, so O4 is a
closed-form Q/Z sum of ten terms: one braiding, six associators, one gamma
and two mu terms (written out in ``o4_value``).

The six associator terms follow a closed path of regroupings of a threefold
product whose total is fixed, so every triple of arguments sums to the same
element of A.  The gamma term enters with a minus sign because gamma(g,h)
here is oriented g_* h_* => (gh)_* (see the E2 equation in ``actions``).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .actions import ActionData
from .cohomology import Cochain, cells, coboundary, is_cocycle, qz_module, qz_value, solve_coboundary
from .errors import InvalidInput, NotACocycle
from .qz import QZ


@dataclass
class O4Input:
    """A braided action (g_*, psi^g = mu(g;-,-), phi_{g,h} = gamma(g,h;-)) and mu2 in Z^2_rho(G, A)."""

    action: ActionData
    mu2: Cochain

    def __post_init__(self):
        if self.mu2.degree != 2 or self.mu2.module.M != self.action.A:
            raise InvalidInput("mu2 must be an A-valued 2-cochain")
        if self.mu2.module.matrices != self.action.rho.matrices:
            raise InvalidInput("mu2 must use the action's rho module")
        if not is_cocycle(self.mu2):
            raise NotACocycle("mu2 is not a 2-cocycle for rho")


def _denominator(inp: O4Input) -> int:
    d = [8]
    coc = inp.action.target.cocycle
    d += [q.den for q in coc.omega.values()] + [q.den for q in coc.c.values()]
    d += [q.den for q in inp.action.mu.values()] + [q.den for q in inp.action.gamma.values()]
    return lcm(*d)


def o4_value(inp: O4Input, g1: int, g2: int, g3: int, g4: int) -> QZ:
    data = inp.action
    G, A = data.G, data.A
    w, c = data.target.cocycle.w, data.target.cocycle.br
    mul, act = G.mul, data.act
    m = lambda g, h: inp.mu2(g, h)
    g12, g23, g34 = mul(g1, g2), mul(g2, g3), mul(g3, g4)
    g123, g234 = mul(g12, g3), mul(g2, g34)
    m12, m23, m34 = m(g1, g2), m(g2, g3), m(g3, g4)
    t34 = act(g12, m34)  # (g1 g2)_* mu_{g3,g4}
    s23 = act(g1, m23)  # (g1)_* mu_{g2,g3}
    return (
        c(m12, t34)
        + w(t34, m12, m(g12, g34))
        - w(t34, act(g1, m(g2, g34)), m(g1, g234))
        + w(s23, act(g1, m(g23, g4)), m(g1, g234))
        - w(s23, m(g1, g23), m(g123, g4))
        + w(m12, m(g12, g3), m(g123, g4))
        - w(m12, t34, m(g12, g34))
        - data.y(g1, g2, m34)
        - data.m(g1, act(g2, m34), m(g2, g34))
        + data.m(g1, m23, m(g23, g4))
    )


def o4(inp: O4Input, check: bool = True) -> Cochain:
    """O4 as a 4-cochain in (1/N)Z/Z; with ``check`` asserts d(O4) = 0."""
    N = _denominator(inp)
    G = inp.action.G
    M = qz_module(G, N)
    vals = {x: (o4_value(inp, *x).scaled_to(N),) for x in cells(G, 4)}
    out = Cochain(M, 4, vals)
    if check and not coboundary(out).is_zero():
        raise NotACocycle("O4 is not a 4-cocycle; the input action is inconsistent")
    return out


@dataclass
class O4Verdict:
    vanishes: bool
    cocycle: Cochain
    witness: Cochain | None  # x with dx = O4, values in (1/(N|G|))Z/Z

    def __bool__(self) -> bool:
        return self.vanishes


def o4_vanishes(inp: O4Input) -> O4Verdict:
    """Decide [O4] = 0 in H^4(G, Q/Z) by a linear solve.

    A Q/Z-valued primitive can always be chosen in (1/(N|G|))Z/Z because
    H^3(G, Q/Z) is killed by |G|, so solving there is exact.
    """
    O = o4(inp)
    N = O.module.M.exponent() if O.module.M.rank else 1
    G = inp.action.G
    K = N * G.n
    lifted = Cochain(qz_module(G, K), 4, {k: (v[0] * (K // N),) for k, v in O.values.items()})
    x = solve_coboundary(lifted)
    return O4Verdict(x is not None, O, x)


def o4_values(O: Cochain) -> dict:
    """Nonzero values of an O4 cochain as QZ."""
    return {k: qz_value(O, *k) for k in O.values}
