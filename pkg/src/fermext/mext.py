"""Counting minimal modular extensions of Rep(G~, z) through SVec.

For a pointed target C the preimage of C under D is parametrized by
triples (rho, mu, phi): rho: G -> Aut_br(C, f) with vanishing fermionic
obstruction, mu a class in Ker(r_*) subset H^2_rho(G, A) whose O4
obstruction vanishes, and phi in a torsor over H^3(G, Q/Z).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .actions import enumerate_liftings, o3_fermionic, rank4_rhos, theta_class
from .braided import MextElement, bicharacter, mext_catalog
from .cohomology import Cochain, ModuleMap, cohomology, induced_map, qz_cohomology
from .errors import InvalidInput
from .groups import FinAbGroup, GModule, SuperGroup
from .obstruction import O4Input, o4_vanishes

Z2 = FinAbGroup([2])


def alpha_cochain(sg: SuperGroup) -> Cochain:
    return Cochain(GModule.trivial(sg.G, Z2), 2, {k: (v,) for k, v in sg.alpha.items()})


def monodromy_with_fermion(rho: GModule, target) -> ModuleMap:
    """a -> b(a, f) in Z/2: the restriction r under A ~ A^ (non-degenerate braiding)."""
    b = bicharacter(target)
    row = [b[(e, target.fermion)].scaled_to(2) for e in target.group.generators()]
    return ModuleMap(rho, GModule.trivial(rho.G, Z2), [row])


@dataclass
class LiftingTriple:
    rho: GModule
    mu_class: tuple  # coordinates in H^2_rho(G, A)
    phi_class: tuple  # coordinates in H^3(G, Q/Z)


@dataclass
class RhoBranch:
    """Data for one rho: obstruction status and the surviving mu classes."""

    rho: GModule
    o3_vanishes: bool
    mu_classes: list = field(default_factory=list)
    mu_rejected: int = 0


@dataclass
class TargetCount:
    target: MextElement
    homs: int = 0
    mu: int = 0
    phi: int = 0
    count: int = 0
    derived_by_fiber_symmetry: bool = False
    branches: list = field(default_factory=list)

    def row(self) -> dict:
        return {"target": self.target.name, "homs": self.homs, "mu": self.mu, "phi": self.phi,
                "count": self.count, "derived_by_fiber_symmetry": self.derived_by_fiber_symmetry}


def h3_order(G) -> int:
    return qz_cohomology(G, 3).total_order


def _branches(target: MextElement, sg: SuperGroup) -> list[RhoBranch]:
    cat = target.category
    alpha = alpha_cochain(sg)
    f = cat.fermion
    out = []
    for rho in rank4_rhos(sg.G, cat):
        lift = enumerate_liftings(rho, cat, None, check_stable=False)
        if not lift.nonempty:
            out.append(RhoBranch(rho, False))
            continue
        theta = theta_class(lift.particular)
        if not o3_fermionic(theta, alpha, rho, f).vanishes:
            out.append(RhoBranch(rho, False))
            continue
        action = enumerate_liftings(rho, cat, alpha).particular
        H = cohomology(rho, 2)
        kernel = induced_map(monodromy_with_fermion(rho, cat), 2).kernel()
        branch = RhoBranch(rho, True)
        for coords in kernel:
            mu2 = Cochain(rho, 2, {})
            for k, rep in zip(coords, H.representatives):
                mu2 = mu2 + rep.scale(k)
            if o4_vanishes(O4Input(action, mu2)).vanishes:
                branch.mu_classes.append(coords)
            else:
                branch.mu_rejected += 1
        out.append(branch)
    return out


def count_preimage(target: MextElement, sg: SuperGroup, detail: bool = False):
    """Number of lifting triples over ``target`` (a TargetCount with ``detail``)."""
    tc = TargetCount(target)
    if not target.is_pointed:
        # no triple parametrization on the Ising side; see count_mext
        tc.count = 0
        return tc if detail else 0
    phi = h3_order(sg.G)
    tc.phi = phi
    tc.branches = _branches(target, sg)
    for b in tc.branches:
        if b.o3_vanishes and b.mu_classes:
            tc.homs += 1
            tc.mu += len(b.mu_classes)
    tc.count = tc.mu * phi
    return tc if detail else tc.count


def lifting_triples(target: MextElement, sg: SuperGroup) -> list[LiftingTriple]:
    """Every triple explicitly, with phi running over H^3(G, Q/Z)."""
    tc = count_preimage(target, sg, detail=True)
    H3 = qz_cohomology(sg.G, 3)
    phis = list(itertools.product(*(range(n) for n in H3.invariant_factors)))
    return [LiftingTriple(b.rho, mu, phi) for b in tc.branches for mu in b.mu_classes for phi in phis]


def d_image_membership(target: MextElement, sg: SuperGroup) -> bool:
    if not target.is_pointed:
        return sg.is_trivial_class()
    return count_preimage(target, sg) > 0


@dataclass
class MextCount:
    supergroup: SuperGroup
    per_target: dict
    total: int
    kernel_order: int
    image_size: int
    rows: list

    @property
    def fibers_equal(self) -> bool:
        return all(c in (0, self.kernel_order) for c in self.per_target.values())

    @property
    def group_total(self) -> int:
        """|Ker D| x |Im D|, the order forced by the group structure of M_ext."""
        return self.kernel_order * self.image_size

    def to_json(self) -> dict:
        return {
            "supergroup": self.supergroup.to_json(),
            "total": self.total,
            "kernel": self.kernel_order,
            "image": self.image_size,
            "fibers_equal": self.fibers_equal,
            "kernel_times_image": self.group_total,
            "targets": [r.row() for r in self.rows],
        }


def count_mext(sg: SuperGroup, targets: list[str] | None = None) -> MextCount:
    """Per-target triple counts, total, |Ker D| and |Im D|.

    Ising targets lie in the image exactly when alpha is a coboundary; their
    fibers are then given the kernel size (fibers of a group homomorphism are
    cosets of its kernel) and flagged as derived by fiber symmetry.
    """
    catalog = mext_catalog()
    rows = []
    for e in catalog:
        if e.is_pointed:
            rows.append(count_preimage(e, sg, detail=True))
    kernel = next(r.count for r in rows if r.target.name == "toric")
    trivial = sg.is_trivial_class()
    for e in catalog:
        if not e.is_pointed:
            rows.append(TargetCount(e, count=kernel if trivial else 0, derived_by_fiber_symmetry=True))
    if targets is not None:
        names = {e.name for e in catalog}
        bad = [t for t in targets if t not in names]
        if bad:
            raise InvalidInput(f"unknown target {bad[0]!r}")
        rows = [r for r in rows if r.target.name in targets]
    per = {r.target.name: r.count for r in rows}
    total = sum(per.values())
    image = sum(1 for v in per.values() if v)
    return MextCount(sg, per, total, kernel, image, rows)
