"""Fermionic obstruction against lifting enumeration for every (G, rho, alpha, target), |G| in {2, 4}."""
import argparse
from dataclasses import dataclass

from fermext.actions import (
    bosonic_lifting,
    enumerate_liftings,
    f_normalize,
    o3_fermionic,
    r_star_kernel_order,
    rank4_rhos,
    theta_class,
)
from fermext.braided import POINTED_NAMES, catalog_category
from fermext.cohomology import cohomology
from fermext.groups import FinAbGroup, FiniteGroup, GModule

GROUPS = {"Z2": FiniteGroup.cyclic(2), "Z4": FiniteGroup.cyclic(4), "Z2xZ2": FiniteGroup.from_abelian(FinAbGroup([2, 2]))}


@dataclass
class Config:
    groups: tuple = ("Z2", "Z4", "Z2xZ2")
    verbose: bool = False


def main(cfg: Config) -> int:
    bad = total = 0
    for gname in cfg.groups:
        G = GROUPS[gname]
        alphas = cohomology(GModule.trivial(G, FinAbGroup([2])), 2).all_representatives()
        for name in POINTED_NAMES:
            cat = catalog_category(name)
            for rho in rank4_rhos(G, cat):
                theta = theta_class(f_normalize(bosonic_lifting(rho, cat)))
                ker = r_star_kernel_order(rho, cat.fermion)
                for i, alpha in enumerate(alphas):
                    ob = o3_fermionic(theta, alpha, rho, cat.fermion)
                    en = enumerate_liftings(rho, cat, alpha)
                    ok = ob.vanishes == en.nonempty and (not en.nonempty or en.count == ker)
                    total += 1
                    bad += not ok
                    if cfg.verbose or not ok:
                        print(f"{gname:6s} {name:9s} rho={'triv' if rho.is_trivial() else 'swap'} alpha#{i} "
                              f"{ob.branch} O3={'0' if ob.vanishes else 'x'} liftings={en.count} |Ker r*|={ker}"
                              f"{'' if ok else '  MISMATCH'}")
    print(f"{total - bad}/{total} cases agree")
    return bad


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--groups", nargs="*", default=list(Config.groups))
    p.add_argument("-v", "--verbose", action="store_true")
    a = p.parse_args()
    raise SystemExit(1 if main(Config(tuple(a.groups), a.verbose)) else 0)
