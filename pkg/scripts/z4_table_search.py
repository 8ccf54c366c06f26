"""Search gamma(u,u;-) in (1/N)Z/Z making the Z/4 action table valid with mu as printed.

Prints the verifier report for the printed table and every gamma row that
passes both verifiers, for each of the four Z/4 categories.
"""
import argparse
import itertools
from dataclasses import dataclass
from pathlib import Path

from fermext import io
from fermext.actions import ActionData, verify_action, verify_braided
from fermext.braided import catalog_category
from fermext.groups import GModule
from fermext.qz import QZ

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "fermext" / "fixtures"
NAMES = ["z4-k1/8", "z4-k3/8", "z4-k5/8", "z4-k7/8"]


@dataclass
class Config:
    denominator: int = 8


def main(cfg: Config):
    printed = io.parse_action(io.load(FIXTURES / "z4_action.json")).action
    rep = verify_action(printed)
    print(f"printed table: {rep.summary()}")
    for v in rep.violations:
        print(f"  {v}")
    V, F, VF = (1,), (2,), (3,)
    vals = [QZ(s, cfg.denominator) for s in range(cfg.denominator)]
    for name in NAMES:
        cat = catalog_category(name)
        hits = []
        for row in itertools.product(vals, repeat=3):
            gamma = {(1, 1, a): q for a, q in zip((V, F, VF), row)}
            x = ActionData(GModule(printed.G, cat.group, printed.rho.matrices), cat, printed.mu, gamma)
            if verify_action(x).valid and verify_braided(x).valid:
                hits.append("(" + ", ".join(map(str, row)) + ")")
        print(f"{name}: valid gamma(u,u; v, f, v+f) rows: {' '.join(hits) or 'none'}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--denominator", type=int, default=8)
    main(Config(p.parse_args().denominator))
