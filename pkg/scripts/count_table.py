"""Per-target counts of minimal modular extensions for the shipped super-groups."""
import argparse
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from fermext import io
from fermext.mext import count_mext

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "fermext" / "fixtures"


@dataclass
class Config:
    supergroups: list = field(default_factory=lambda: ["z1xz2", "z3xz2", "z5xz2", "z4", "z6"])
    out: str | None = None


def main(cfg: Config):
    rows = []
    for name in cfg.supergroups:
        t = time.perf_counter()
        res = count_mext(io.parse_supergroup(io.load(FIXTURES / f"{name}.json")))
        dt = time.perf_counter() - t
        print(f"{name:8s} total={res.total:4d} kernel={res.kernel_order} image={res.image_size} "
              f"kernel*image={res.group_total} fibers_equal={res.fibers_equal} ({dt:.1f}s)")
        nonzero = {k: v for k, v in res.per_target.items() if v}
        print("         " + " ".join(f"{k}:{v}" for k, v in nonzero.items()))
        rows.append(dict(res.to_json(), name=name, seconds=round(dt, 2)))
    if cfg.out:
        Path(cfg.out).write_text(json.dumps(rows, indent=2))


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("supergroups", nargs="*", default=Config().supergroups)
    p.add_argument("--out")
    a = p.parse_args()
    main(Config(a.supergroups, a.out))
