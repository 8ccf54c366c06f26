"""Command-line front end.

Exit status: 0 on success, 1 when a mathematical check fails (a violation,
a nonzero obstruction under --expect-zero, an order differing from
--expect-order), 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import io
from .actions import o3_bosonic, o3_fermionic, theta_class, f_normalize, verify_action, verify_braided
from .braided import (
    POINTED_NAMES,
    catalog_category,
    classify_h3ab,
    fermions,
    is_nondegenerate,
    mext_catalog,
    quadratic_form,
    verify_abelian_cocycle,
)
from .cohomology import GModule, cohomology, qz_cohomology, solve_coboundary
from .errors import FermextError
from .groups import FinAbGroup
from .mext import alpha_cochain, count_mext
from .obstruction import O4Input, o4_values, o4_vanishes

COMMANDS = ["cohomology", "verify-action", "verify-cocycle", "classify-rank4", "classify-h3ab",
            "obstruction-o3", "obstruction-o4", "count-mext"]


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    budget: int | None = None
    format: str = "text"
    expect_zero: bool = False
    expect_order: int | None = None
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.budget is not None and self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.format not in ("text", "json"):
            raise ValueError("format must be text or json")


@dataclass
class Result:
    ok: bool
    text: str
    data: dict


def _cohomology(cfg: RunConfig) -> Result:
    o = cfg.options
    G = io.parse_group_arg(o["group"])
    n = o["degree"]
    coeffs = o["coeffs"]
    if coeffs == "qz":
        H = qz_cohomology(G, n)
    else:
        try:
            m = int(coeffs.split(":")[-1])
        except ValueError:
            raise io.ParseError(f"coefficients must be 'qz' or 'z:<m>', got {coeffs!r}", "--coeffs") from None
        H = cohomology(GModule.trivial(G, FinAbGroup([m]) if m > 1 else FinAbGroup([])), n)
    ok = cfg.expect_order is None or H.total_order == cfg.expect_order
    return Result(ok, str(H), {"group": str(G), "degree": n, "coeffs": coeffs,
                               "invariant_factors": list(H.invariant_factors), "order": H.total_order})


def _verify_action(cfg: RunConfig) -> Result:
    af = io.parse_action(io.load(cfg.inputs[0]))
    r, b = verify_action(af.action), verify_braided(af.action)
    lines = []
    if r.valid and b.valid:
        lines.append("valid")
    else:
        lines.append("invalid")
        lines += [f"  {v}" for v in r.violations + b.violations]
    lines.append(f"action: {r.summary()}")
    lines.append(f"braided: {b.summary()}")
    return Result(r.valid and b.valid, "\n".join(lines), {"action": r.to_json(), "braided": b.to_json()})


def _verify_cocycle(cfg: RunConfig) -> Result:
    coc = io.parse_cocycle(io.load(cfg.inputs[0]))
    r = verify_abelian_cocycle(coc)
    lines = ["valid" if r.valid else "invalid"] + [f"  {v}" for v in r.violations] + [r.summary()]
    return Result(r.valid, "\n".join(lines), r.to_json())


def _classify_rank4(cfg: RunConfig) -> Result:
    rows, lines = [], []
    for e in mext_catalog():
        if e.is_pointed:
            cat = catalog_category(e.name)
            q = quadratic_form(cat)
            ok = verify_abelian_cocycle(cat.cocycle).valid and is_nondegenerate(cat)
            qs = " ".join(str(q[a]) for a in cat.group.elements())
            row = {"name": e.name, "kind": "pointed", "group": str(cat.group), "k": str(cat.k_invariant),
                   "q": qs, "fermions": len(fermions(cat)), "verified": ok}
            lines.append(f"{e.name:10s} {str(cat.group):10s} k={str(cat.k_invariant):5s} q=[{qs}] "
                         f"fermions={row['fermions']} {'ok' if ok else 'FAILED'}")
        else:
            row = {"name": e.name, "kind": "ising", "zeta_index": e.zeta_index}
            lines.append(f"{e.name:10s} ising      zeta index {e.zeta_index}")
        rows.append(row)
    ok = all(r.get("verified", True) for r in rows)
    lines.append(f"total: {len(rows)} ({len(POINTED_NAMES)} pointed, {len(rows) - len(POINTED_NAMES)} ising)")
    return Result(ok, "\n".join(lines), {"entries": rows})


def _classify_h3ab(cfg: RunConfig) -> Result:
    o = cfg.options
    A = io.parse_abelian(io.loads(o["group"], "--group"), io.loads(o["group"], "--group").data)
    res = classify_h3ab(A, o.get("denominator"), budget=cfg.budget or 10**7)
    lines = [f"H^3_ab({A}) over (1/{res.N})Z/Z: {len(res)} classes"]
    for c in res.classes:
        lines.append("  q = [" + " ".join(str(v) for v in c.key()) + "]")
    ok = cfg.expect_order is None or len(res) == cfg.expect_order
    data = {"group": str(A), "N": res.N, "classes": len(res),
            "forms": [[str(v) for v in c.key()] for c in res.classes]}
    return Result(ok, "\n".join(lines), data)


def _o3(cfg: RunConfig) -> Result:
    af = io.parse_action(io.load(cfg.inputs[0]))
    action = af.action
    O = o3_bosonic(action)
    w = solve_coboundary(O)
    lines = [f"bosonic O3: {'0' if w is not None else 'nonzero'}"]
    data = {"bosonic_vanishes": w is not None}
    ok = w is not None
    sgfile = cfg.options.get("supergroup")
    if sgfile:
        sg = io.parse_supergroup(io.load(sgfile))
        if sg.G.n != action.G.n or sg.G.table != action.G.table:
            raise io.ParseError("super-group and action use different groups", sgfile, key="group")
        theta = theta_class(f_normalize(action))
        fo = o3_fermionic(theta, alpha_cochain(sg), action.rho, action.target.fermion)
        lines.append(f"fermionic O3 ({fo.branch}): {'0' if fo.vanishes else 'nonzero'}")
        data.update(fermionic_vanishes=fo.vanishes, branch=fo.branch)
        ok = ok and fo.vanishes
    return Result(ok or not cfg.expect_zero, "\n".join(lines), data)


def _o4(cfg: RunConfig) -> Result:
    src = io.load(cfg.inputs[0])
    af = io.parse_action(src)
    if len(cfg.inputs) > 1:
        msrc = io.load(cfg.inputs[1])
        table = msrc.data.get("mu2", msrc.data) if isinstance(msrc.data, dict) else msrc.data
        mu2 = io.parse_mu2(msrc, af, table)
    elif af.mu2 is not None:
        mu2 = af.mu2
    else:
        raise io.ParseError("no mu2 given (second file or \"mu2\" key)", cfg.inputs[0], key="mu2")
    v = o4_vanishes(O4Input(af.action, mu2))
    G = af.action.G
    fmt = lambda k: "(" + ", ".join(G.label(g) for g in k) + ")"
    lines = [f"O4: {'vanishes' if v.vanishes else 'nonzero class'}"]
    vals = o4_values(v.cocycle)
    lines.append(f"  nonzero values: {len(vals)}")
    for k in sorted(vals)[:20]:
        lines.append(f"  O4{fmt(k)} = {vals[k]}")
    data = {"vanishes": v.vanishes, "o4": {"|".join(G.label(g) for g in k): str(q) for k, q in sorted(vals.items())}}
    if v.witness is not None:
        N = v.witness.module.M.exponent()
        wit = {"|".join(G.label(g) for g in k): f"{x[0]}/{N}" for k, x in sorted(v.witness.values.items())}
        data["witness"] = wit
        lines.append(f"  witness: {len(wit)} nonzero values in (1/{N})Z/Z")
    return Result(v.vanishes or not cfg.expect_zero, "\n".join(lines), data)


def _count_mext(cfg: RunConfig) -> Result:
    sg = io.parse_supergroup(io.load(cfg.options["supergroup"]))
    targets = cfg.options.get("target")
    res = count_mext(sg, targets)
    lines = [f"{'target':10s} {'homs':>5s} {'mu':>4s} {'phi':>4s} {'count':>6s}"]
    for r in res.rows:
        note = "  (derived by fiber symmetry)" if r.derived_by_fiber_symmetry else ""
        lines.append(f"{r.target.name:10s} {r.homs:5d} {r.mu:4d} {r.phi:4d} {r.count:6d}{note}")
    lines.append(f"total: {res.total}, kernel: {res.kernel_order}, image: {res.image_size}")
    if not res.fibers_equal:
        lines.append(f"warning: fibers differ in size; kernel x image = {res.group_total}")
    ok = cfg.expect_order is None or res.total == cfg.expect_order
    return Result(ok, "\n".join(lines), res.to_json())


HANDLERS = {
    "cohomology": _cohomology,
    "verify-action": _verify_action,
    "verify-cocycle": _verify_cocycle,
    "classify-rank4": _classify_rank4,
    "classify-h3ab": _classify_h3ab,
    "obstruction-o3": _o3,
    "obstruction-o4": _o4,
    "count-mext": _count_mext,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a command; returns (exit status, output text)."""
    if cfg.budget is not None:
        os.environ["FERMEXT_BUDGET"] = str(cfg.budget)
    try:
        res = HANDLERS[cfg.command](cfg)
    except FermextError as e:
        return e.exit_code, f"error: {e}"
    out = json.dumps(res.data, indent=2, sort_keys=True) if cfg.format == "json" else res.text
    return (0 if res.ok else 1), out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fermext", description="Fermionic extension counting toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--budget", type=int, default=None, help="enumeration cap (overrides FERMEXT_BUDGET)")
    common.add_argument("--expect-zero", action="store_true", help="exit 1 if the obstruction is nonzero")
    common.add_argument("--expect-order", type=int, default=None, help="exit 1 if the order differs")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("cohomology", parents=[common], help="H^n(G, coefficients)")
    s.add_argument("--group", required=True, help='JSON group, e.g. \'{"cyclic":5}\'')
    s.add_argument("--coeffs", default="qz", help="'qz' for Q/Z or 'z:<m>' for trivial Z/m")
    s.add_argument("--degree", type=int, required=True)

    s = sub.add_parser("verify-action", parents=[common], help="check an action file")
    s.add_argument("file")
    s = sub.add_parser("verify-cocycle", parents=[common], help="check an abelian 3-cocycle file")
    s.add_argument("file")
    sub.add_parser("classify-rank4", parents=[common], help="the 16 modular extensions of SVec")
    s = sub.add_parser("classify-h3ab", parents=[common], help="H^3_ab(A) keyed by quadratic forms")
    s.add_argument("--group", required=True)
    s.add_argument("--denominator", type=int, default=None)
    s = sub.add_parser("obstruction-o3", parents=[common], help="bosonic and fermionic O3 of an action")
    s.add_argument("file")
    s.add_argument("--supergroup", default=None)
    s = sub.add_parser("obstruction-o4", parents=[common], help="O4 of an action and a 2-cocycle")
    s.add_argument("file")
    s.add_argument("mu2", nargs="?", default=None)
    s = sub.add_parser("count-mext", parents=[common], help="count minimal modular extensions")
    s.add_argument("--supergroup", required=True)
    s.add_argument("--target", action="append", default=None)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    inputs = [x for x in (getattr(ns, "file", None), getattr(ns, "mu2", None)) if x]
    opts = {k: v for k, v in vars(ns).items()
            if k not in ("command", "format", "budget", "expect_zero", "expect_order", "file", "mu2")}
    return RunConfig(ns.command, inputs, ns.budget, ns.format, ns.expect_zero, ns.expect_order, opts)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as e:
        parser.error(str(e))
    status, out = run(cfg)
    stream = sys.stderr if status == 2 else sys.stdout
    print(out, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
