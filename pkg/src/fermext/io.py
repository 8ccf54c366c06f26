"""JSON input formats.

Group:        {"cyclic": 4} | {"invariant_factors": [2, 2]} | {"permutations": [[1, 0, 2], ...]}
Elements:     coordinate lists ([1, 0]), bare integers for cyclic groups, comma
              strings ("1,0"), or names declared in an "elements" / "names" map.
Super-group:  {"group": G, "alpha": {"g|h": "1/2", ...}}
              or {"extension": G~, "z": element}  (the pair (G~, z))
Action:       {"group": G, "names": {"u": [1]}, "category": "toric",
               "elements": {"v": [1, 0], ...},
               "rho": {"u": {"v": "v+f", "f": "f"}},
               "mu": {"u": {"v|f": "1/2"}}, "gamma": {"u|u": {"v": "1/4"}},
               "mu2": {"u|u": "f"}}
Cocycle:      {"category": "toric"} | {"group": A, "omega": {"a|b|c": q}, "c": {"a|b": q}}

Missing table entries are 0.  Errors carry the file, the line of the
offending key, and the key itself.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .braided import AbelianThreeCocycle, PointedSpinCategory, catalog_category
from .cohomology import Cochain
from .errors import InvalidInput
from .groups import FinAbGroup, FiniteGroup, GModule, SuperGroup
from .qz import QZ


class ParseError(InvalidInput):
    def __init__(self, message: str, file: str = "<input>", line: int | None = None, key: str | None = None):
        where = file + (f":{line}" if line else "")
        super().__init__(f"{where}: {message}" + (f" (key {key!r})" if key is not None else ""))
        self.file, self.line, self.key = file, line, key


@dataclass
class Source:
    """Parsed JSON plus enough context to report positions."""

    data: object
    text: str = ""
    file: str = "<input>"

    def line_of(self, key) -> int | None:
        if key is None or not self.text:
            return None
        m = re.search(r'"' + re.escape(str(key)) + r'"\s*:', self.text)
        return self.text.count("\n", 0, m.start()) + 1 if m else None

    def error(self, message: str, key=None) -> ParseError:
        return ParseError(message, self.file, self.line_of(key), None if key is None else str(key))


def load(path) -> Source:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", str(p)) from None
    return loads(text, str(p))


def loads(text: str, file: str = "<input>") -> Source:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, file, e.lineno) from None
    return Source(data, text, file)


def _require(src: Source, obj, key):
    if not isinstance(obj, dict) or key not in obj:
        raise src.error(f"missing required key {key!r}", key)
    return obj[key]


def parse_qz(src: Source, value, key) -> QZ:
    try:
        return QZ.parse(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise src.error(f"not a rational number: {value!r}", key) from None


# ---- groups and elements ---------------------------------------------------


def parse_group(src: Source, desc, key="group") -> FiniteGroup:
    if not isinstance(desc, dict):
        raise src.error("group must be an object", key)
    try:
        if "cyclic" in desc:
            n = desc["cyclic"]
            if not isinstance(n, int) or n < 1:
                raise src.error("cyclic order must be a positive integer", "cyclic")
            return FiniteGroup.cyclic(n)
        if "invariant_factors" in desc:
            return FiniteGroup.from_abelian(FinAbGroup(desc["invariant_factors"]))
        if "permutations" in desc:
            return FiniteGroup.from_permutations(desc["permutations"], desc.get("name", ""))
    except ParseError:
        raise
    except (InvalidInput, TypeError, ValueError) as e:
        raise src.error(str(e), key) from None
    raise src.error("group needs one of cyclic, invariant_factors, permutations", key)


def parse_abelian(src: Source, desc, key="group") -> FinAbGroup:
    G = parse_group(src, desc, key)
    if G.abelian is None:
        raise src.error("an abelian group is required here", key)
    return G.abelian


def _coords(value):
    if isinstance(value, int):
        return (value,)
    if isinstance(value, list) and all(isinstance(x, int) for x in value):
        return tuple(value)
    if isinstance(value, str) and re.fullmatch(r"\s*-?\d+(\s*,\s*-?\d+)*\s*", value):
        return tuple(int(x) for x in value.split(","))
    return None


def parse_abelian_element(src: Source, A: FinAbGroup, value, key, names=None) -> tuple:
    names = names or {}
    if isinstance(value, str) and value in names:
        return names[value]
    c = _coords(value)
    if c is None or len(c) != A.rank:
        raise src.error(f"not an element of {A}: {value!r}", key)
    return A.reduce(c)


def parse_group_element(src: Source, G: FiniteGroup, value, key, names=None) -> int:
    names = names or {}
    if isinstance(value, str) and value in names:
        return names[value]
    c = _coords(value)
    try:
        if c is not None and G.abelian is not None and len(c) == G.abelian.rank:
            return G.index_of_label(G.abelian.reduce(c))
        if isinstance(value, list):
            return G.index_of_label(tuple(value))
    except InvalidInput:
        pass
    raise src.error(f"not an element of {G}: {value!r}", key)


def _name_map(src: Source, obj, parse) -> dict:
    if obj is None:
        return {}
    if not isinstance(obj, dict):
        raise src.error("names must be an object", "names")
    return {k: parse(v, k) for k, v in obj.items()}


def _split(src: Source, key: str, arity: int) -> list[str]:
    parts = key.split("|")
    if len(parts) != arity:
        raise src.error(f"expected {arity} '|'-separated entries", key)
    return parts


# ---- super-groups ----------------------------------------------------------


def parse_supergroup(src: Source, obj=None) -> SuperGroup:
    obj = src.data if obj is None else obj
    name = obj.get("name", "") if isinstance(obj, dict) else ""
    if isinstance(obj, dict) and "extension" in obj:
        Gt = parse_group(src, obj["extension"], "extension")
        z = parse_group_element(src, Gt, _require(src, obj, "z"), "z")
        try:
            return SuperGroup.from_central_extension(Gt, z, name=name)
        except InvalidInput as e:
            raise src.error(str(e), "z") from None
    G = parse_group(src, _require(src, obj, "group"))
    names = _name_map(src, obj.get("names"), lambda v, k: parse_group_element(src, G, v, k))
    alpha = {}
    table = obj.get("alpha", {})
    if not isinstance(table, dict):
        raise src.error("alpha must be an object", "alpha")
    for k, v in table.items():
        g, h = (parse_group_element(src, G, x, k, names) for x in _split(src, k, 2))
        q = parse_qz(src, v, k)
        if q not in (QZ(0), QZ(1, 2)):
            raise src.error("alpha values must be 0 or 1/2", k)
        if q:
            alpha[(g, h)] = 1
    try:
        return SuperGroup(G, alpha, name=name)
    except InvalidInput as e:
        raise src.error(str(e), "alpha") from None


# ---- categories and cocycles -----------------------------------------------


def parse_category(src: Source, value, key="category") -> PointedSpinCategory:
    if not isinstance(value, str):
        raise src.error("category must be a catalog name", key)
    try:
        return catalog_category(value)
    except InvalidInput as e:
        raise src.error(str(e), key) from None


def parse_cocycle(src: Source, obj=None) -> AbelianThreeCocycle:
    obj = src.data if obj is None else obj
    if isinstance(obj, dict) and "category" in obj:
        return parse_category(src, obj["category"]).cocycle
    A = parse_abelian(src, _require(src, obj, "group"))
    names = _name_map(src, obj.get("elements"), lambda v, k: parse_abelian_element(src, A, v, k))
    omega, c = {}, {}
    for table, arity, out in (("omega", 3, omega), ("c", 2, c)):
        for k, v in obj.get(table, {}).items():
            args = tuple(parse_abelian_element(src, A, x, k, names) for x in _split(src, k, arity))
            out[args] = parse_qz(src, v, k)
    return AbelianThreeCocycle(A, omega, c)


# ---- actions ---------------------------------------------------------------


@dataclass
class ActionFile:
    action: object
    mu2: Cochain | None
    group_names: dict
    element_names: dict


def parse_action(src: Source, obj=None) -> ActionFile:
    from .actions import ActionData

    obj = src.data if obj is None else obj
    G = parse_group(src, _require(src, obj, "group"))
    target = parse_category(src, _require(src, obj, "category"))
    A = target.group
    gnames = _name_map(src, obj.get("names"), lambda v, k: parse_group_element(src, G, v, k))
    anames = _name_map(src, obj.get("elements"), lambda v, k: parse_abelian_element(src, A, v, k))
    gel = lambda x, k: parse_group_element(src, G, x, k, gnames)
    ael = lambda x, k: parse_abelian_element(src, A, x, k, anames)

    rho_obj = obj.get("rho", {})
    images = {}
    for glab, amap in rho_obj.items():
        g = gel(glab, glab)
        if not isinstance(amap, dict):
            raise src.error("rho entries map elements to their images", glab)
        images[g] = {ael(a, a): ael(b, a) for a, b in amap.items()}
    mats = []
    for g in G.gens:
        m = images.get(g)
        if m is None:
            ident = [[int(i == j) for j in range(A.rank)] for i in range(A.rank)]
            mats.append(ident)
            continue
        cols = []
        for e in A.generators():
            if e not in m:
                raise src.error(f"rho({G.label(g)}) must give the image of {list(e)}", G.label(g))
            cols.append(m[e])
        mats.append([[cols[j][i] for j in range(A.rank)] for i in range(A.rank)])
    try:
        rho = GModule.from_generators(G, A, mats)
    except InvalidInput as e:
        raise src.error(str(e), "rho") from None
    for g, m in images.items():
        for a, b in m.items():
            if rho.act(g, a) != b:
                raise src.error(f"rho image of {list(a)} is inconsistent with a homomorphism", "rho")

    mu, gamma = {}, {}
    for glab, table in obj.get("mu", {}).items():
        g = gel(glab, glab)
        for k, v in table.items():
            a, b = (ael(x, k) for x in _split(src, k, 2))
            mu[(g, a, b)] = parse_qz(src, v, k)
    for ghlab, table in obj.get("gamma", {}).items():
        g, h = (gel(x, ghlab) for x in _split(src, ghlab, 2))
        for k, v in table.items():
            gamma[(g, h, ael(k, k))] = parse_qz(src, v, k)
    try:
        action = ActionData(rho, target, mu, gamma)
    except InvalidInput as e:
        raise src.error(str(e), "rho") from None

    af = ActionFile(action, None, gnames, anames)
    if "mu2" in obj:
        af.mu2 = parse_mu2(src, af, obj["mu2"])
    return af


def parse_mu2(src: Source, af: ActionFile, table) -> Cochain:
    """An A-valued 2-cochain {"g|h": element} for the action's rho module."""
    action = af.action
    G, A = action.G, action.A
    if not isinstance(table, dict):
        raise src.error("mu2 must be an object", "mu2")
    vals = {}
    for k, v in table.items():
        g, h = (parse_group_element(src, G, x, k, af.group_names) for x in _split(src, k, 2))
        vals[(g, h)] = parse_abelian_element(src, A, v, k, af.element_names)
    return Cochain.from_function(action.rho, 2, lambda g, h: vals.get((g, h), A.zero()))


def parse_group_arg(text: str) -> FiniteGroup:
    """A group given inline on the command line."""
    return parse_group(loads(text, "--group"), loads(text, "--group").data)
