"""Instance files: a line-oriented text format for crossed modules and coefficients.

Sections::

    [group NAME]      cyclic N | trivial | symmetric N | product A B | table (rows follow)
    [action NAME]     actor G / carrier T / trivial | conjugation | maps (rows follow)
    [xmod]            name / kind crossed|precrossed / t T / g G / mu IMAGES / action NAME / coeffs NAMES
    [coeff NAME]      over G / orders N... / act ELEMENT ENTRIES... (row-major matrix)
    [budget]          bar_rank / level_order / total_rank / max_total

``#`` starts a comment.  Element 0 is the identity of every explicit table.
Coefficient matrices act on row vectors; elements without an ``act`` line
act trivially.  ``conjugation`` needs an injective ``mu`` (or ``T = G``).
"""

from __future__ import annotations

import hashlib
import os
import json
from dataclasses import dataclass, field

from ..algebra.abelian import PresentedAbelianGroup
from ..algebra.matrix import IntMatrix
from ..config import Budget
from ..errors import ParseError, XModError
from ..groups.finite import FiniteGroup, GroupAction, GroupHom
from ..groups.modules import GModule
from ..xmod.crossed import CrossedModule, PrecrossedModule

SECTIONS = ("group", "action", "xmod", "coeff", "budget")
BUDGET_FIELDS = ("bar_rank", "level_order", "total_rank", "max_total")


@dataclass
class Instance:
    name: str
    xmod: PrecrossedModule
    kind: str  # "crossed" or "precrossed"
    coefficients: dict  # name -> GModule over G
    budget: Budget = field(default_factory=Budget)
    groups: dict = field(default_factory=dict)  # name -> FiniteGroup, in file order

    def fingerprint(self) -> str:
        """Hash of the mathematical content, independent of names and layout."""
        X = self.xmod
        data = {
            "kind": self.kind,
            "t": X.t_group.table,
            "g": X.g_group.table,
            "mu": X.mu.images,
            "action": X.action.maps,
            "coeffs": {k: _module_data(M) for k, M in sorted(self.coefficients.items())},
            "budget": [getattr(self.budget, f) for f in BUDGET_FIELDS],
        }
        return hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()


def _module_data(M: GModule) -> dict:
    return {
        "relations": M.coefficients.relations.tolist(),
        "generators": M.coefficients.generators,
        "action": [M.action[g].matrix.tolist() for g in M.group.elements()],
    }


class _Line:
    __slots__ = ("number", "tokens", "columns")

    def __init__(self, number: int, text: str):
        self.number = number
        self.tokens, self.columns = [], []
        i = 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            j = i
            while j < len(text) and not text[j].isspace():
                j += 1
            self.tokens.append(text[i:j])
            self.columns.append(i + 1)
            i = j

    def error(self, message: str, k: int = 0) -> ParseError:
        col = self.columns[k] if k < len(self.columns) else (self.columns[-1] if self.columns else 1)
        return ParseError(message, self.number, col)

    def int_at(self, k: int) -> int:
        try:
            return int(self.tokens[k])
        except (IndexError, ValueError):
            raise self.error("integer expected", k) from None

    def ints(self, start: int = 0) -> list[int]:
        return [self.int_at(k) for k in range(start, len(self.tokens))]


def _split(text: str) -> list[tuple[_Line, list[_Line]]]:
    sections: list[tuple[_Line, list[_Line]]] = []
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        line = _Line(n, body)
        if not line.tokens:
            continue
        if line.tokens[0].startswith("["):
            inner = body.strip()
            if not inner.endswith("]"):
                raise line.error("unterminated section header")
            sections.append((_Line(n, " " * (body.index("[") + 1) + inner[1:-1]), []))
            continue
        if not sections:
            raise line.error("content before the first section")
        sections[-1][1].append(line)
    return sections


def parse_instance(text: str, name: str = "instance") -> Instance:
    """Parse an instance file; raises :class:`ParseError` with line and column."""
    groups: dict[str, FiniteGroup] = {}
    actions: dict[str, tuple] = {}
    coeff_specs: dict[str, tuple] = {}
    xmod_spec: tuple | None = None
    budget = Budget()
    for header, body in _split(text):
        if not header.tokens:
            raise header.error("empty section header")
        kind = header.tokens[0]
        if kind not in SECTIONS:
            raise header.error(f"unknown section '{kind}'")
        label = header.tokens[1] if len(header.tokens) > 1 else None
        if kind in ("group", "action", "coeff"):
            if label is None or len(header.tokens) > 2:
                raise header.error(f"[{kind} NAME] needs exactly one name")
            pool = {"group": groups, "action": actions, "coeff": coeff_specs}[kind]
            if label in pool:
                raise header.error(f"duplicate {kind} '{label}'", 1)
        if kind == "group":
            groups[label] = _parse_group(header, body, groups)
        elif kind == "action":
            actions[label] = (header, body)
        elif kind == "coeff":
            coeff_specs[label] = (header, body)
        elif kind == "xmod":
            if xmod_spec is not None:
                raise header.error("only one [xmod] section is allowed")
            xmod_spec = (header, body)
        else:
            budget = _parse_budget(body, budget)
    if xmod_spec is None:
        raise ParseError("missing [xmod] section", 1, 1)
    inst_name, kind, X, coeff_refs = _parse_xmod(*xmod_spec, groups, actions, name)
    coefficients = {}
    for cname, line, k in coeff_refs:
        if cname not in coeff_specs:
            raise line.error(f"undefined coefficient module '{cname}'", k)
        coefficients[cname] = _parse_coeff(*coeff_specs[cname], groups, X.g_group)
    return Instance(inst_name or name, X, kind, coefficients, budget, groups)


def _parse_group(header: _Line, body: list[_Line], groups: dict) -> FiniteGroup:
    if not body:
        raise header.error("group section is empty")
    first = body[0]
    op = first.tokens[0]
    try:
        if op == "cyclic":
            return FiniteGroup.cyclic(first.int_at(1))
        if op == "trivial":
            return FiniteGroup.trivial()
        if op == "symmetric":
            return FiniteGroup.symmetric(first.int_at(1))
        if op == "product":
            if len(first.tokens) != 3:
                raise first.error("product needs two group names")
            parts = []
            for k in (1, 2):
                ref = first.tokens[k]
                if ref not in groups:
                    raise first.error(f"undefined group '{ref}'", k)
                parts.append(groups[ref])
            return FiniteGroup.direct_product(*parts)
        if op == "table":
            rows = [ln.ints() for ln in body[1:]]
            if not rows:
                raise first.error("table needs rows")
            return FiniteGroup(rows)
    except ParseError:
        raise
    except (XModError, ValueError) as exc:
        raise first.error(f"invalid group: {exc}") from None
    raise first.error(f"unknown group constructor '{op}'")


def _group_ref(line: _Line, k: int, groups: dict) -> FiniteGroup:
    if k >= len(line.tokens):
        raise line.error("group name expected", k)
    ref = line.tokens[k]
    if ref not in groups:
        raise line.error(f"undefined group '{ref}'", k)
    return groups[ref]


def _keyed(body: list[_Line]) -> dict[str, _Line]:
    out = {}
    for ln in body:
        out.setdefault(ln.tokens[0], ln)
    return out


def _parse_action(header: _Line, body: list[_Line], groups: dict, mu: GroupHom) -> GroupAction:
    keys = _keyed(body)
    for need in ("actor", "carrier"):
        if need not in keys:
            raise header.error(f"action needs an '{need}' line")
    G = _group_ref(keys["actor"], 1, groups)
    T = _group_ref(keys["carrier"], 1, groups)
    if "trivial" in keys:
        return GroupAction.trivial(G, T)
    if "conjugation" in keys:
        ln = keys["conjugation"]
        if T == G and mu.images == tuple(G.elements()):
            return GroupAction.conjugation(G)
        if not mu.is_injective():
            raise ln.error("conjugation needs an injective mu")
        return GroupAction.conjugation(G, mu)
    if "maps" in keys:
        start = body.index(keys["maps"]) + 1
        rows = [ln.ints() for ln in body[start:]]
        try:
            return GroupAction(G, T, rows)
        except XModError as exc:
            raise keys["maps"].error(f"invalid action: {exc}") from None
    raise header.error("action needs 'trivial', 'conjugation' or 'maps'")


def _parse_xmod(header: _Line, body: list[_Line], groups: dict, actions: dict, default_name: str):
    keys = _keyed(body)
    for need in ("t", "g", "mu", "action"):
        if need not in keys:
            raise header.error(f"[xmod] needs a '{need}' line")
    T = _group_ref(keys["t"], 1, groups)
    G = _group_ref(keys["g"], 1, groups)
    mu_line = keys["mu"]
    images = mu_line.ints(1)
    if len(images) != T.order:
        raise mu_line.error(f"mu needs {T.order} images", 0)
    for k, v in enumerate(images, start=1):
        if not 0 <= v < G.order:
            raise mu_line.error("image out of range", k)
    try:
        mu = GroupHom(T, G, images)
    except XModError as exc:
        raise mu_line.error(f"mu is not a homomorphism: {exc}") from None
    act_line = keys["action"]
    ref = act_line.tokens[1] if len(act_line.tokens) > 1 else None
    if ref not in actions:
        raise act_line.error(f"undefined action '{ref}'", 1)
    action = _parse_action(*actions[ref], groups, mu)
    if action.actor != G or action.carrier != T:
        raise act_line.error("the action must be of g on t", 1)
    kind = keys["kind"].tokens[1] if "kind" in keys and len(keys["kind"].tokens) > 1 else "crossed"
    if kind not in ("crossed", "precrossed"):
        raise keys["kind"].error("kind is 'crossed' or 'precrossed'", 1)
    name = " ".join(keys["name"].tokens[1:]) if "name" in keys else default_name
    refs = []
    if "coeffs" in keys:
        ln = keys["coeffs"]
        refs = [(tok, ln, k) for k, tok in enumerate(ln.tokens[1:], start=1)]
    cls = CrossedModule if kind == "crossed" else PrecrossedModule
    return name, kind, cls(T, G, mu, action, name), refs


def _parse_coeff(header: _Line, body: list[_Line], groups: dict, G: FiniteGroup) -> GModule:
    keys = _keyed(body)
    if "orders" not in keys:
        raise header.error("coefficients need an 'orders' line")
    if "over" in keys and _group_ref(keys["over"], 1, groups) != G:
        raise keys["over"].error("coefficients must be over the g group of the crossed module", 1)
    orders = keys["orders"].ints(1)
    for k, o in enumerate(orders, start=1):
        if o < 0 or o == 1:
            raise keys["orders"].error("orders are 0 (for Z) or at least 2", k)
    A = PresentedAbelianGroup.diagonal(orders)
    n = len(orders)
    mats = [IntMatrix.identity(n) for _ in G.elements()]
    for ln in body:
        if ln.tokens[0] != "act":
            continue
        g = ln.int_at(1)
        if not 0 <= g < G.order:
            raise ln.error("group element out of range", 1)
        entries = ln.ints(2)
        if len(entries) != n * n:
            raise ln.error(f"act needs {n * n} matrix entries", 0)
        mats[g] = IntMatrix([entries[i * n:(i + 1) * n] for i in range(n)], n)
    try:
        return GModule(G, A, mats)
    except XModError as exc:
        raise header.error(f"invalid module: {exc}") from None


def _parse_budget(body: list[_Line], budget: Budget) -> Budget:
    kw = {}
    for ln in body:
        key = ln.tokens[0]
        if key not in BUDGET_FIELDS:
            raise ln.error(f"unknown budget field '{key}'")
        kw[key] = ln.int_at(1)
    return budget.with_(**kw)


def load_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_instance(text, os.path.splitext(os.path.basename(path))[0])


def serialize_instance(inst: Instance) -> str:
    """Canonical text with explicit tables; parsing it gives an instance with the same fingerprint."""
    X = inst.xmod
    out = ["[group T]", "table"]
    out += [" ".join(map(str, r)) for r in X.t_group.table]
    out += ["", "[group G]", "table"]
    out += [" ".join(map(str, r)) for r in X.g_group.table]
    out += ["", "[action act]", "actor G", "carrier T", "maps"]
    out += [" ".join(map(str, m)) for m in X.action.maps]
    out += ["", "[xmod]", f"name {inst.name}", f"kind {inst.kind}", "t T", "g G"]
    out.append("mu " + " ".join(map(str, X.mu.images)))
    out.append("action act")
    if inst.coefficients:
        out.append("coeffs " + " ".join(inst.coefficients))
    for cname, M in inst.coefficients.items():
        out += ["", f"[coeff {cname}]", "over G"]
        D = M.diagonalized() if M.coefficients.orders is None else M
        out.append("orders " + " ".join(map(str, D.coefficients.orders)))
        n = D.coefficients.generators
        for g in M.group.elements():
            m = D.action[g].matrix.tolist()
            if m != IntMatrix.identity(n).tolist():
                out.append(f"act {g} " + " ".join(str(v) for row in m for v in row))
    out += ["", "[budget]"]
    out += [f"{f} {getattr(inst.budget, f)}" for f in BUDGET_FIELDS]
    return "\n".join(out) + "\n"
