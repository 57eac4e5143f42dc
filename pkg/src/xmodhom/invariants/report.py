"""Reports for computed invariants and verification checks.

A record has exactly the fields ``instance, invariant, degree, torsion,
free_rank, route, agreement, wall_time``.  ``wall_time`` is ``"-"`` unless
timing was requested, so reports are byte-identical across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..algebra.abelian import PresentedAbelianGroup

RECORD_FIELDS = ("instance", "invariant", "degree", "torsion", "free_rank", "route", "agreement", "wall_time")
RECORD_HEADER = {"format": "xmodhom-records", "version": 1}


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class InvariantReport:
    """One invariant (or one verification suite) with the routes that produced it.

    ``routes`` maps a route name to the canonical form it produced; when
    more than one route is present ``agreement`` says whether they coincide.
    Suites put their individual checks in ``checks``.
    """

    instance: str
    invariant: str
    degree: int | None
    value: PresentedAbelianGroup | None
    route: str
    routes: dict = field(default_factory=dict)
    agreement: bool | None = None
    checks: list = field(default_factory=list)
    wall_time: float | None = None
    stats: dict = field(default_factory=dict)

    @property
    def torsion(self) -> list[int]:
        return self.value.torsion if self.value is not None else []

    @property
    def free_rank(self) -> int:
        return self.value.free_rank if self.value is not None else 0

    @property
    def passed(self) -> bool:
        if self.checks:
            return all(c.passed for c in self.checks)
        return self.agreement is not False

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        self.agreement = all(c.passed for c in self.checks)
        return passed

    def record(self, timing: bool = False) -> dict:
        wall = f"{self.wall_time:.3f}" if (timing and self.wall_time is not None) else "-"
        values = (self.instance, self.invariant, self.degree, self.torsion, self.free_rank, self.route, self.agreement, wall)
        return dict(zip(RECORD_FIELDS, values))

    def record_line(self, timing: bool = False) -> str:
        return json.dumps(self.record(timing), separators=(",", ":"))

    def text(self, timing: bool = False) -> str:
        deg = "" if self.degree is None else f"[{self.degree}]"
        if self.value is None:
            line = f"{self.instance}: {self.invariant}{deg}: {'pass' if self.passed else 'FAIL'}"
            if timing and self.wall_time is not None:
                line += f"  ({self.wall_time:.3f}s)"
            return "\n".join([line] + [_check_line(c) for c in self.checks])
        line = f"{self.instance}: {self.invariant}{deg} = {self.value.describe()}  (route {self.route}"
        if len(self.routes) > 1:
            line += "; routes " + ", ".join(f"{k}={_describe(v)}" for k, v in self.routes.items())
        if self.agreement is not None:
            if self.checks:
                line += f"; {'checks pass' if self.agreement else 'CHECK FAILED'}"
            else:
                line += f"; {'agree' if self.agreement else 'DISAGREE'}"
        if timing and self.wall_time is not None:
            line += f"; {self.wall_time:.3f}s"
        line += ")"
        lines = [line]
        lines += [_check_line(c) for c in self.checks]
        return "\n".join(lines)


def _check_line(c: Check) -> str:
    return f"  {'pass' if c.passed else 'FAIL'}  {c.name}" + (f": {c.detail}" if c.detail else "")


def _describe(cf) -> str:
    torsion, free = cf
    parts = [f"Z/{t}" for t in torsion] + ["Z"] * free
    return " + ".join(parts) if parts else "0"


def records_header() -> str:
    return json.dumps(RECORD_HEADER, separators=(",", ":"))
