"""Seeded random-point verification machinery and machine-readable reports.

Identity checking is always pointwise sampling in a box, never symbolic
zero-testing. Points that trip the singularity guard (or any other
evaluation error) are rejected and redrawn; too many rejections abort.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DomainError,
    EigenError,
    SamplingError,
    SingularPointError,
    TransformError,
)

DEFAULT_POINTS = 64
DEFAULT_SEED = 0
DEFAULT_TOL = 1e-9
PROCEDURAL_TOL = 1e-6
DEFAULT_BOX = (-2.0, 2.0)

_REJECTABLE = (SingularPointError, DomainError, TransformError, EigenError)


@dataclass
class CheckItem:
    check_id: str
    identity: str
    max_residual: float
    worst_point: tuple
    passed: bool
    tol: float

    def to_dict(self):
        return {
            "id": self.check_id,
            "identity": self.identity,
            "max_residual": float(self.max_residual),
            "worst_point": [float(v) for v in self.worst_point],
            "pass": bool(self.passed),
            "tol": self.tol,
        }


@dataclass
class CheckReport:
    name: str
    meta: dict = field(default_factory=dict)
    items: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    @property
    def max_residual(self) -> float:
        return max((item.max_residual for item in self.items), default=0.0)

    def extend(self, other: "CheckReport"):
        self.items.extend(other.items)

    def to_dict(self):
        return {
            "name": self.name,
            "meta": self.meta,
            "checks": [item.to_dict() for item in self.items],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary_lines(self):
        for item in self.items:
            status = "PASS" if item.passed else "FAIL"
            yield (f"[{status}] {item.check_id}: max residual "
                   f"{item.max_residual:.3e} (tol {item.tol:.0e}) -- {item.identity}")


def residual_between(a, b, point) -> float:
    """Max abs componentwise difference of two evaluable objects."""
    va = a.eval_at(point) if hasattr(a, "eval_at") else a.eval(point)
    vb = b.eval_at(point) if hasattr(b, "eval_at") else b.eval(point)
    return float(np.max(np.abs(np.asarray(va) - np.asarray(vb))))


def residual_of(a, point) -> float:
    va = a.eval_at(point) if hasattr(a, "eval_at") else a.eval(point)
    return float(np.max(np.abs(np.asarray(va))))


class Checker:
    """Draws seeded sample points per check and accumulates a report."""

    def __init__(self, points=DEFAULT_POINTS, seed=DEFAULT_SEED,
                 tol=DEFAULT_TOL, box=DEFAULT_BOX, name="checks"):
        self.points = points
        self.seed = seed
        self.tol = tol
        self.box = box
        self.rng = random.Random(seed)
        self.report = CheckReport(name, meta={
            "seed": seed, "points": points, "tol": tol, "box": list(box)})

    def draw_point(self, dim: int) -> tuple:
        lo, hi = self.box
        return tuple(self.rng.uniform(lo, hi) for _ in range(dim))

    def sample(self, dim: int, probe=None) -> list:
        """Draw self.points points, rejecting those on which probe raises a
        guard error; abort after 10x rejections."""
        pts = []
        rejected = 0
        while len(pts) < self.points:
            pt = self.draw_point(dim)
            if probe is not None:
                try:
                    probe(pt)
                except _REJECTABLE:
                    rejected += 1
                    if rejected > 10 * self.points:
                        raise SamplingError(
                            f"rejected {rejected} sample points; "
                            "the objects are singular on most of the box")
                    continue
            pts.append(pt)
        return pts

    def residual(self, check_id, identity, dim, fn, tol=None):
        """fn(point) -> float residual; record the worst point."""
        tol = self.tol if tol is None else tol
        worst = 0.0
        worst_pt = ()
        rejected = 0
        accepted = 0
        while accepted < self.points:
            pt = self.draw_point(dim)
            try:
                r = float(fn(pt))
            except _REJECTABLE:
                rejected += 1
                if rejected > 10 * self.points:
                    raise SamplingError(
                        f"check {check_id}: rejected {rejected} sample points")
                continue
            accepted += 1
            if r > worst:
                worst = r
                worst_pt = pt
        item = CheckItem(check_id, identity, worst, worst_pt, worst < tol, tol)
        self.report.items.append(item)
        return item

    def compare(self, check_id, identity, a, b, tol=None, dim=None):
        dim = a.space.dim if dim is None else dim
        return self.residual(check_id, identity, dim,
                             lambda pt: residual_between(a, b, pt), tol=tol)

    def vanish(self, check_id, identity, a, tol=None, dim=None):
        dim = a.space.dim if dim is None else dim
        return self.residual(check_id, identity, dim,
                             lambda pt: residual_of(a, pt), tol=tol)
