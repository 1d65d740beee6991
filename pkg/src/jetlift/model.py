"""Loading model files: JSON descriptions of geometric objects on the base.

A model file looks like::

    {
      "n": 2,
      "objects": {
        "R": {"kind": "tensor11_E",
              "components": {"q1,q1": "q1", "q1,t": "t"}},
        "alpha": {"kind": "oneform_E",
                  "components": {"q1": "t", "t": "q1"}},
        "X": {"kind": "vector_E", "components": {"q1": "q2", "t": "1"}},
        "H": {"kind": "scalar_J", "components": {"value": "(p1^2)/2 + q1"}},
        "T": {"kind": "transform",
              "components": {"Q1": "q1 + t*q2", "Q2": "q2",
                             "inv_q1": "q1 - t*q2", "inv_q2": "q2"}}
      }
    }

Component keys are coordinate names ("t", "q1", ..., matrix entries "a,b");
omitted components are zero.  Expressions use the scalar grammar of
:mod:`jetlift.expr` in the coordinates of the object's space.
"""
from __future__ import annotations

import json

from .catalog import SuiteInputs
from .charts import FibredTransform
from .errors import ExprError, ModelError
from .fields import parse_field
from .spaces import Space, base_e, phase_j
from .tensors import OneForm, Tensor11, TwoForm, VectorField
from .expr import parse_expr

KINDS = ("scalar_E", "scalar_J", "vector_E", "oneform_E", "tensor11_E",
         "twoform_E", "transform")


def _parse_components(space: Space, comps: dict, name: str) -> dict:
    out = {}
    for key, src in comps.items():
        if not isinstance(src, str):
            raise ModelError(f"object {name!r}: component {key!r} "
                             "must be a string expression")
        try:
            out[key] = parse_field(src, space)
        except ExprError as exc:
            raise ModelError(f"object {name!r}, component {key!r}: {exc}")
    return out


def _comp_list(space: Space, fields: dict, name: str) -> list:
    comps = [0.0] * space.dim
    for key, f in fields.items():
        if key not in space.coords:
            raise ModelError(f"object {name!r}: {key!r} is not a coordinate "
                             f"of {space.kind}")
        comps[space.index(key)] = f
    return comps


def _entry_dict(space: Space, comps: dict, name: str) -> dict:
    out = {}
    for key, src in comps.items():
        parts = [p.strip() for p in key.split(",")]
        if len(parts) != 2 or any(p not in space.coords for p in parts):
            raise ModelError(f"object {name!r}: bad matrix key {key!r}")
        out[key] = src
    return out


def _build_object(name: str, spec: dict, n: int):
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ModelError(f"object {name!r}: expected a dict with a 'kind'")
    kind = spec["kind"]
    if kind not in KINDS:
        raise ModelError(f"object {name!r}: unknown kind {kind!r}; "
                         f"expected one of {KINDS}")
    comps = spec.get("components", {})
    if not isinstance(comps, dict):
        raise ModelError(f"object {name!r}: 'components' must be a dict")
    be = base_e(n)
    pj = phase_j(n)

    if kind == "scalar_E":
        if list(comps) != ["value"]:
            raise ModelError(f"object {name!r}: scalar needs a single "
                             "'value' component")
        return kind, parse_field(comps["value"], be)
    if kind == "scalar_J":
        if list(comps) != ["value"]:
            raise ModelError(f"object {name!r}: scalar needs a single "
                             "'value' component")
        return kind, parse_field(comps["value"], pj)
    if kind == "vector_E":
        fields = _parse_components(be, comps, name)
        return kind, VectorField(be, _comp_list(be, fields, name))
    if kind == "oneform_E":
        fields = _parse_components(be, comps, name)
        return kind, OneForm(be, _comp_list(be, fields, name))
    if kind == "tensor11_E":
        _entry_dict(be, comps, name)
        T = Tensor11.from_dict(be, comps)
        if not T.annihilates_dt:
            raise ModelError(f"object {name!r}: (1,1) tensors must satisfy "
                             "R(dt) = 0 (no nonzero 't' row)")
        return kind, T
    if kind == "twoform_E":
        _entry_dict(be, comps, name)
        return kind, TwoForm.from_dict(be, comps)
    # transform
    q_fwd = []
    q_inv = []
    have_inv = any(k.startswith("inv_") for k in comps)
    for i in range(1, n + 1):
        key = f"Q{i}"
        if key not in comps:
            raise ModelError(f"object {name!r}: transform needs component "
                             f"{key!r}")
        q_fwd.append(parse_field(comps[key], be))
        if have_inv:
            ikey = f"inv_q{i}"
            if ikey not in comps:
                raise ModelError(f"object {name!r}: transform with a partial "
                                 f"inverse; missing {ikey!r}")
            q_inv.append(parse_field(comps[ikey], be))
    try:
        return kind, FibredTransform(n, q_fwd, q_inv if have_inv else None)
    except Exception as exc:
        raise ModelError(f"object {name!r}: {exc}")


class Model:
    """A named collection of geometric objects sharing one fibre dimension."""

    def __init__(self, n: int, objects: dict):
        self.n = n
        self.objects = objects  # name -> (kind, obj)

    def get(self, name: str):
        if name not in self.objects:
            raise ModelError(f"no object named {name!r}; model has "
                             f"{sorted(self.objects)}")
        return self.objects[name]

    def by_kind(self, *kinds):
        return [obj for kind, obj in self.objects.values() if kind in kinds]

    def suite_inputs(self) -> SuiteInputs:
        """Sort the model's objects into the slots the identity suites use."""
        verts, tnorms = [], []
        for X in self.by_kind("vector_E"):
            if X.is_vertical:
                verts.append(X)
            elif X.is_t_normalized:
                tnorms.append(X)
            else:
                raise ModelError("suite vector fields must have dt-component "
                                 "0 or 1")
        return SuiteInputs(
            n=self.n,
            tensors=self.by_kind("tensor11_E"),
            oneforms=self.by_kind("oneform_E"),
            twoforms=self.by_kind("twoform_E"),
            vert_fields=verts,
            tnorm_fields=tnorms,
            scalars=self.by_kind("scalar_E"),
            transforms=self.by_kind("transform"),
        )


def load_model(path: str) -> Model:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ModelError(f"cannot read model file: {exc}")
    except json.JSONDecodeError as exc:
        raise ModelError(f"model file is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ModelError("model file must contain a JSON object")
    n = data.get("n")
    if not isinstance(n, int) or n < 1:
        raise ModelError("model needs a positive integer 'n'")
    raw = data.get("objects", {})
    if not isinstance(raw, dict) or not raw:
        raise ModelError("model needs a non-empty 'objects' dict")
    objects = {}
    for name, spec in raw.items():
        try:
            objects[name] = _build_object(name, spec, n)
        except ExprError as exc:
            raise ModelError(f"object {name!r}: {exc}")
    return Model(n, objects)
