"""Built-in object corpus used by the verification suites and tests."""
from __future__ import annotations

from dataclasses import dataclass, field

from .charts import FibredTransform
from .fields import parse_field
from .spaces import base_e
from .tensors import OneForm, Tensor11, TwoForm, VectorField


@dataclass
class SuiteInputs:
    n: int
    tensors: list = field(default_factory=list)      # (1,1) tensors killing dt
    oneforms: list = field(default_factory=list)
    twoforms: list = field(default_factory=list)
    vert_fields: list = field(default_factory=list)  # vertical vector fields
    tnorm_fields: list = field(default_factory=list)  # <X, dt> = 1 fields
    scalars: list = field(default_factory=list)      # functions on the base
    transforms: list = field(default_factory=list)

    @property
    def lift_fields(self):
        """Vector fields the complete lift accepts."""
        return self.vert_fields + self.tnorm_fields


def torsion_free_example(n=1) -> Tensor11:
    """R = q d/dq (x) dq (n=1) or diag(q1, q2) (n=2); vanishing torsion."""
    base = base_e(n)
    return Tensor11.from_dict(
        base, {f"q{i},q{i}": f"q{i}" for i in range(1, n + 1)})


def torsion_example() -> Tensor11:
    """R = q d/dq (x) dq + t d/dq (x) dt on n=1; nonzero torsion but
    vanishing Haantjes tensor."""
    return Tensor11.from_dict(base_e(1), {"q1,q1": "q1", "q1,t": "t"})


def dn_example_tensor() -> Tensor11:
    """The n=2 tensor obtained by pushing diag(u, v+3) in hidden
    coordinates (u, v) through q1 = u + t*v, q2 = v."""
    return Tensor11.from_dict(base_e(2), {
        "q1,t": "-(q1 - t*q2)*q2",
        "q1,q1": "q1 - t*q2",
        "q1,q2": "t*(q2 + 3 - q1 + t*q2)",
        "q2,q2": "q2 + 3",
    })


def dn_example_expected_transform() -> FibredTransform:
    """The closed-form transform the eigenvalue construction should match:
    Q1 = q1 - t*q2 (= u), Q2 = q2 + 3 (= v + 3)."""
    base = base_e(2)
    fwd = [parse_field("q1 - t*q2", base), parse_field("q2 + 3", base)]
    inv = [parse_field("q1 + t*(q2 - 3)", base), parse_field("q2 - 3", base)]
    return FibredTransform(2, fwd, inv)


def standard_corpus(n: int) -> SuiteInputs:
    base = base_e(n)
    inp = SuiteInputs(n=n)
    if n == 1:
        inp.tensors = [
            torsion_free_example(1),
            torsion_example(),
            Tensor11.from_dict(base, {"q1,q1": "t + q1", "q1,t": "q1^2"}),
        ]
        inp.oneforms = [
            OneForm.from_dict(base, {"q1": 1.0}),
            OneForm.from_dict(base, {"q1": "t", "t": "q1"}),
            OneForm.from_dict(base, {"q1": "sin(q1)", "t": "t*q1"}),
        ]
        inp.twoforms = [
            TwoForm.from_dict(base, {"q1,t": "q1"}),
            TwoForm.from_dict(base, {"q1,t": 1.0}),
            TwoForm.from_dict(base, {"t,q1": "t*q1"}),
        ]
        inp.vert_fields = [
            VectorField.from_dict(base, {"q1": 1.0}),
            VectorField.from_dict(base, {"q1": "q1"}),
            VectorField.from_dict(base, {"q1": "t*q1"}),
        ]
        inp.tnorm_fields = [
            VectorField.from_dict(base, {"t": 1.0}),
            VectorField.from_dict(base, {"t": 1.0, "q1": "t"}),
            VectorField.from_dict(base, {"t": 1.0, "q1": "q1"}),
        ]
        inp.scalars = [
            parse_field("t*q1", base),
            parse_field("sin(t)", base),
            parse_field("t + q1", base),
        ]
        inp.transforms = [
            FibredTransform(1, [parse_field("exp(t)*q1", base)],
                            [parse_field("exp(-t)*q1", base)]),
            FibredTransform(1, [parse_field("q1 + t^2", base)],
                            [parse_field("q1 - t^2", base)]),
        ]
    elif n == 2:
        inp.tensors = [
            torsion_free_example(2),
            dn_example_tensor(),
            Tensor11.from_dict(base, {
                "q1,q1": "q1", "q1,q2": "t", "q2,q2": "q2", "q1,t": "q2"}),
        ]
        inp.oneforms = [
            OneForm.from_dict(base, {"q1": 1.0}),
            OneForm.from_dict(base, {"q1": "q2", "q2": "t", "t": "q1"}),
            OneForm.from_dict(base, {"q2": "sin(q1)"}),
        ]
        inp.twoforms = [
            TwoForm.from_dict(base, {"q1,q2": 1.0}),
            TwoForm.from_dict(base, {"q1,t": "t"}),
            TwoForm.from_dict(base, {"q2,t": "q2", "q1,q2": "t*q1"}),
        ]
        inp.vert_fields = [
            VectorField.from_dict(base, {"q1": 1.0}),
            VectorField.from_dict(base, {"q2": "q1"}),
            VectorField.from_dict(base, {"q1": "t*q2", "q2": "q2"}),
        ]
        inp.tnorm_fields = [
            VectorField.from_dict(base, {"t": 1.0}),
            VectorField.from_dict(base, {"t": 1.0, "q1": "t", "q2": "q1*q2"}),
            VectorField.from_dict(base, {"t": 1.0, "q1": "q2"}),
        ]
        inp.scalars = [
            parse_field("t*q1", base),
            parse_field("q1 + q2", base),
            parse_field("sin(t)*q2", base),
        ]
        inp.transforms = [
            FibredTransform(2,
                            [parse_field("q1 + t*q2", base),
                             parse_field("q2", base)],
                            [parse_field("q1 - t*q2", base),
                             parse_field("q2", base)]),
        ]
    else:
        raise ValueError("the built-in corpus covers n = 1 and n = 2")
    return inp
