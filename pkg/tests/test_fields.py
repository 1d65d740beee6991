import math
import random

import pytest

from jetlift import (
    SpaceMismatchError,
    base_e,
    compose,
    const_field,
    coord_field,
    inject,
    parse_field,
    phase_j,
    zero,
)
from jetlift.fields import ProceduralField, is_symbolically_one, is_symbolically_zero


def rand_points(dim, n=32, seed=1):
    rng = random.Random(seed)
    return [tuple(rng.uniform(-2, 2) for _ in range(dim)) for _ in range(n)]


class TestArithmetic:
    def test_operators(self):
        be = base_e(1)
        f = parse_field("t", be)
        g = parse_field("q1", be)
        combos = [
            (f + g, lambda t, q: t + q),
            (f - g, lambda t, q: t - q),
            (f * g, lambda t, q: t * q),
            (f + 2.0, lambda t, q: t + 2),
            (3.0 * g, lambda t, q: 3 * q),
            (-f, lambda t, q: -t),
        ]
        for field, ref in combos:
            for pt in rand_points(2):
                assert field.eval(pt) == pytest.approx(ref(*pt), abs=1e-12)

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatchError):
            parse_field("t", base_e(1)) + parse_field("t", base_e(2))

    def test_symbolic_predicates(self):
        be = base_e(1)
        assert is_symbolically_zero(zero(be))
        assert is_symbolically_zero(parse_field("q1", be) - parse_field("q1", be))
        assert is_symbolically_one(const_field(be, 1.0))
        assert not is_symbolically_zero(parse_field("q1", be))


class TestInject:
    def test_base_to_phase(self):
        f = parse_field("t*q1", base_e(1))
        g = inject(f, phase_j(1))
        assert g.space == phase_j(1)
        assert g.eval((2.0, 3.0, 99.0)) == pytest.approx(6.0)
        assert g.diff("p1").eval((2.0, 3.0, 99.0)) == 0.0

    def test_procedural_inject(self):
        be = base_e(1)
        proc = ProceduralField(be,
                               lambda pt: pt[0] * pt[1],
                               lambda pt: (pt[1], pt[0]))
        g = inject(proc, phase_j(1))
        assert g.eval((2.0, 3.0, 99.0)) == pytest.approx(6.0)
        assert g.diff("q1").eval((2.0, 3.0, 99.0)) == pytest.approx(2.0)
        assert g.diff("p1").eval((2.0, 3.0, 99.0)) == pytest.approx(0.0)


class TestCompose:
    def test_symbolic_substitution(self):
        be = base_e(1)
        f = parse_field("q1^2 + t", be)
        maps = [coord_field(be, "t"), parse_field("t*q1", be)]
        g = compose(f, maps, be)
        for t, q in rand_points(2):
            assert g.eval((t, q)) == pytest.approx((t * q) ** 2 + t, abs=1e-12)

    def test_procedural_chain_rule(self):
        be = base_e(1)
        f = ProceduralField(be,
                            lambda pt: math.sin(pt[1]),
                            lambda pt: (0.0, math.cos(pt[1])))
        maps = [coord_field(be, "t"), parse_field("t*q1", be)]
        g = compose(f, maps, be)
        ref = parse_field("sin(t*q1)", be)
        for pt in rand_points(2):
            assert g.eval(pt) == pytest.approx(ref.eval(pt), abs=1e-12)
            assert g.diff("q1").eval(pt) == pytest.approx(
                ref.diff("q1").eval(pt), abs=1e-9)
