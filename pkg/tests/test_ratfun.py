import random
from fractions import Fraction

import pytest

from hyperlog import (
    GaussianRational,
    PoleEvaluationError,
    PoleLocalizedRational,
    PoleSet,
    PoleSetMismatchError,
    ResidueObstruction,
    format_gaussian,
    format_plr,
    format_plr_pretty,
    parse_gaussian,
    parse_plr,
)

from conftest import random_gaussian, random_plr, random_pole_set

PLR = PoleLocalizedRational


@pytest.fixture()
def ps():
    return PoleSet(["0", "1"])


class TestGaussianRational:
    def test_field_ops(self):
        a = GaussianRational(Fraction(1, 2), Fraction(3))
        b = GaussianRational(Fraction(-2), Fraction(1, 5))
        assert (a + b) - b == a
        assert (a * b) / b == a
        assert a * (1 / a) == 1

    def test_division_example(self):
        one = GaussianRational(1)
        i = GaussianRational(0, 1)
        assert one / i == -i

    def test_parse_format_round_trip(self):
        cases = ["0", "1", "-3/4", "i", "-i", "2/7*i", "1/2+3/4*i", "1/2-3/4*i", "-1+i"]
        for text in cases:
            q = parse_gaussian(text)
            assert format_gaussian(q) == text
            assert parse_gaussian(format_gaussian(q)) == q

    def test_parse_rejects_junk(self):
        for bad in ["", "1//2", "x", "1+2j"]:
            with pytest.raises(ValueError):
                parse_gaussian(bad)

    def test_random_round_trip(self):
        rng = random.Random(3)
        for _ in range(200):
            q = random_gaussian(rng)
            assert parse_gaussian(format_gaussian(q)) == q


class TestPoleSet:
    def test_distinct_required(self):
        with pytest.raises(ValueError):
            PoleSet(["0", "0"])

    def test_parse_points(self):
        ps = PoleSet(["1/2", "1+i"])
        assert ps[0] == GaussianRational(Fraction(1, 2))
        assert complex(ps[1]) == 1 + 1j


class TestLinearOps:
    def test_cancellation(self, ps):
        f = PLR.simple_pole(ps, 1)  # 1/(z-1)
        assert (f + f.scale(-1)).is_zero

    def test_mixed_sum(self, ps):
        f = PLR.from_poly(ps, [0, 1]) + PLR.simple_pole(ps, 0)  # z + 1/z
        assert f.poly == (GaussianRational(0), GaussianRational(1))
        assert f.principal == {(0, 1): GaussianRational(1)}

    def test_scale(self, ps):
        f = PLR.pole_term(ps, 1, 2, 3)  # 3/(z-1)^2
        assert f.scale(2) == PLR.pole_term(ps, 1, 2, 6)

    def test_pole_set_mismatch_raises(self, ps):
        other = PoleSet(["2"])
        with pytest.raises(PoleSetMismatchError):
            PLR.one(ps) + PLR.one(other)


class TestMul:
    def test_distinct_simple_poles_partial_fractions(self, ps):
        # 1/((z-a)(z-b)) = (1/(a-b))/(z-a) - (1/(a-b))/(z-b), here a=0, b=1
        got = PLR.simple_pole(ps, 0) * PLR.simple_pole(ps, 1)
        assert got == PLR(ps, (), {(0, 1): -1, (1, 1): 1})

    def test_same_pole_orders_add(self, ps):
        sp = PLR.simple_pole(ps, 0)
        assert sp * sp == PLR.pole_term(ps, 0, 2, 1)

    def test_poly_cancels_pole(self, ps):
        z = PLR.from_poly(ps, [0, 1])
        assert z * PLR.simple_pole(ps, 0) == PLR.one(ps)

    def test_exact_evaluation_oracle(self):
        # evaluate_exact(f*g) == evaluate_exact(f)*evaluate_exact(g), exactly
        rng = random.Random(5)
        for _ in range(40):
            ps = random_pole_set(rng)
            f, g = random_plr(rng, ps), random_plr(rng, ps)
            prod = f * g
            for _ in range(3):
                z = random_gaussian(rng, span=7)
                if any(z == a for a in ps):
                    continue
                assert prod.evaluate_exact(z) == f.evaluate_exact(z) * g.evaluate_exact(z)

    def test_assoc_comm(self):
        rng = random.Random(7)
        for _ in range(30):
            ps = random_pole_set(rng)
            f, g, h = (random_plr(rng, ps) for _ in range(3))
            assert f * g == g * f
            assert (f * g) * h == f * (g * h)


class TestCalculus:
    def test_derivative_simple_pole(self, ps):
        assert PLR.simple_pole(ps, 0).derivative() == PLR.pole_term(ps, 0, 2, -1)

    def test_derivative_poly(self, ps):
        assert PLR.from_poly(ps, [0, 0, 1]).derivative() == PLR.from_poly(ps, [0, 2])

    def test_half_inverse_kernel_pattern(self, ps):
        # d/dz (z^2/2) = z, i.e. 1/(2 u0) has derivative z for u0 = 1/z^2;
        # equivalently primitive(1/z^2) = -1/z, whose derivative returns 1/z^2
        half_z2 = PLR.from_poly(ps, [0, 0, Fraction(1, 2)])
        assert half_z2.derivative() == PLR.from_poly(ps, [0, 1])
        minus_inv = PLR.pole_term(ps, 0, 1, -1)
        assert minus_inv.derivative() == PLR.pole_term(ps, 0, 2, 1)

    def test_residue_reads(self, ps):
        f = PLR(ps, (), {(1, 1): 2, (1, 2): 3})
        assert f.residue(1) == 2
        assert PLR.pole_term(ps, 0, 2, 1).residue(0) == 0
        assert PLR.from_poly(ps, [0, 0, 0, 1]).residue(0) == 0
        assert PLR.from_poly(ps, [0, 0, 0, 1]).residue(1) == 0

    def test_residue_bad_index(self, ps):
        with pytest.raises(ValueError):
            PLR.one(ps).residue(5)

    def test_primitive_power_rule(self, ps):
        assert PLR.pole_term(ps, 0, 2, 1).rational_primitive() == PLR.pole_term(ps, 0, 1, -1)

    def test_primitive_obstruction(self, ps):
        with pytest.raises(ResidueObstruction) as exc:
            PLR.simple_pole(ps, 0).rational_primitive()
        assert exc.value.pole_indices == (0,)

    def test_primitive_mixed(self, ps):
        # z + 1/(z-1)^3 -> z^2/2 - (1/2)/(z-1)^2; oracle: differentiate back
        f = PLR.from_poly(ps, [0, 1]) + PLR.pole_term(ps, 1, 3, 1)
        F = f.rational_primitive()
        assert F == PLR(ps, (0, 0, Fraction(1, 2)), {(1, 2): Fraction(-1, 2)})
        assert F.derivative() == f

    def test_leibniz_rule(self):
        rng = random.Random(9)
        for _ in range(30):
            ps = random_pole_set(rng)
            f, g = random_plr(rng, ps), random_plr(rng, ps)
            assert (f * g).derivative() == f.derivative() * g + f * g.derivative()

    def test_derivative_kills_residues(self):
        rng = random.Random(11)
        for _ in range(40):
            ps = random_pole_set(rng)
            df = random_plr(rng, ps).derivative()
            assert all(df.residue(i).is_zero for i in range(len(ps)))

    def test_primitive_derivative_round_trip(self):
        rng = random.Random(13)
        for _ in range(40):
            ps = random_pole_set(rng)
            f = random_plr(rng, ps)
            F = f.derivative().rational_primitive()
            shifted = f - PLR.constant(ps, f.poly[0] if f.poly else 0)
            assert F == shifted


class TestEvaluate:
    def test_point_values(self, ps):
        assert PLR.simple_pole(ps, 0).evaluate(2) == pytest.approx(0.5)
        assert PLR.simple_pole(ps, 1).evaluate(1 + 1j) == pytest.approx(-1j)
        f = PLR.from_poly(ps, [0, 1]) + PLR.simple_pole(ps, 0)
        assert f.evaluate(1) == pytest.approx(2.0)

    def test_at_pole_raises(self, ps):
        with pytest.raises(PoleEvaluationError):
            PLR.simple_pole(ps, 0).evaluate(0)
        with pytest.raises(PoleEvaluationError):
            PLR.simple_pole(ps, 0).evaluate(1e-17)

    def test_exact_at_pole_raises(self, ps):
        with pytest.raises(PoleEvaluationError):
            PLR.simple_pole(ps, 1).evaluate_exact(GaussianRational(1))

    def test_pole_elsewhere_is_fine(self, ps):
        # z + 1/z has no principal part at pole 1, so z=1 is a regular point
        f = PLR.from_poly(ps, [0, 1]) + PLR.simple_pole(ps, 0)
        assert f.evaluate_exact(GaussianRational(1)) == 2

    def test_mul_consistency_float(self):
        rng = random.Random(15)
        checked = 0
        while checked < 60:
            ps = random_pole_set(rng)
            f, g = random_plr(rng, ps), random_plr(rng, ps)
            z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if any(abs(z - a) < 0.3 for a in ps.approx):
                continue
            lhs = (f * g).evaluate(z)
            rhs = f.evaluate(z) * g.evaluate(z)
            scale = max(1.0, abs(lhs), abs(rhs))
            assert abs(lhs - rhs) / scale < 1e-12
            checked += 1


class TestTextForms:
    def test_normal_form_round_trip(self, ps):
        f = PLR(ps, (Fraction(1, 2), 0, 3), {(0, 1): -1, (1, 2): GaussianRational(0, Fraction(2, 7))})
        text = format_plr(f)
        assert parse_plr(text, ps) == f

    def test_random_round_trip(self):
        rng = random.Random(17)
        for _ in range(50):
            ps = random_pole_set(rng)
            f = random_plr(rng, ps)
            assert parse_plr(format_plr(f), ps) == f

    def test_zero_forms(self, ps):
        assert format_plr(PLR.zero(ps)) == "poly: []"
        assert parse_plr("poly: []", ps).is_zero
        assert parse_plr("pp: {}", ps).is_zero

    def test_pretty(self, ps):
        assert format_plr_pretty(PLR.pole_term(ps, 0, 1, -1)) == "-1/z"
        assert format_plr_pretty(PLR.zero(ps)) == "0"
        f = PLR(ps, (0, 0, Fraction(1, 2)), {(1, 2): Fraction(-1, 2)})
        assert format_plr_pretty(f) == "1/2*z^2 - 1/2/(z-1)^2"

    def test_parse_rejects_bad_sections(self, ps):
        with pytest.raises(ValueError):
            parse_plr("nope: [1]", ps)
        with pytest.raises(ValueError):
            parse_plr("poly: {1}", ps)
