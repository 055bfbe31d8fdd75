import math

import pytest

from hyplegendre import (
    DEFAULT_CONFIG,
    DegenerateCase,
    DomainError,
    EvalConfig,
    Hyp2F1,
    InvalidParams,
    NoConvergence,
    PoleError,
    connection_15_8_4,
    gamma,
    hyp2f1,
    hyp2f1_derivative,
    inversion_15_8_6,
    pfaff_transform,
    pochhammer,
    quadratic_15_8_20,
    rgamma,
)
from hyplegendre.rng import SplitMix64

from oracles import central_diff, direct_2f1, rising

SQRT_PI = 1.7724538509055160273  # high-precision constant, 20 digits


class TestPochhammer:
    def test_empty_product(self):
        assert pochhammer(2.5, 0) == 1.0

    def test_product_loop_oracle(self):
        # independent oracle: explicit product 3*4*5*6
        expected = 1.0
        for k in range(4):
            expected *= 3.0 + k
        assert expected == 360.0
        assert pochhammer(3.0, 4) == expected

    def test_zero_factor(self):
        assert pochhammer(-2.0, 3) == 0.0

    def test_negative_order_rejected(self):
        with pytest.raises(DomainError):
            pochhammer(1.0, -1)


class TestGamma:
    def test_one(self):
        assert abs(gamma(1.0) - 1.0) <= 1e-14

    def test_half(self):
        assert abs(gamma(0.5) - SQRT_PI) / SQRT_PI <= 1e-13

    def test_factorial(self):
        assert abs(gamma(6.0) - math.factorial(5)) / 120.0 <= 1e-13

    def test_against_libm(self):
        # platform gamma as an independent oracle over the accuracy window
        for i in range(391):
            x = 0.5 + i * 0.05
            assert abs(gamma(x) - math.gamma(x)) / math.gamma(x) <= 1e-13

    def test_reflection_region(self):
        for x in (-0.25, -1.3, -3.7, 0.2):
            assert abs(gamma(x) - math.gamma(x)) / abs(math.gamma(x)) <= 1e-12

    def test_poles(self):
        for x in (0.0, -1.0, -5.0, -2.0 + 1e-12):
            with pytest.raises(PoleError):
                gamma(x)

    def test_duplication(self):
        for i in range(96):
            x = 0.5 + i * 0.1
            lhs = gamma(2.0 * x)
            rhs = 2.0 ** (2.0 * x - 1.0) * gamma(x) * gamma(x + 0.5) / SQRT_PI
            assert abs(lhs - rhs) / abs(lhs) <= 1e-11

    def test_rgamma_zero_at_poles(self):
        assert rgamma(0.0) == 0.0
        assert rgamma(-4.0) == 0.0
        assert abs(rgamma(3.0) - 0.5) <= 1e-14


class TestHyp2F1Type:
    def test_terminating_degree_from_a(self):
        assert Hyp2F1(-2.0, 3.0, 1.0).terminating_degree == 2

    def test_terminating_degree_smallest(self):
        assert Hyp2F1(-5.0, -2.0, 1.3).terminating_degree == 2

    def test_non_terminating(self):
        assert Hyp2F1(0.5, 1.5, 2.0).terminating_degree is None

    def test_pole_in_c_rejected(self):
        with pytest.raises(PoleError):
            Hyp2F1(0.5, 1.5, -1.0)

    def test_pole_in_c_saved_by_termination(self):
        p = Hyp2F1(-1.0, 1.5, -2.0)
        assert p.terminating_degree == 1

    def test_config_validation(self):
        with pytest.raises(InvalidParams):
            EvalConfig(rel_tol=0.0)
        with pytest.raises(InvalidParams):
            EvalConfig(max_terms=0)


class TestHyp2F1Eval:
    def test_at_zero(self):
        assert hyp2f1(Hyp2F1(1.7, -0.3, 2.2), 0.0) == 1.0

    def test_polynomial_oracle(self):
        # 2F1(-2,3;1;z) = 1 - 6z + 6z^2
        z = 0.5
        assert hyp2f1(Hyp2F1(-2.0, 3.0, 1.0), z) == pytest.approx(
            1.0 - 6.0 * z + 6.0 * z * z, abs=1e-15
        )
        assert hyp2f1(Hyp2F1(-2.0, 3.0, 1.0), 0.5) == -0.5

    def test_degree_one_oracle(self):
        r = 0.3
        z = (1.0 - r) / 2.0
        assert hyp2f1(Hyp2F1(-1.0, 2.0, 1.0), z) == pytest.approx(r, abs=1e-15)

    def test_direct_sum_agreement(self):
        rng = SplitMix64(7)
        cfg = EvalConfig(rel_tol=1e-15, max_terms=500, pole_tol=1e-10)
        for _ in range(200):
            a = rng.uniform(-4.0, 4.0)
            b = rng.uniform(-4.0, 4.0)
            c = rng.uniform(0.2, 5.0)
            z = rng.uniform(-0.3, 0.3)
            got = hyp2f1(Hyp2F1(a, b, c), z, cfg)
            want = direct_2f1(a, b, c, z)
            assert abs(got - want) <= 1e-12 * max(1.0, abs(want))

    def test_symmetry_bitwise(self):
        rng = SplitMix64(11)
        for _ in range(50):
            a = rng.uniform(-3.0, 3.0)
            b = rng.uniform(-3.0, 3.0)
            c = rng.uniform(0.3, 4.0)
            z = rng.uniform(-0.9, 0.95)
            assert hyp2f1(Hyp2F1(a, b, c), z) == hyp2f1(Hyp2F1(b, a, c), z)

    def test_terminating_exact_and_stable(self):
        p = Hyp2F1(-3.0, 2.2, 1.4)
        tight = EvalConfig(rel_tol=1e-15, max_terms=4, pole_tol=1e-10)
        loose = EvalConfig(rel_tol=1e-15, max_terms=500, pole_tol=1e-10)
        assert hyp2f1(p, 7.3, tight) == hyp2f1(p, 7.3, loose)

    def test_dispatch_region_against_oracle(self):
        # 0.5 < z < 1 goes through the connection formula; the fixed-length
        # direct sum still converges at z = 0.8 and is fully independent
        p = Hyp2F1(0.4, 0.7, 1.9)
        got = hyp2f1(p, 0.8)
        want = direct_2f1(0.4, 0.7, 1.9, 0.8, terms=400)
        assert abs(got - want) <= 1e-11 * abs(want)

    def test_negative_argument_against_oracle(self):
        p = Hyp2F1(0.4, 0.7, 1.9)
        got = hyp2f1(p, -0.8)
        want = direct_2f1(0.4, 0.7, 1.9, -0.8, terms=400)
        assert abs(got - want) <= 1e-12 * abs(want)

    def test_gauss_point(self):
        a, b, c = 0.3, 0.4, 2.0
        got = hyp2f1(Hyp2F1(a, b, c), 1.0)
        want = gamma(c) * gamma(c - a - b) / (gamma(c - a) * gamma(c - b))
        assert abs(got - want) <= 1e-13 * abs(want)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            hyp2f1(Hyp2F1(0.3, 0.4, 0.5), 1.2)
        with pytest.raises(DomainError):
            hyp2f1(Hyp2F1(0.3, 3.4, 0.5), 1.0)  # c-a-b < 0 at z=1
        with pytest.raises(DomainError):
            hyp2f1(Hyp2F1(0.3, 0.4, 0.5), -1.5)

    def test_no_convergence(self):
        cfg = EvalConfig(rel_tol=1e-15, max_terms=5, pole_tol=1e-10)
        with pytest.raises(NoConvergence):
            hyp2f1(Hyp2F1(0.5, 0.7, 1.1), 0.45, cfg)

    def test_degenerate_dispatch(self):
        # integer c-a-b blocks the connection path for non-terminating series
        with pytest.raises(DegenerateCase):
            hyp2f1(Hyp2F1(0.3, 0.7, 2.0), 0.8)


class TestDerivative:
    def test_leading_coefficient(self):
        assert hyp2f1_derivative(Hyp2F1(-2.0, 3.0, 1.0), 0.0) == -6.0
        p = Hyp2F1(1.3, 0.4, 2.7)
        assert hyp2f1_derivative(p, 0.0) == pytest.approx(
            p.a * p.b / p.c, abs=1e-15
        )

    def test_degree_one(self):
        assert hyp2f1_derivative(Hyp2F1(-1.0, 2.0, 1.0), 0.4) == -2.0

    def test_against_central_differences(self):
        p = Hyp2F1(0.6, 1.4, 2.3)
        f = lambda z: hyp2f1(p, z)
        for z in (0.1, 0.3, -0.2):
            fd = central_diff(f, z, 1e-6)
            assert abs(hyp2f1_derivative(p, z) - fd) <= 1e-8 * (1.0 + abs(fd))


class TestPfaff:
    def test_parameter_swap(self):
        q, power = pfaff_transform(Hyp2F1(-2.0, 3.0, 1.0))
        assert (q.a, q.b, q.c) == (3.0, -2.0, 1.0)
        assert power == 0.0

    def test_power(self):
        q, power = pfaff_transform(Hyp2F1(0.5, 0.5, 1.5))
        assert (q.a, q.b, q.c) == (1.0, 1.0, 1.5)
        assert power == 0.5

    def test_numeric_consistency(self):
        p = Hyp2F1(0.5, 0.5, 1.5)
        q, power = pfaff_transform(p)
        z = 0.3
        lhs = hyp2f1(p, z)
        rhs = (1.0 - z) ** power * hyp2f1(q, z)
        assert abs(lhs - rhs) <= 1e-12 * abs(lhs)

    def test_involution_exact_on_dyadic_grid(self):
        # dyadic parameters make the subtractions exact, so the double
        # transform must reproduce the triple bitwise
        vals = [k / 8.0 for k in range(-20, 21)]
        for a in vals[::5]:
            for b in vals[::7]:
                for c in (0.25, 1.5, 2.125, 3.75):
                    p = Hyp2F1(a, b, c)
                    q, _ = pfaff_transform(p)
                    back, _ = pfaff_transform(q)
                    assert (back.a, back.b, back.c) == (p.a, p.b, p.c)


class TestConnection:
    def test_terminating_case(self):
        # terminating series evaluate directly on both sides
        p = Hyp2F1(-2.0, 3.0, 1.3)
        z = 0.6
        lhs = math.sin(math.pi * (p.c - p.a - p.b)) / math.pi * hyp2f1(p, z)
        rhs = connection_15_8_4(p, z)
        assert abs(lhs - rhs) <= 1e-10 * (1.0 + abs(lhs))

    def test_degree_one_polynomials(self):
        p = Hyp2F1(-1.0, 2.4, 1.7)
        for z in (0.2, 0.5, 0.9):
            lhs = math.sin(math.pi * (p.c - p.a - p.b)) / math.pi * hyp2f1(p, z)
            assert abs(connection_15_8_4(p, z) - lhs) <= 1e-12 * (1.0 + abs(lhs))

    def test_non_terminating_against_direct_sum(self):
        a, b, c = 0.4, 0.7, 1.9
        z = 0.6
        lhs = math.sin(math.pi * (c - a - b)) / math.pi * direct_2f1(a, b, c, z, 400)
        rhs = connection_15_8_4(Hyp2F1(a, b, c), z)
        assert abs(lhs - rhs) <= 1e-11 * (1.0 + abs(lhs))

    def test_finite_limit_near_one(self):
        p = Hyp2F1(0.3, 0.4, 2.0)  # c-a-b > 0
        val = connection_15_8_4(p, 1.0 - 1e-8)
        lim = math.sin(math.pi * (p.c - p.a - p.b)) / math.pi * hyp2f1(p, 1.0)
        assert abs(val - lim) <= 1e-6 * (1.0 + abs(lim))

    def test_integer_difference_degenerate(self):
        with pytest.raises(DegenerateCase):
            connection_15_8_4(Hyp2F1(0.3, 0.7, 2.0), 0.6)


class TestInversion:
    def test_order_zero(self):
        assert inversion_15_8_6(0, 2.0, 0.5, 0.7) == 1.0

    def test_hand_expanded_degree_one(self):
        # m=1, b=2, c=0.5: lhs = -(0.5/2)(1-4z), rhs = z(1 - 0.25/z)
        z = 0.7
        lhs = -(0.5 / 2.0) * (1.0 - 4.0 * z)
        rhs = inversion_15_8_6(1, 2.0, 0.5, z)
        assert abs(lhs - rhs) <= 1e-12 * (1.0 + abs(lhs))

    def test_degree_two_oracle(self):
        m, b, c, z = 2, 3.0, 0.5, 2.0
        lhs = (-1.0) ** m * rising(c, m) / rising(b, m) * direct_2f1(-m, b, c, z, m + 1)
        rhs = inversion_15_8_6(m, b, c, z)
        assert abs(lhs - rhs) <= 1e-11 * (1.0 + abs(lhs))

    def test_errors(self):
        with pytest.raises(DomainError):
            inversion_15_8_6(1, 2.0, 0.5, 0.0)
        with pytest.raises(PoleError):
            inversion_15_8_6(2, -1.0, 0.5, 0.3)


class TestQuadratic:
    def test_trivial_at_zero(self):
        assert quadratic_15_8_20(0.7, 1.3, 0.0) == 1.0

    def test_degree_one_polynomial_oracle(self):
        # a=-1, c=0.5: lhs = 2F1(-1,2;0.5;z) = 1 - 4z
        a, c, z = -1.0, 0.5, 0.2
        lhs = 1.0 - 4.0 * z
        rhs = quadratic_15_8_20(a, c, z)
        assert abs(lhs - rhs) <= 1e-12 * (1.0 + abs(lhs))

    def test_generic_below_half(self):
        for a, c, z in ((0.3, 1.4, 0.2), (1.2, 0.8, 0.3), (0.3, 1.4, 0.45)):
            lhs = hyp2f1(Hyp2F1(a, 1.0 - a, c), z)
            rhs = quadratic_15_8_20(a, c, z)
            assert abs(lhs - rhs) <= 1e-12 * (1.0 + abs(lhs))

    def test_boundary_rejected(self):
        with pytest.raises(DomainError):
            quadratic_15_8_20(0.3, 1.4, 0.5)
        with pytest.raises(DomainError):
            quadratic_15_8_20(0.3, 1.4, 1.2)


def test_scipy_cross_check():
    scipy_special = pytest.importorskip("scipy.special")
    rng = SplitMix64(23)
    for _ in range(60):
        a = rng.uniform(-3.0, 3.0)
        b = rng.uniform(-3.0, 3.0)
        c = rng.uniform(0.3, 4.0)
        z = rng.uniform(-0.95, 0.95)
        p = Hyp2F1(a, b, c)
        if p.terminating_degree is None and abs(z) > 0.5:
            cab = c - a - b
            if abs(cab - round(cab)) < 0.05:
                continue
        want = float(scipy_special.hyp2f1(a, b, c, z))
        got = hyp2f1(p, z)
        assert abs(got - want) <= 1e-10 * (1.0 + abs(want))
