import random

import pytest

from breakeven.analysis import (
    MAX_BISECTION_STEPS,
    asymptote,
    asymptote_gap,
    breakeven_derivative,
    financial_breakeven,
    first_order_gap,
    gap_to_accounting,
    invert_breakeven,
    sweep,
)
from breakeven.errors import DomainError, InverseDomainError
from breakeven.project import accounting_breakeven, coeff_a, coeff_b
from breakeven.reference import PUBLISHED_TABLE, TABLE_RATES
from breakeven.valuation import npv, npv_line, zero_tolerance

from oracles import central_difference, dcf_breakeven, random_params


def rel(a, b):
    return abs(a - b) / abs(b)


class TestFinancialBreakeven:
    @pytest.mark.parametrize(
        "r, expected", [(0.10, 84971.01), (0.03, 69966.10), (1.00, 361311.27)]
    )
    def test_published_points(self, ref, r, expected):
        assert financial_breakeven(ref, r) == pytest.approx(expected, abs=0.05)

    def test_equals_intercept_over_slope(self):
        rng = random.Random(3)
        for _ in range(300):
            p = random_params(rng)
            r = rng.uniform(1e-5, 5)
            line = npv_line(p, r)
            assert financial_breakeven(p, r) == pytest.approx(-line.intercept / line.slope, rel=1e-9)

    def test_matches_root_of_summation(self, ref):
        for r in (0.02, 0.10, 0.45, 3.0):
            assert financial_breakeven(ref, r) == pytest.approx(dcf_breakeven(ref, r), rel=1e-10)

    def test_zero_property(self):
        rng = random.Random(9)
        for _ in range(500):
            p = random_params(rng)
            r = rng.uniform(0, 5)
            assert abs(npv(p, financial_breakeven(p, r), r)) <= zero_tolerance(p)

    def test_limit_is_accounting_breakeven(self):
        rng = random.Random(10)
        for _ in range(200):
            p = random_params(rng)
            assert rel(financial_breakeven(p, 1e-9), accounting_breakeven(p)) < 1e-6

    def test_negative_rate_rejected(self, ref):
        with pytest.raises(DomainError):
            financial_breakeven(ref, -0.01)


class TestShape:
    def test_increasing_and_convex_reference(self, ref):
        grid = [0.005 * k for k in range(0, 201)]
        values = [financial_breakeven(ref, r) for r in grid]
        first = [y - x for x, y in zip(values, values[1:])]
        assert all(d > 0 for d in first)
        assert all(y - x > 0 for x, y in zip(first, first[1:]))

    def test_increasing_and_convex(self):
        # Q_f - (a + b r) = b (F(r) - r); the linear part has no curvature, so
        # convexity is checked on the excess, which keeps full relative precision
        # even where the curvature of Q_f is below the rounding of Q_f itself.
        rng = random.Random(14)
        grid = [0.005 * k for k in range(1, 400)]
        for _ in range(20):
            p = random_params(rng)
            values = [financial_breakeven(p, r) for r in grid]
            assert all(x < y for x, y in zip(values, values[1:]))
            excess = [asymptote_gap(p, r) for r in grid]
            first = [y - x for x, y in zip(excess, excess[1:])]
            assert all(y - x > 0 for x, y in zip(first, first[1:]))

    def test_asymptote_band(self):
        rng = random.Random(15)
        grid = [0.01 * k for k in range(1, 10001)]
        for _ in range(5):
            p = random_params(rng)
            a, b = asymptote(p)
            for r in grid[::7]:
                gap = asymptote_gap(p, r)
                assert 0 < gap < b / p.years
                naive = financial_breakeven(p, r) - (a + b * r)
                if naive > 1e-6 * b * r:
                    assert gap == pytest.approx(naive, rel=1e-6)

    def test_initial_slope(self, ref):
        b = coeff_b(ref)
        slope = breakeven_derivative(ref, 0.0)
        assert slope == pytest.approx(181318.68, abs=0.1)
        assert b / 2 < slope < b
        assert slope == pytest.approx(b * (1 + 1 / ref.years) / 2, rel=1e-6)

    @pytest.mark.parametrize("r", [1e-3, 0.10, 0.7, 5.0])
    def test_derivative_matches_finite_difference(self, ref, r):
        fd = central_difference(lambda x: financial_breakeven(ref, x), r, 1e-6 * r)
        assert rel(breakeven_derivative(ref, r), fd) < 1e-6

    def test_derivative_positive_far_out(self, ref):
        assert breakeven_derivative(ref, 100.0) > 0

    def test_asymptote_coefficients(self, ref):
        a, b = asymptote(ref)
        assert a == pytest.approx(31318.68, abs=0.01)
        assert b == pytest.approx(329670.33, abs=0.01)
        assert asymptote(ref.replace(tax_rate=0.0, fixed_costs=0.0))[0] == 0


class TestGap:
    def test_reference_gap(self, ref):
        assert gap_to_accounting(ref, 0.10) == pytest.approx(20685.30, abs=0.1)
        assert gap_to_accounting(ref, 0.10) == pytest.approx(
            financial_breakeven(ref, 0.10) - accounting_breakeven(ref), rel=1e-9
        )

    def test_first_order_near_zero(self, ref):
        assert first_order_gap(ref, 0.001) == pytest.approx(181.32, abs=0.01)
        assert gap_to_accounting(ref, 0.001) == pytest.approx(first_order_gap(ref, 0.001), rel=0.01)

    def test_vanishes_at_zero(self, ref):
        assert 0 < gap_to_accounting(ref, 1e-9) < 1e-3

    def test_first_order_convergence(self):
        rng = random.Random(16)
        for _ in range(50):
            p = random_params(rng)
            errors = [
                abs(gap_to_accounting(p, r) - first_order_gap(p, r)) / gap_to_accounting(p, r)
                for r in (1e-2, 1e-3, 1e-4)
            ]
            assert errors[0] > errors[1] > errors[2]
            # Order one: each decade in r shrinks the relative error about tenfold.
            assert errors[1] / errors[0] < 0.2 and errors[2] / errors[1] < 0.2

    def test_requires_positive_rate(self, ref):
        with pytest.raises(DomainError):
            gap_to_accounting(ref, 0.0)


class TestInverse:
    def test_published_points(self, ref):
        assert invert_breakeven(ref, 84971.01) == pytest.approx(0.10, abs=1e-4)
        assert invert_breakeven(ref, 361311.27) == pytest.approx(1.00, abs=1e-4)

    @pytest.mark.parametrize("q", [64285.71, 50000.0, 0.0])
    def test_rejects_quantities_at_or_below_accounting(self, ref, q):
        with pytest.raises(InverseDomainError, match="accounting break-even 64285.71"):
            invert_breakeven(ref, q)

    def test_rejects_exact_accounting_breakeven(self, ref):
        with pytest.raises(InverseDomainError):
            invert_breakeven(ref, accounting_breakeven(ref))

    def test_round_trip(self):
        rng = random.Random(17)
        for _ in range(200):
            p = random_params(rng)
            r = 10 ** rng.uniform(-3, 1)
            q = financial_breakeven(p, r)
            solved = invert_breakeven(p, q)
            assert rel(solved, r) < 1e-6
            assert abs(financial_breakeven(p, solved) - q) <= 1e-8 * q

    def test_large_quantity_needs_bracket_growth(self, ref):
        q = financial_breakeven(ref, 300.0)
        assert invert_breakeven(ref, q) == pytest.approx(300.0, rel=1e-9)

    def test_iteration_budget(self):
        assert MAX_BISECTION_STEPS == 200


class TestSweep:
    def test_table(self, ref):
        curve = sweep(ref, TABLE_RATES)
        assert curve.rates == list(TABLE_RATES)
        for (r, q), (_, published) in zip(curve.points, PUBLISHED_TABLE):
            if r == 0.17:
                assert q == pytest.approx(dcf_breakeven(ref, r), rel=1e-10)
                assert q == pytest.approx(102085, abs=1)
            else:
                assert q == pytest.approx(published, abs=0.05)

    def test_invariants(self, ref):
        grid = [0.0] + [0.02 * k for k in range(1, 200)]
        curve = sweep(ref, grid)
        qs = curve.quantities
        assert all(x < y for x, y in zip(qs, qs[1:]))
        for r, q in curve.points[1:]:
            assert curve.asymptote_at(r) < q < curve.asymptote_at(r) + curve.slope / ref.years

    def test_empty(self, ref):
        curve = sweep(ref, [])
        assert curve.points == ()
        assert (curve.intercept, curve.slope) == asymptote(ref)

    @pytest.mark.parametrize("grid", [[0.1, 0.1], [0.2, 0.1], [-0.1, 0.1]])
    def test_bad_grid(self, ref, grid):
        with pytest.raises(DomainError):
            sweep(ref, grid)
