import random

import pytest

from breakeven.analysis import financial_breakeven
from breakeven.errors import DomainError, ValidationError
from breakeven.reference import TABLE_TOLERANCE, published_value
from breakeven.sensitivity import (
    PARAMETERS,
    elasticity,
    perturb_and_sweep,
    perturbed,
    rate_scenarios,
)

from oracles import dcf_breakeven, random_params


def change(params, which, delta, r=0.10):
    report = perturb_and_sweep(params, which, [delta], [r])
    return report.cells[0].relative_change


class TestPerturbation:
    def test_scales_one_field(self, ref):
        p = perturbed(ref, "price", 0.1)
        assert p.price == pytest.approx(4.07)
        assert (p.variable_cost, p.fixed_costs) == (ref.variable_cost, ref.fixed_costs)

    def test_unknown_parameter(self, ref):
        with pytest.raises(ValueError):
            perturbed(ref, "tax_rate", 0.1)

    def test_infeasible_raises_validation(self, ref):
        with pytest.raises(ValidationError):
            perturbed(ref, "price", -0.2)


class TestReferenceChanges:
    def test_fixed_costs_weak(self, ref):
        up, down = change(ref, "fixed_costs", 0.1), change(ref, "fixed_costs", -0.1)
        assert up == pytest.approx(0.0504, abs=5e-4)
        assert down == pytest.approx(-up, rel=1e-9)

    def test_price_strong(self, ref):
        assert change(ref, "price", 0.1) == pytest.approx(-0.346, abs=1e-3)
        assert change(ref, "price", -0.1) == pytest.approx(1.12, abs=0.01)

    def test_variable_cost_strong(self, ref):
        assert change(ref, "variable_cost", 0.1) == pytest.approx(0.75, abs=1e-3)
        assert change(ref, "variable_cost", -0.1) == pytest.approx(-0.30, abs=1e-3)

    def test_perturbed_value_matches_summation(self, ref):
        for which in PARAMETERS:
            cell = perturb_and_sweep(ref, which, [0.1], [0.10]).cells[0]
            oracle = dcf_breakeven(perturbed(ref, which, 0.1), 0.10)
            assert cell.q_f_perturbed == pytest.approx(oracle, rel=1e-10)


class TestSweep:
    def test_layout(self, ref):
        grid = [0.05, 0.10, 0.20]
        report = perturb_and_sweep(ref, "fixed_costs", [-0.1, 0.1], grid)
        assert report.parameter == "fixed_costs"
        assert [(c.delta, c.r) for c in report.cells] == [(d, r) for d in (-0.1, 0.1) for r in grid]

    def test_zero_delta_reproduces_base(self, ref):
        grid = [0.0, 0.03, 0.10, 1.0]
        for which in PARAMETERS:
            for cell in perturb_and_sweep(ref, which, [0.0], grid).cells:
                assert cell.q_f_perturbed == cell.q_f_base == financial_breakeven(ref, cell.r)
                assert cell.relative_change == 0.0

    def test_infeasible_cells_continue(self, ref):
        report = perturb_and_sweep(ref, "price", [-0.2, 0.1], [0.05, 0.10])
        bad = [c for c in report.cells if c.delta == -0.2]
        good = [c for c in report.cells if c.delta == 0.1]
        assert all(not c.feasible and c.relative_change is None for c in bad)
        assert all("price must exceed variable cost" in c.reason for c in bad)
        assert all(c.feasible for c in good)

    def test_signs(self):
        rng = random.Random(31)
        for _ in range(100):
            p = random_params(rng)
            r = rng.uniform(0.0, 1.0)
            assert change(p, "price", 0.01, r) < 0
            assert change(p, "variable_cost", 0.01, r) > 0
            if p.fixed_costs > 0:
                assert change(p, "fixed_costs", 0.01, r) > 0

    def test_bad_grid(self, ref):
        with pytest.raises(DomainError):
            perturb_and_sweep(ref, "price", [0.1], [0.2, 0.1])


class TestElasticity:
    def test_reference(self, ref):
        e_cf = elasticity(ref, "fixed_costs", 0.10)
        e_p = elasticity(ref, "price", 0.10)
        e_cv = elasticity(ref, "variable_cost", 0.10)
        assert 0 < e_cf < 0.6
        assert e_p < -2
        assert e_cv > 2

    def test_against_closed_form(self, ref):
        # dQ_f/dp = -Q_f / (p - C_v), so the price elasticity is -p / (p - C_v).
        expected = -ref.price / ref.margin
        assert elasticity(ref, "price", 0.10) == pytest.approx(expected, rel=1e-6)
        expected_cv = ref.variable_cost / ref.margin
        assert elasticity(ref, "variable_cost", 0.10) == pytest.approx(expected_cv, rel=1e-6)

    def test_zero_fixed_costs(self, ref):
        assert elasticity(ref.replace(fixed_costs=0.0), "fixed_costs", 0.1) == 0.0


class TestRateScenarios:
    def test_table_rows(self, ref):
        rows = rate_scenarios(ref, 0.10, [-0.1, 0.1, 0.2])
        assert rows[0].delta == 0.0 and rows[0].r == 0.10
        for row in rows:
            assert row.q_f == pytest.approx(published_value(round(row.r, 12)), abs=TABLE_TOLERANCE)

    @pytest.mark.parametrize("base, delta", [(0.0, 0.1), (0.1, -1.0)])
    def test_non_positive_rates(self, ref, base, delta):
        with pytest.raises(DomainError):
            rate_scenarios(ref, base, [delta])
