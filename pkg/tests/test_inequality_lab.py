import math
import random

import pytest

from rct_hyper import (
    CLAIM_IDS,
    DomainError,
    HypParams,
    MixedTrendError,
    Params,
    Trend,
    TurningPointNotFound,
    beta,
    coefficient_quotient,
    find_turning_point,
    h_sequence,
    h_star_sequence,
    hyp2f1,
    iter_scan,
    j_function,
    quotient_f,
    quotient_g,
    r_constant,
    region_expectation,
    sequence_trend,
    trend_of_values,
    verify_theorem,
)
from rct_hyper.inequality_lab import (
    MARGIN_TOL,
    default_grid,
    dense_grid,
    linspace,
    monotonicity_grid,
    sample_region,
    turning_scan_grid,
)
from rct_hyper.regions import classify
from rct_hyper.special_core import LN_27
from rct_hyper.hypergeometric import SeriesCoefficients

EQ = Params(0.3333333333333333, 0.6666666666666666)
BETA_STAR = 2.0 * math.sqrt(3.0) * math.pi / 3.0


class TestQuotients:
    def test_equality_point_is_one(self):
        for r in (0.1, 0.5, 0.9, 0.999999):
            assert quotient_f(EQ, r) == 1.0
            assert quotient_g(EQ, r) == 1.0

    def test_limit_at_zero(self):
        assert quotient_f(Params(0.2, 0.2), 1e-8) == pytest.approx(1.0, abs=1e-6)
        assert quotient_g(Params(0.3, 0.5), 1e-8) == pytest.approx(1.0, abs=1e-6)

    def test_f_frozen_value_near_one(self):
        # reference value computed with 40-digit arithmetic
        got = quotient_f(Params(0.2, 0.2), 1.0 - 1e-6)
        assert got == pytest.approx(0.51851715841804709, rel=1e-9)

    def test_f_near_one_between_limits(self):
        p = Params(0.2, 0.2)
        lim = BETA_STAR / beta(p)
        f = quotient_f(p, 1.0 - 1e-6)
        assert lim < f < 1.0
        # log-slow approach toward the limit: consistent with the two-term model
        big_l = math.log(1e-6)
        model = lim * (r_constant(p) - big_l) / (LN_27 - big_l)
        assert f == pytest.approx(model, abs=1e-4)

    def test_g_frozen_values(self):
        p = Params(0.3, 0.5)
        assert quotient_g(p, 0.5) == pytest.approx(0.98301453051489116, rel=1e-10)
        assert quotient_g(p, 0.5) > quotient_g(p, 0.8)

    def test_domain(self):
        with pytest.raises(DomainError):
            quotient_f(EQ, 0.0)
        with pytest.raises(DomainError):
            quotient_g(EQ, 1.0)


class TestJFunction:
    def test_identically_zero_at_equality_point(self):
        for r in (0.01, 0.3, 0.7, 0.99, 1.0 - 1e-6):
            assert abs(j_function(EQ, r)) <= 1e-12

    def test_limit_at_zero(self):
        assert abs(j_function(Params(0.3, 0.5), 1e-9)) <= 1e-2

    def test_near_one_limit(self):
        p = Params(0.3, 0.5)
        lim = 2.0 * (r_constant(p) - LN_27) / beta(p)
        got = j_function(p, 1.0 - 1e-6)
        assert got == pytest.approx(lim, abs=1e-2)
        # the gap itself is polynomially small, frozen from 40-digit run
        assert got - lim == pytest.approx(-8.2564e-07, abs=1e-9)

    def test_positive_on_d5(self):
        p = Params(0.3, 0.5)
        for r in default_grid(50):
            assert j_function(p, r) >= -1e-12


class TestGrids:
    def test_default_grid(self):
        grid = default_grid()
        assert len(grid) == 203
        assert grid == sorted(grid)
        assert grid[0] == pytest.approx(0.005)
        assert 1.0 - 1e-6 in grid
        assert all(0.0 < r < 1.0 for r in grid)

    def test_default_grid_respects_nr(self):
        assert len(default_grid(100)) == 103
        with pytest.raises(DomainError):
            default_grid(1)

    def test_dense_grid(self):
        grid = dense_grid()
        assert len(grid) >= 1990
        assert grid == sorted(grid)
        assert grid[0] < 1e-5
        assert grid[-1] > 1.0 - 1e-6

    def test_monotonicity_grid(self):
        grid = monotonicity_grid()
        assert len(grid) == 200
        assert grid[0] <= 1e-5 and grid[-1] >= 1.0 - 1e-6

    def test_turning_scan_grid(self):
        grid = turning_scan_grid()
        assert grid == sorted(grid)
        assert grid[0] < 1e-5 and grid[-1] >= 1.0 - 1e-6

    def test_linspace(self):
        assert linspace(0.2, 0.2, 1) == [0.2]
        vals = linspace(0.0, 1.0, 5)
        assert vals[0] == 0.0 and vals[-1] == 1.0 and len(vals) == 5


class TestVerifyTheorem:
    def test_t21_d1_holds(self):
        rep = verify_theorem("T2.1", Params(0.2, 0.2))
        assert rep.holds
        assert rep.worst_margin >= -MARGIN_TOL
        assert rep.worst_r in default_grid()
        assert rep.n_samples == 203
        assert rep.both_signs is None

    def test_t21_d3_holds(self):
        rep = verify_theorem("T2.1", Params(1.0, 1.0))
        assert rep.holds and rep.worst_margin > 0.0

    def test_t21_d2_both_signs(self):
        rep = verify_theorem("T2.1", Params(0.45, 0.45))
        assert not rep.holds
        assert rep.both_signs is True

    def test_t21_d4_both_signs(self):
        rep = verify_theorem("T2.1", Params(0.31, 0.78))
        assert not rep.holds
        assert rep.both_signs is True

    def test_t21_equality_point_margins_vanish(self):
        rep = verify_theorem("T2.1", EQ)
        assert rep.holds
        assert abs(rep.worst_margin) <= 1e-11

    def test_holds_iff_worst_margin(self):
        for claim in ("T2.1", "T2.2", "T2.4"):
            for pt in ((0.2, 0.2), (1.0, 1.0), (0.45, 0.45)):
                rep = verify_theorem(claim, Params(*pt), default_grid(60))
                assert rep.holds == (rep.worst_margin >= -MARGIN_TOL)

    def test_t22_enclosure(self):
        for pt in ((0.2, 0.2), (0.1, 0.5)):
            rep = verify_theorem("T2.2", Params(*pt))
            assert rep.holds
        rep = verify_theorem("T2.2", Params(1.0, 1.0))
        assert rep.holds

    def test_c23_strict_envelope(self):
        assert verify_theorem("C2.3", Params(0.2, 0.2)).holds
        assert verify_theorem("C2.3", Params(1.5, 0.8)).holds

    def test_t24_envelopes(self):
        assert verify_theorem("T2.4", Params(0.3, 0.5)).holds
        assert verify_theorem("T2.4", Params(1.0, 1.0)).holds
        rep = verify_theorem("T2.4", EQ)
        assert rep.holds and abs(rep.worst_margin) <= 1e-11

    def test_t25_family(self, canonical_grid):
        assert verify_theorem("T2.5.1", Params(0.2, 0.2), canonical_grid).holds
        assert verify_theorem("T2.5.2", Params(1.0, 1.0), canonical_grid).holds
        assert verify_theorem("T2.5.3", Params(0.3, 0.5), canonical_grid).holds
        assert verify_theorem("T2.5.4", Params(1.0, 1.0), canonical_grid).holds

    def test_shape_claims(self):
        assert verify_theorem("L3.1f", Params(0.2, 0.2)).holds
        assert verify_theorem("L3.1f", Params(1.0, 1.0)).holds
        assert verify_theorem("L3.1g", Params(0.3, 0.5)).holds
        assert verify_theorem("L3.2J", Params(0.3, 0.5)).holds
        assert verify_theorem("L3.2J", Params(1.0, 1.0)).holds

    def test_unknown_claim(self):
        with pytest.raises(DomainError):
            verify_theorem("T9.9", Params(1, 1))

    def test_claim_ids_frozen(self):
        assert len(CLAIM_IDS) == 11


class TestRegionExpectation:
    def test_t21_everywhere(self):
        assert region_expectation("T2.1", classify(Params(0.2, 0.2))) is True
        assert region_expectation("T2.1", classify(Params(1, 1))) is True
        assert region_expectation("T2.1", classify(Params(0.46, 0.46))) is False
        assert region_expectation("T2.1", classify(Params(0.1, 3))) is False

    def test_silent_regions(self):
        d2 = classify(Params(0.46, 0.46))
        assert region_expectation("T2.2", d2) is None
        assert region_expectation("T2.4", d2) is None
        assert region_expectation("T2.5.1", d2) is None
        d1_only = classify(Params(0.1, 1.5))  # D1 but a+b>1, so not D5
        assert region_expectation("T2.5.3", d1_only) is None
        assert region_expectation("T2.4", d1_only) is None


class TestTransportEquivalence:
    # T2.5 statements are T2.2/T2.4 transported by r = (1-x)/(1+2x)
    def test_ratio_transport(self):
        for a, b in ((0.2, 0.2), (1.0, 1.0)):
            p = HypParams(a, b, a + b)
            for x in (0.1, 0.3, 0.5, 0.7, 0.9):
                r = (1.0 - x) / (1.0 + 2.0 * x)
                y = 9.0 * r * (1.0 + r + r * r) / (1.0 + 2.0 * r) ** 3
                ratio22 = (1.0 + 2.0 * r) * hyp2f1(p, r ** 3).value / hyp2f1(p, y).value
                w = (1.0 - x) / (1.0 + 2.0 * x)
                ratio25 = hyp2f1(p, w ** 3).value / ((1.0 + 2.0 * x) * hyp2f1(p, 1.0 - x ** 3).value)
                assert ratio22 == pytest.approx(3.0 * ratio25, rel=5e-12)

    def test_difference_transport(self):
        a, b = 0.3, 0.5
        p = HypParams(a, b, a + b)
        for x in (0.2, 0.5, 0.8):
            r = (1.0 - x) / (1.0 + 2.0 * x)
            y = 9.0 * r * (1.0 + r + r * r) / (1.0 + 2.0 * r) ** 3
            diff24 = (1.0 + 2.0 * r) * hyp2f1(p, r ** 3).value - hyp2f1(p, y).value
            w = (1.0 - x) / (1.0 + 2.0 * x)
            excess25 = 3.0 * hyp2f1(p, w ** 3).value \
                - (1.0 + 2.0 * x) * hyp2f1(p, 1.0 - x ** 3).value
            assert diff24 == pytest.approx(excess25 / (1.0 + 2.0 * x), abs=1e-12)


class TestTurningPoint:
    def test_d2_max(self):
        tp = find_turning_point(Params(0.45, 0.45), "f")
        assert tp.kind == "max"
        assert 0.95 < tp.r0 < 0.96
        assert tp.bracket[1] - tp.bracket[0] <= 1e-6
        assert tp.bracket[0] <= tp.r0 <= tp.bracket[1]
        assert tp.derivative_residual <= 1e-5

    def test_d4_min(self):
        tp = find_turning_point(Params(0.31, 0.78), "f")
        assert tp.kind == "min"
        assert 0.25 < tp.r0 < 0.40

    def test_monotone_regions_not_found(self):
        with pytest.raises(TurningPointNotFound):
            find_turning_point(Params(0.2, 0.2), "f", rescan=False)
        with pytest.raises(TurningPointNotFound):
            find_turning_point(Params(1.0, 1.0), "f", rescan=False)

    def test_g_monotone_on_d5(self):
        with pytest.raises(TurningPointNotFound):
            find_turning_point(Params(0.3, 0.5), "g", rescan=False)

    def test_precomputed_values_path(self):
        p = Params(0.45, 0.45)
        grid = turning_scan_grid()
        vals = [quotient_f(p, r) for r in grid]
        tp = find_turning_point(p, "f", grid=grid, values=vals)
        assert tp.kind == "max"
        assert 0.95 < tp.r0 < 0.96

    def test_values_without_grid_rejected(self):
        with pytest.raises(DomainError):
            find_turning_point(Params(0.45, 0.45), "f", values=[1.0, 2.0])

    def test_bad_which(self):
        with pytest.raises(DomainError):
            find_turning_point(Params(0.45, 0.45), "h")


class TestSequenceTrend:
    def test_constant_at_equality(self):
        assert sequence_trend(coefficient_quotient(EQ, 60), 60) == Trend.CONSTANT

    def test_d1_decreasing(self):
        assert sequence_trend(coefficient_quotient(Params(0.2, 0.2), 60), 60) == Trend.DECREASING

    def test_d3_increasing(self):
        assert sequence_trend(coefficient_quotient(Params(1, 1), 60), 60) == Trend.INCREASING

    def test_d2_up_then_down(self):
        assert sequence_trend(coefficient_quotient(Params(0.46, 0.46), 60), 60) == Trend.UP_THEN_DOWN

    def test_d4_down_then_up(self):
        assert sequence_trend(coefficient_quotient(Params(0.1, 3.0), 60), 60) == Trend.DOWN_THEN_UP

    def test_callable_input(self):
        assert sequence_trend(lambda n: float(n * n), 10) == Trend.INCREASING

    def test_mixed_pattern_raises(self):
        with pytest.raises(MixedTrendError):
            sequence_trend([0.0, 1.0, 0.0, 1.0], 3)

    def test_n_max_too_small(self):
        with pytest.raises(DomainError):
            sequence_trend([1.0, 2.0], 1)

    def test_trend_of_values_slack(self):
        noisy = [1.0, 1.0 + 1e-13, 1.0 - 1e-13, 2.0, 3.0]
        assert trend_of_values(noisy, slack=1e-12) == Trend.INCREASING

    def test_ratio_step_sign_matches_h(self):
        # the quotient A_{n+1}/A*_{n+1} - A_n/A*_n has the sign of H_n
        rng = random.Random(301)
        for _ in range(150):
            p = Params(rng.uniform(0.05, 3.0), rng.uniform(0.05, 3.0))
            c = coefficient_quotient(p, 40)
            for n in range(40):
                h = h_sequence(p, n)
                if abs(h) < 1e-12:
                    continue
                assert (c[n + 1] > c[n]) == (h > 0.0)

    def test_g_ratio_step_sign_matches_h_star(self):
        rng = random.Random(302)
        for _ in range(150):
            p = Params(rng.uniform(0.05, 3.0), rng.uniform(0.05, 3.0))
            c = coefficient_quotient(p, 40, which="g")
            for n in range(40):
                h = h_star_sequence(p, n)
                if abs(h) < 1e-12:
                    continue
                assert (c[n + 1] > c[n]) == (h > 0.0)

    def test_coefficient_quotient_matches_families(self):
        p = Params(0.7, 1.9)
        sc = SeriesCoefficients(p.a, p.b)
        cf = coefficient_quotient(p, 30)
        cg = coefficient_quotient(p, 30, which="g")
        a_seq, a_star = sc.a_seq(30), sc.a_star_seq(30)
        b_seq, b_star = sc.b_seq(30), sc.b_star_seq(30)
        for n in range(31):
            assert cf[n] == pytest.approx(a_seq[n] / a_star[n], rel=1e-12)
            assert cg[n] == pytest.approx(b_seq[n] / b_star[n], rel=1e-12)


class TestSampling:
    def test_membership_and_determinism(self):
        for region in ("D1", "D2", "D3", "D4", "D5", "D6"):
            pts = sample_region(region, 25, seed=999)
            again = sample_region(region, 25, seed=999)
            assert [(p.a, p.b) for p in pts] == [(q.a, q.b) for q in again]
            for p in pts:
                assert region in classify(p).labels()

    def test_unknown_region(self):
        with pytest.raises(DomainError):
            sample_region("D7", 1, seed=1)


class TestIterScan:
    def test_row_order_and_consistency(self):
        rows = list(iter_scan("T2.1", [0.2, 0.3], [0.2, 0.3], default_grid(40)))
        assert [(r.a, r.b) for r in rows] == [(0.2, 0.2), (0.2, 0.3), (0.3, 0.2), (0.3, 0.3)]
        assert all(r.region_consistent for r in rows)

    def test_degenerate_single_point(self):
        rows = list(iter_scan("T2.4", [0.3], [0.5], default_grid(40)))
        assert len(rows) == 1
        assert rows[0].report.holds
        assert rows[0].region_consistent is True

    def test_silent_region_is_none(self):
        rows = list(iter_scan("T2.4", [0.46], [0.46], default_grid(40)))
        assert rows[0].region_consistent is None
