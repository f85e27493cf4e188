"""Behavior of f(r) = F/F* deep in the r->1 tail on D2 and D4.

The one-turn shape claimed for D2/D4 holds only on the side of each region
where the tail constant R(a,b) sits on the right side of log 27: the
quotient approaches its limit B*/B with correction ~ (R - log27)/|log(1-r)|,
so the sign of R - log27 fixes whether f is eventually decreasing (needed
for a max on D2) or eventually increasing (needed for a min on D4).  These
tests pin that observed dichotomy on exemplar points of both kinds; the
acceptance suite documents where the blanket claims consequently fail.
"""

import pytest

from rct_hyper import (
    Params,
    TurningPointNotFound,
    find_turning_point,
    quotient_f,
    r_constant,
    verify_theorem,
)
from rct_hyper.inequality_lab import sample_region
from rct_hyper.special_core import LN_27

LADDER = [0.9, 0.99, 0.999, 1.0 - 1e-5, 1.0 - 1e-7, 1.0 - 1e-9, 1.0 - 1e-11]

D2_ONE_TURN = Params(0.45, 0.45)      # R > log27: genuine interior max
D2_MONOTONE = Params(0.46, 0.46)      # R < log27: f increasing throughout
D4_ONE_TURN = Params(0.31, 0.78)      # R < log27: genuine interior min
D4_MONOTONE = Params(0.1, 3.0)        # R > log27: f decreasing throughout


class TestTailConstantSides:
    def test_exemplar_signs(self):
        assert r_constant(D2_ONE_TURN) > LN_27
        assert r_constant(D2_MONOTONE) < LN_27
        assert r_constant(D4_ONE_TURN) < LN_27
        assert r_constant(D4_MONOTONE) > LN_27

    def test_equality_point_sits_on_the_curve(self):
        assert abs(r_constant(Params(1.0 / 3.0, 2.0 / 3.0)) - LN_27) <= 1e-12


class TestD2Tails:
    def test_monotone_side_keeps_rising(self):
        vals = [quotient_f(D2_MONOTONE, r) for r in LADDER]
        assert all(v2 > v1 for v1, v2 in zip(vals, vals[1:]))

    def test_monotone_side_has_no_turn_and_one_sign(self):
        rep = verify_theorem("T2.1", D2_MONOTONE)
        assert rep.holds is False
        assert rep.both_signs is False
        with pytest.raises(TurningPointNotFound):
            find_turning_point(D2_MONOTONE, "f")

    def test_one_turn_side_comes_back_down(self):
        tp = find_turning_point(D2_ONE_TURN, "f")
        assert tp.kind == "max"
        rep = verify_theorem("T2.1", D2_ONE_TURN)
        assert rep.both_signs is True


class TestD4Tails:
    def test_monotone_side_keeps_falling(self):
        vals = [quotient_f(D4_MONOTONE, r) for r in LADDER]
        assert all(v2 < v1 for v1, v2 in zip(vals, vals[1:]))

    def test_monotone_side_has_no_turn_and_one_sign(self):
        rep = verify_theorem("T2.1", D4_MONOTONE)
        assert rep.holds is False
        assert rep.both_signs is False
        with pytest.raises(TurningPointNotFound):
            find_turning_point(D4_MONOTONE, "f")

    def test_one_turn_side_turns(self):
        tp = find_turning_point(D4_ONE_TURN, "f")
        assert tp.kind == "min"
        rep = verify_theorem("T2.1", D4_ONE_TURN)
        assert rep.both_signs is True


class TestTailConstantOnD5D6:
    def test_d5_has_r_at_least_log27(self):
        for p in sample_region("D5", 100, seed=401):
            assert r_constant(p) >= LN_27 - 1e-12

    def test_d6_has_r_at_most_log27(self):
        for p in sample_region("D6", 100, seed=402):
            assert r_constant(p) <= LN_27 + 1e-12
