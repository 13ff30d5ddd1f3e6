"""lambda pairs, closed-form r values, verdicts, diagnostics."""

import math

import numpy as np
import pytest

from resil import resilience
from resil.errors import UnsupportedLossError
from resil.model import IntegratorSystem, split
from resil.reach import time_ratio


def test_controllability_rank_deficient():
    sys = IntegratorSystem("rd", 1, np.array([[1.0, 0.0], [0.0, 0.0]]),
                           -np.ones(2), np.ones(2))
    assert not resilience.check_controllability(sys)


def test_controllability_image_interior():
    # Columns bounded in [0,1] but the image interval [-1, 1] contains 0 inside.
    sys = IntegratorSystem("img", 1, np.array([[1.0, -1.0]]), np.zeros(2), np.ones(2))
    assert resilience.check_controllability(sys)


def test_controllability_boundary_zero():
    # Image is [0, 2]: zero on the boundary, not interior.
    sys = IntegratorSystem("bnd", 1, np.array([[1.0, 1.0]]), np.zeros(2), np.ones(2))
    assert not resilience.check_controllability(sys)


def test_lambda_pair_toy2(toy2_split):
    assert resilience.lambda_pair(toy2_split) == pytest.approx((1.0, 3.0), abs=1e-12)


def test_lambda_pair_toy1(toy1_split):
    assert resilience.lambda_pair(toy1_split) == pytest.approx((2.0, 2.0), abs=1e-12)


def test_r_pair_toy2(toy2_split):
    r_p, r_m = resilience.r_pair(toy2_split)
    assert r_p == pytest.approx(0.5, abs=1e-12)
    assert r_m == pytest.approx(2.0 / 3.0, abs=1e-12)


def test_r_pair_toy1(toy1_split):
    r_p, r_m = resilience.r_pair(toy1_split)
    assert r_p == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert r_m == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_quantitative_resilience_toy2(toy2_split):
    rep = resilience.quantitative_resilience(toy2_split)
    assert rep.resilient
    assert rep.r_q == pytest.approx(0.5, abs=1e-12)
    rep2 = resilience.quantitative_resilience(toy2_split, order=2)
    assert rep2.r_kq == pytest.approx(math.sqrt(0.5), abs=1e-12)


def test_order_k_r_values(toy2_split):
    for k in (1, 2, 3, 5):
        rep = resilience.quantitative_resilience(toy2_split, order=k)
        assert rep.r_kq == 0.5 ** (1.0 / k)
        assert rep.r_kq >= rep.r_q  # monotone in k


def test_p_not_one_refused(toy3_split):
    with pytest.raises(UnsupportedLossError, match="p=2"):
        resilience.quantitative_resilience(toy3_split)
    with pytest.raises(UnsupportedLossError):
        resilience.lambda_pair(toy3_split)


def test_zero_column_path():
    sys = IntegratorSystem("zc", 1, np.array([[1.0, -1.0, 0.0]]),
                           -np.ones(3), np.ones(3))
    rep = resilience.quantitative_resilience(split(sys, 2))
    assert rep.resilient
    assert rep.r_q == 1.0
    assert rep.diagnostics.get("zero_column")


def test_not_controllable_path():
    sys = IntegratorSystem("nc", 1, np.array([[1.0, 2.0], [0.0, 0.0]]),
                           -np.ones(2), np.ones(2))
    rep = resilience.quantitative_resilience(split(sys, 1))
    assert not rep.controllable
    assert not rep.resilient
    assert rep.r_q == 0.0


def test_boundary_r_not_resilient():
    # 1-D: B = [1] in [-1, 1], C = [1] in [-1, 1]: lam+ = 1, r(C) = 0 boundary.
    sys = IntegratorSystem("b", 1, np.array([[1.0, 1.0]]), -np.ones(2), np.ones(2))
    rep = resilience.quantitative_resilience(split(sys, 1))
    assert not rep.resilient
    assert rep.r_q == 0.0
    assert rep.diagnostics.get("r_plus_boundary")


def test_report_serialization(toy2_split):
    doc = resilience.quantitative_resilience(toy2_split).to_dict()
    assert doc["resilient"] is True
    assert doc["r_q"] == pytest.approx(0.5)
    assert isinstance(doc["lambda_plus"], float)


def test_reach_time_verdict_toy2(toy2_split):
    verdict = resilience.resilience_via_reach_times(toy2_split)
    assert verdict.t_n_plus == pytest.approx(0.5)
    assert verdict.t_m_plus == pytest.approx(1.0)
    assert verdict.t_n_minus == pytest.approx(1.0 / 3.0)
    assert verdict.t_m_minus == pytest.approx(0.5)
    assert verdict.resilient


def test_verdict_agreement_random():
    rng = np.random.default_rng(8)
    for _ in range(60):
        n = int(rng.integers(1, 4))
        v = int(rng.integers(n + 1, 7))
        sys = IntegratorSystem(
            "rand", 1, rng.standard_normal((n, v)),
            -rng.random(v) - 0.1, rng.random(v) + 0.1,
        )
        col = int(rng.integers(0, v))
        if not np.any(sys.b_bar[:, col]):
            continue
        sp = split(sys, col)
        rep = resilience.quantitative_resilience(sp)
        verdict = resilience.resilience_via_reach_times(sp)
        assert rep.resilient == verdict.resilient
        if rep.resilient:
            c = sp.c[:, 0]
            t_worst = max(time_ratio(sp, c), time_ratio(sp, -c))
            assert 1.0 / rep.r_q == pytest.approx(t_worst, rel=1e-8)


def test_symmetric_box_reduction():
    rng = np.random.default_rng(9)
    for _ in range(30):
        n = int(rng.integers(1, 4))
        v = int(rng.integers(n + 1, 7))
        hi = rng.random(v) + 0.1
        sys = IntegratorSystem("sym", 1, rng.standard_normal((n, v)), -hi, hi)
        col = int(rng.integers(0, v))
        if not np.any(sys.b_bar[:, col]):
            continue
        r_p, r_m = resilience.r_pair(split(sys, col))
        assert r_p == pytest.approx(r_m, abs=1e-10)


def test_polytope_containment_toy2(toy2_split):
    assert resilience.polytope_containment_check(toy2_split)


def test_polytope_containment_shrunk():
    sys = IntegratorSystem("shrunk", 1, np.array([[1.0, -1.0]]),
                           np.array([-1.0, 0.0]), np.array([0.5, 1.0]))
    assert not resilience.polytope_containment_check(split(sys, 1))


def test_resilient_implies_containment():
    rng = np.random.default_rng(10)
    for _ in range(40):
        n = int(rng.integers(1, 3))
        v = int(rng.integers(n + 1, 6))
        sys = IntegratorSystem(
            "rand", 1, rng.standard_normal((n, v)),
            -rng.random(v) - 0.1, rng.random(v) + 0.1,
        )
        col = int(rng.integers(0, v))
        if not np.any(sys.b_bar[:, col]):
            continue
        sp = split(sys, col)
        if resilience.quantitative_resilience(sp).resilient:
            assert resilience.polytope_containment_check(sp)
