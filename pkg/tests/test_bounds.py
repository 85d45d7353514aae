import math

import pytest

from revsynth import bounds as b


def test_zero_budget_forms():
    assert b.q_conj0(8) == 7
    assert b.l_conj0(8, 4) == 56
    assert b.d_conj0(8, 4) == 24


def test_conjunction_bounds():
    assert b.l_conj(8, 32, 4) == b.BoundReport(288, True, "l_conj")
    assert b.d_conj(8, 32, 4).value == 72
    assert b.q_conj(8, 32) == 39
    assert not b.l_conj(8, 16, 4).valid


def test_xor_bounds():
    assert b.l_xor(8, 32, 4).value == 576
    assert b.d_xor(8, 32, 4).value == 144
    assert b.q_xor(8, 32) == 39


def test_thresholds():
    assert [b.delta_threshold(8, s) for s in range(3)] == [96, 192, 1536]
    assert b.storage_levels_bound(8, 200) == 1
    assert b.storage_levels_bound(8, 50) == -1


def test_ondemand_factor():
    assert b.ondemand_factor(8, 32).value == 64
    assert not b.ondemand_factor(8, 16).valid


def test_theorem_bounds():
    assert b.l_shannon_upper(8, 160).value == 8448
    assert b.d_shannon_upper(8, 160).value == 2304
    assert not b.l_shannon_upper(8, 64).valid
    assert not b.d_shannon_upper(8, 64).valid


def test_non_positive_denominator_is_invalid_not_an_error():
    # q just above 2n: log2 q - log2 n - 1 <= 0
    r = b.l_conj(8, 17, 1)
    assert r.valid and math.isfinite(r.value)
    r = b.l_shannon_upper(8, 65)
    assert r.valid is (math.log2(65 - 32) - 3 - 2 > 0)
    assert b.l_conj(8, 0, 1).valid is False


def test_r_forms():
    assert b.l_conj_r(10, 2, 3) == 10 + 2 * 3 * 3
    assert b.d_conj_r(10, 2, 3) == 22


def test_all_bounds_order_is_stable():
    keys = list(b.all_bounds(8, 160))
    assert keys[0] == "l_conj0" and keys[-1] == "d_shannon_upper"


@pytest.mark.parametrize("q", [17, 33, 100, 1000])
def test_log_term_decreases_with_budget(q):
    assert b.l_conj(8, q + 50, 4).value < b.l_conj(8, q, 4).value + 50


def test_ondemand_levels_fit_the_factor_cap():
    from revsynth.product_tree import plan_tree, storage_split

    for m in range(2, 33):
        plan = plan_tree(range(m))
        for q in range(2 * m + 1, 3000, 7):
            split = storage_split(plan, q)
            cap = b.ondemand_factor(m, q)
            if split.r >= 1:
                assert 2 ** (split.r + 1) < cap.value, (m, q)
            for t in (1, 8):
                assert split.stored_outputs + 2 * ((1 << split.r) - 1) * t <= b.l_conj(m, q, t).value


def test_threshold_levels_are_stored():
    from revsynth.product_tree import plan_tree, storage_split

    for m in (4, 8, 16, 32):
        plan = plan_tree(range(m))
        for q in range(0, 5000, 13):
            s = b.storage_levels_bound(m, q)
            stored = storage_split(plan, q).stored_levels
            if s >= 0:
                assert set(range(plan.K - s, plan.K + 1)) <= stored
