import math

import numpy as np
import pytest

from guessbench import stats
from guessbench.errors import NumericError, UsageError
from guessbench.stats import (
    SampleGroup,
    f_cdf,
    f_sf,
    one_way_anova,
    pairwise_vs_control,
    regularized_incomplete_beta,
)


def groups(*samples):
    return [SampleGroup(f"g{i}", list(values)) for i, values in enumerate(samples)]


# incomplete beta


def test_incomplete_beta_boundaries():
    assert regularized_incomplete_beta(0.0, 2.5, 3.0) == 0.0
    assert regularized_incomplete_beta(1.0, 2.5, 3.0) == 1.0


def test_incomplete_beta_symmetric_points():
    assert regularized_incomplete_beta(0.5, 1, 1) == pytest.approx(0.5, abs=1e-12)
    assert regularized_incomplete_beta(0.5, 2, 2) == pytest.approx(0.5, abs=1e-12)
    assert regularized_incomplete_beta(0.3, 1, 1) == pytest.approx(0.3, abs=1e-12)


def test_incomplete_beta_closed_forms():
    # I_x(a, 1) = x**a and I_x(1, b) = 1 - (1 - x)**b
    for x in (0.1, 0.45, 0.8):
        assert regularized_incomplete_beta(x, 3.0, 1.0) == pytest.approx(x**3, abs=1e-12)
        assert regularized_incomplete_beta(x, 1.0, 4.0) == pytest.approx(1 - (1 - x) ** 4, abs=1e-12)


@pytest.mark.parametrize("x,a,b", [(0.2, 0.5, 0.5), (0.7, 3.0, 9.0), (0.05, 40.0, 2.0), (0.99, 1.5, 200.0)])
def test_incomplete_beta_complement(x, a, b):
    total = regularized_incomplete_beta(x, a, b) + regularized_incomplete_beta(1 - x, b, a)
    assert total == pytest.approx(1.0, abs=1e-10)


def test_incomplete_beta_rejects_bad_arguments():
    with pytest.raises(UsageError):
        regularized_incomplete_beta(1.5, 1, 1)
    with pytest.raises(UsageError):
        regularized_incomplete_beta(0.5, 0, 1)


def test_non_convergence_is_a_numeric_error(monkeypatch):
    monkeypatch.setattr(stats, "MAX_ITERATIONS", 1)
    with pytest.raises(NumericError):
        regularized_incomplete_beta(0.45, 50.0, 60.0)


# F distribution


def test_f_cdf_values():
    assert f_cdf(0.0, 3, 7) == 0.0
    assert f_cdf(1.0, 10, 10) == pytest.approx(0.5, abs=1e-12)
    assert f_cdf(1.5, 1, 4) == pytest.approx(0.71214, abs=1e-4)
    assert f_cdf(math.inf, 2, 9) == 1.0


def test_f_cdf_is_monotone():
    values = [f_cdf(f, 4, 30) for f in np.linspace(0.0, 10.0, 101)]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_f_sf_complements_cdf():
    for f in (0.2, 1.0, 3.7, 12.0):
        assert f_sf(f, 2, 40) + f_cdf(f, 2, 40) == pytest.approx(1.0, abs=1e-12)
    assert f_sf(math.inf, 2, 40) == 0.0


def test_f_rejects_negative_statistic():
    with pytest.raises(UsageError):
        f_cdf(-1.0, 1, 1)
    with pytest.raises(UsageError):
        f_sf(-1.0, 1, 1)


# ANOVA


def test_anova_hand_computed():
    result = one_way_anova(groups([1, 2, 3], [2, 3, 4]))
    assert result.f_statistic == pytest.approx(1.5, abs=1e-12)
    assert (result.df_between, result.df_within) == (1, 4)
    assert result.p_value == pytest.approx(0.2879, abs=1e-3)
    assert not result.degenerate


def test_anova_identical_constant_groups():
    result = one_way_anova(groups([5, 5, 5], [5, 5, 5]))
    assert result.f_statistic == 0.0
    assert result.p_value == 1.0
    assert result.degenerate


def test_anova_identical_groups_with_spread():
    result = one_way_anova(groups([0, 1, 0, 1], [0, 1, 0, 1]))
    assert result.f_statistic == 0.0
    assert result.p_value == 1.0
    assert not result.degenerate


def test_anova_no_within_group_variance():
    result = one_way_anova(groups([1, 1, 1], [2, 2, 2]))
    assert math.isinf(result.f_statistic)
    assert result.p_value == 0.0
    assert result.degenerate


def test_anova_ignores_group_order():
    samples = ([0.1, 0.5, 0.9], [1.2, 0.8, 1.0, 1.4], [0.0, 0.3])
    forward = one_way_anova(groups(*samples))
    backward = one_way_anova(groups(*reversed(samples)))
    assert forward.f_statistic == pytest.approx(backward.f_statistic, rel=1e-12)
    assert forward.p_value == pytest.approx(backward.p_value, rel=1e-9)


def test_anova_affine_invariance():
    rng = np.random.default_rng(3)
    samples = [rng.normal(m, 1.0, size=25) for m in (0.0, 0.3, 0.5)]
    plain = one_way_anova(groups(*samples))
    shifted = one_way_anova(groups(*(7.0 * s - 3.0 for s in samples)))
    assert shifted.f_statistic == pytest.approx(plain.f_statistic, rel=1e-9)
    assert shifted.p_value == pytest.approx(plain.p_value, rel=1e-6)


def test_two_group_f_is_pooled_t_squared():
    rng = np.random.default_rng(11)
    for _ in range(100):
        a = rng.normal(0.0, 1.0, size=rng.integers(2, 30))
        b = rng.normal(0.4, 1.0, size=rng.integers(2, 30))
        pooled = ((len(a) - 1) * a.var(ddof=1) + (len(b) - 1) * b.var(ddof=1)) / (len(a) + len(b) - 2)
        t = (a.mean() - b.mean()) / math.sqrt(pooled * (1 / len(a) + 1 / len(b)))
        f = one_way_anova(groups(a, b)).f_statistic
        assert f == pytest.approx(t * t, rel=1e-9)


def test_large_samples_of_success_flags():
    rng = np.random.default_rng(0)
    control = (rng.random(10_000) < 0.40).astype(float)
    better = (rng.random(10_000) < 0.46).astype(float)
    result = one_way_anova(groups(control, better))
    assert result.df_within == 19_998
    assert result.p_value < 1e-6


def test_anova_errors():
    with pytest.raises(UsageError):
        one_way_anova(groups([1, 2, 3]))
    with pytest.raises(UsageError):
        SampleGroup("empty", [])
    with pytest.raises(UsageError):
        one_way_anova(groups([1], [2]))


# pairwise


def test_pairwise_against_control():
    control = SampleGroup("random", [0, 1, 0, 1, 1])
    same = SampleGroup("copy", [0, 1, 0, 1, 1])
    other = SampleGroup("td0", [1, 1, 1, 0, 1])
    rows = pairwise_vs_control(control, [same, other])
    assert [label for label, _ in rows] == ["copy", "td0"]
    assert rows[0][1].p_value == 1.0
    assert rows[1][1].df_between == 1
    assert rows[1][1].df_within == 8


def test_result_row():
    row = one_way_anova(groups([1, 2, 3], [2, 3, 4])).to_row("td1")
    assert row["label"] == "td1"
    assert set(row) == {"label", "f", "df1", "df2", "p", "degenerate"}
