"""One-way ANOVA with exact F-distribution p-values.

The F distribution is reached through the regularized incomplete beta
function, evaluated by its continued fraction (modified Lentz method).
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from loguru import logger

from guessbench.errors import NumericError, UsageError

MAX_ITERATIONS = 300
RELATIVE_TOLERANCE = 1e-14
TINY = 1e-300


@dataclass(frozen=True)
class SampleGroup:
    label: str
    values: Sequence[float]

    def __post_init__(self):
        if len(self.values) == 0:
            raise UsageError(f"sample group {self.label!r} is empty")


@dataclass(frozen=True)
class AnovaResult:
    f_statistic: float
    df_between: int
    df_within: int
    p_value: float
    degenerate: bool = False

    def to_row(self, label):
        return {
            "label": label,
            "f": self.f_statistic,
            "df1": self.df_between,
            "df2": self.df_within,
            "p": self.p_value,
            "degenerate": self.degenerate,
        }


def _beta_continued_fraction(a, b, x):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < TINY:
        d = TINY
    d = 1.0 / d
    h = d
    for m in range(1, MAX_ITERATIONS + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < TINY:
            d = TINY
        c = 1.0 + aa / c
        if abs(c) < TINY:
            c = TINY
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < TINY:
            d = TINY
        c = 1.0 + aa / c
        if abs(c) < TINY:
            c = TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < RELATIVE_TOLERANCE:
            return h
    raise NumericError(
        f"incomplete beta continued fraction did not converge in {MAX_ITERATIONS} "
        f"iterations (a={a}, b={b}, x={x})"
    )


def regularized_incomplete_beta(x, a, b):
    """I_x(a, b), the CDF of a Beta(a, b) distribution at ``x``."""
    if not 0.0 <= x <= 1.0:
        raise UsageError(f"x must lie in [0, 1], got {x}")
    if a <= 0 or b <= 0:
        raise UsageError(f"shape parameters must be positive, got a={a}, b={b}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x > (a + 1.0) / (a + b + 2.0):
        value = 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b
    else:
        value = front * _beta_continued_fraction(a, b, x) / a
    return min(1.0, max(0.0, value))


def f_cdf(f, d1, d2):
    """P(F <= f) for an F(d1, d2) variable."""
    if f < 0:
        raise UsageError(f"F statistic must be nonnegative, got {f}")
    if math.isinf(f):
        return 1.0
    return regularized_incomplete_beta(d1 * f / (d1 * f + d2), d1 / 2.0, d2 / 2.0)


def f_sf(f, d1, d2):
    """P(F > f), computed from the complementary tail so small p-values keep their digits."""
    if f < 0:
        raise UsageError(f"F statistic must be nonnegative, got {f}")
    if math.isinf(f):
        return 0.0
    return regularized_incomplete_beta(d2 / (d2 + d1 * f), d2 / 2.0, d1 / 2.0)


def one_way_anova(groups):
    """Test whether the groups share a common mean."""
    if len(groups) < 2:
        raise UsageError(f"ANOVA needs at least two groups, got {len(groups)}")
    arrays = []
    for group in groups:
        if len(group.values) == 0:
            raise UsageError(f"sample group {group.label!r} is empty")
        arrays.append(np.asarray(group.values, dtype=float))

    k = len(arrays)
    n_total = sum(len(values) for values in arrays)
    df_between = k - 1
    df_within = n_total - k
    if df_within < 1:
        raise UsageError(f"ANOVA needs more samples than groups, got {n_total} for {k} groups")

    means = [float(values.mean()) for values in arrays]
    grand_mean = float(np.concatenate(arrays).mean())
    if all(mean == means[0] for mean in means):
        ssb = 0.0
    else:
        ssb = sum(len(values) * (mean - grand_mean) ** 2 for values, mean in zip(arrays, means))
    ssw = sum(float(np.sum((values - mean) ** 2)) for values, mean in zip(arrays, means))

    if ssb == 0.0:
        result = AnovaResult(0.0, df_between, df_within, 1.0, degenerate=ssw == 0.0)
    elif ssw == 0.0:
        result = AnovaResult(math.inf, df_between, df_within, 0.0, degenerate=True)
    else:
        f = (ssb / df_between) / (ssw / df_within)
        result = AnovaResult(f, df_between, df_within, f_sf(f, df_between, df_within))
    if result.degenerate:
        labels = ", ".join(group.label for group in groups)
        logger.warning(f"ANOVA over {labels} is degenerate: no within-group variance")
    return result


def pairwise_vs_control(control, treatments):
    """Two-group ANOVA of each treatment against ``control``, in input order."""
    return [(treatment.label, one_way_anova([control, treatment])) for treatment in treatments]
