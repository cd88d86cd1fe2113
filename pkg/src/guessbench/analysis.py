"""Which bet pays the most in a single spin?

Every arm's win or loss is drawn independently. Conditioned on at least one
arm winning, the top-paying winner is arm k with probability::

    P_k = theta_k / (1 - prod_j (1 - theta_j)) * prod_{i: r_i > r_k} (1 - theta_i)

Only the order of the payouts matters, not their size, so the net-35 and
net-36 readings of the zero bet give the same distribution.
"""

import itertools
import math
from dataclasses import dataclass

from guessbench.errors import UsageError

MAX_BRUTE_FORCE_ARMS = 20


@dataclass(frozen=True)
class TopRewardDistribution:
    probabilities: tuple

    def __iter__(self):
        return iter(self.probabilities)

    def __len__(self):
        return len(self.probabilities)

    def __getitem__(self, k):
        return self.probabilities[k]

    def max_abs_difference(self, other):
        return max(abs(p - q) for p, q in zip(self.probabilities, other.probabilities))


def _validate(thetas, payouts):
    if len(thetas) == 0:
        raise UsageError("need at least one arm")
    if len(thetas) != len(payouts):
        raise UsageError(f"{len(thetas)} win probabilities but {len(payouts)} payouts")
    for i, theta in enumerate(thetas):
        if not 0.0 < theta < 1.0:
            raise UsageError(f"win probability of arm {i} must lie in (0, 1), got {theta}")
    if len(set(payouts)) != len(payouts):
        raise UsageError(f"payouts must be pairwise distinct, got {list(payouts)}")


def top_reward_closed_form(thetas, payouts):
    """P_k for every arm from the product formula."""
    _validate(thetas, payouts)
    at_least_one_win = 1.0 - math.prod(1.0 - theta for theta in thetas)
    probabilities = []
    for theta_k, payout_k in zip(thetas, payouts):
        beaten_by_none = math.prod(
            1.0 - theta for theta, payout in zip(thetas, payouts) if payout > payout_k
        )
        probabilities.append(theta_k / at_least_one_win * beaten_by_none)
    return TopRewardDistribution(tuple(probabilities))


def top_reward_brute_force(thetas, payouts):
    """P_k for every arm by enumerating all 2**K joint win/loss outcomes."""
    _validate(thetas, payouts)
    if len(thetas) > MAX_BRUTE_FORCE_ARMS:
        raise UsageError(
            f"brute force enumerates 2**K outcomes; K={len(thetas)} exceeds {MAX_BRUTE_FORCE_ARMS}"
        )
    mass = [0.0] * len(thetas)
    for wins in itertools.product((False, True), repeat=len(thetas)):
        if not any(wins):
            continue
        probability = math.prod(
            theta if won else 1.0 - theta for theta, won in zip(thetas, wins)
        )
        top = max((k for k, won in enumerate(wins) if won), key=lambda k: payouts[k])
        mass[top] += probability
    total = sum(mass)
    return TopRewardDistribution(tuple(m / total for m in mass))
