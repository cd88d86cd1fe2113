"""Per-arm bookkeeping shared by the learning policies."""

from dataclasses import dataclass


@dataclass
class ArmStats:
    pulls: int = 0
    wins: int = 0
    reward_sum: int = 0

    @property
    def losses(self):
        return self.pulls - self.wins

    @property
    def mean_reward(self):
        """Empirical mean net reward; 0 for an arm never played."""
        if self.pulls == 0:
            return 0.0
        return self.reward_sum / self.pulls

    def record(self, outcome):
        self.pulls += 1
        if outcome.won:
            self.wins += 1
        self.reward_sum += outcome.net_reward


def fresh_stats(n_arms):
    return [ArmStats() for _ in range(n_arms)]


def argmax_random_ties(values, rng):
    """Index of the largest value, breaking exact ties uniformly at random."""
    best = max(values)
    candidates = [i for i, value in enumerate(values) if value == best]
    if len(candidates) == 1:
        return candidates[0]
    return candidates[int(rng.integers(len(candidates)))]
