"""Thompson sampling over Beta posteriors of each bet's win probability."""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from guessbench.agents import Agent, check_config_keys
from guessbench.agents.state import ArmStats, fresh_stats
from guessbench.errors import ConfigError, UsageError

OBJECTIVES = ("expected_reward", "win_prob")


def thompson_posterior_mean(alpha, beta, wins, pulls):
    """Posterior mean win probability (alpha + wins) / (alpha + beta + pulls)."""
    if alpha <= 0 or beta <= 0:
        raise UsageError(f"prior parameters must be positive, got alpha={alpha}, beta={beta}")
    if not 0 <= wins <= pulls:
        raise UsageError(f"need 0 <= wins <= pulls, got wins={wins}, pulls={pulls}")
    return (alpha + wins) / (alpha + beta + pulls)


@dataclass
class ThompsonState:
    prior_alpha: List[float]
    prior_beta: List[float]
    stats: List[ArmStats] = field(default_factory=list)

    @classmethod
    def uniform(cls, n_arms, alpha=1.0, beta=1.0):
        return cls([alpha] * n_arms, [beta] * n_arms, fresh_stats(n_arms))

    def posterior(self):
        """Beta posterior parameters per arm as two arrays."""
        a = np.array([p + s.wins for p, s in zip(self.prior_alpha, self.stats)], dtype=float)
        b = np.array([p + s.losses for p, s in zip(self.prior_beta, self.stats)], dtype=float)
        return a, b

    def posterior_means(self):
        return [
            thompson_posterior_mean(a, b, s.wins, s.pulls)
            for a, b, s in zip(self.prior_alpha, self.prior_beta, self.stats)
        ]


def select_thompson(state, payouts, objective, rng):
    """Draw one win probability per arm from its posterior and play the best draw.

    ``expected_reward`` scores a draw as theta * (payout + 1) - 1, ``win_prob``
    scores it as theta. Exact ties go to the lowest index.
    """
    if objective not in OBJECTIVES:
        raise UsageError(f"unknown Thompson objective {objective!r}")
    a, b = state.posterior()
    sampled = np.asarray(rng.beta(a, b), dtype=float)
    if objective == "expected_reward":
        scores = sampled * (np.asarray(payouts, dtype=float) + 1.0) - 1.0
    else:
        scores = sampled
    return int(np.argmax(scores))


@dataclass(frozen=True)
class ThompsonSampling(Agent):
    ts_objective: str = "expected_reward"
    custom_label: Optional[str] = None

    kind = "thompson"

    def __post_init__(self):
        if self.ts_objective not in OBJECTIVES:
            raise ConfigError(
                "ts_objective", f"expected one of {list(OBJECTIVES)}, got {self.ts_objective!r}"
            )

    def new_state(self, n_arms):
        return ThompsonState.uniform(n_arms)

    def select(self, state, payouts, rng):
        return select_thompson(state, payouts, self.ts_objective, rng)

    def update(self, state, outcome):
        state.stats[outcome.arm].record(outcome)
        return state

    def to_config(self):
        config = {"kind": self.kind, "ts_objective": self.ts_objective}
        if self.custom_label:
            config["label"] = self.custom_label
        return config

    @classmethod
    def from_config(cls, config):
        check_config_keys(config, ("ts_objective",))
        return cls(
            ts_objective=config.get("ts_objective", "expected_reward"),
            custom_label=config.get("label"),
        )
