"""Epsilon-greedy: exploit the best empirical mean reward, explore with probability epsilon."""

from dataclasses import dataclass
from typing import Optional

from guessbench.agents import Agent, check_config_keys
from guessbench.agents.state import argmax_random_ties, fresh_stats
from guessbench.errors import ConfigError, UsageError

DEFAULT_EPSILON = 0.1


def select_epsilon_greedy(stats, epsilon, rng):
    """Pick an arm from per-arm ``ArmStats``.

    With probability ``epsilon`` the draw is uniform over every arm, the
    greedy one included. Otherwise the arm with the highest mean reward wins.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise UsageError(f"epsilon must lie in [0, 1], got {epsilon}")
    if rng.random() < epsilon:
        return int(rng.integers(len(stats)))
    return argmax_random_ties([arm.mean_reward for arm in stats], rng)


@dataclass(frozen=True)
class EpsilonGreedy(Agent):
    epsilon: float = DEFAULT_EPSILON
    custom_label: Optional[str] = None

    kind = "epsilon_greedy"

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ConfigError("epsilon", f"must lie in [0, 1], got {self.epsilon}")

    def new_state(self, n_arms):
        return fresh_stats(n_arms)

    def select(self, state, payouts, rng):
        return select_epsilon_greedy(state, self.epsilon, rng)

    def update(self, state, outcome):
        state[outcome.arm].record(outcome)
        return state

    def to_config(self):
        config = {"kind": self.kind, "epsilon": self.epsilon}
        if self.custom_label:
            config["label"] = self.custom_label
        return config

    @classmethod
    def from_config(cls, config):
        check_config_keys(config, ("epsilon",))
        return cls(
            epsilon=float(config.get("epsilon", DEFAULT_EPSILON)),
            custom_label=config.get("label"),
        )
