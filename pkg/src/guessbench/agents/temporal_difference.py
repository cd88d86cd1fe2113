"""Stateless temporal-difference value estimates with greedy action choice.

``td0`` keeps an exponential moving average of each arm's reward, ``td1``
keeps the plain empirical average. Both start every arm at 0.
"""

from dataclasses import dataclass, field
from typing import List, Optional

from guessbench.agents import Agent, check_config_keys
from guessbench.agents.state import ArmStats, argmax_random_ties, fresh_stats
from guessbench.errors import ConfigError

VARIANTS = ("td0", "td1")
DEFAULT_LEARNING_RATE = 0.1


@dataclass
class TdState:
    q_values: List[float]
    stats: List[ArmStats] = field(default_factory=list)

    @classmethod
    def zeros(cls, n_arms):
        return cls([0.0] * n_arms, fresh_stats(n_arms))


def select_td(state, rng):
    """Greedy arm under the current Q-values, ties broken uniformly."""
    return argmax_random_ties(state.q_values, rng)


def td0_update(q_value, reward, learning_rate):
    return q_value + learning_rate * (reward - q_value)


@dataclass(frozen=True)
class TemporalDifference(Agent):
    lambda_variant: str = "td0"
    learning_rate: Optional[float] = None
    custom_label: Optional[str] = None

    kind = "td"

    def __post_init__(self):
        if self.lambda_variant not in VARIANTS:
            raise ConfigError(
                "lambda_variant",
                f"expected one of {list(VARIANTS)}, got {self.lambda_variant!r}",
            )
        if self.lambda_variant == "td1":
            if self.learning_rate is not None:
                raise ConfigError("learning_rate", "td1 averages rewards and takes no learning rate")
            return
        if self.learning_rate is None:
            object.__setattr__(self, "learning_rate", DEFAULT_LEARNING_RATE)
        if not 0.0 < self.learning_rate <= 1.0:
            raise ConfigError(
                "learning_rate", f"must lie in (0, 1], got {self.learning_rate}"
            )

    @property
    def label(self):
        return self.custom_label or self.lambda_variant

    def new_state(self, n_arms):
        return TdState.zeros(n_arms)

    def select(self, state, payouts, rng):
        return select_td(state, rng)

    def update(self, state, outcome):
        arm = state.stats[outcome.arm]
        arm.record(outcome)
        if self.lambda_variant == "td1":
            state.q_values[outcome.arm] = arm.reward_sum / arm.pulls
        else:
            state.q_values[outcome.arm] = td0_update(
                state.q_values[outcome.arm], outcome.net_reward, self.learning_rate
            )
        return state

    def to_config(self):
        config = {"kind": self.kind, "lambda_variant": self.lambda_variant}
        if self.lambda_variant == "td0":
            config["learning_rate"] = self.learning_rate
        if self.custom_label:
            config["label"] = self.custom_label
        return config

    @classmethod
    def from_config(cls, config):
        check_config_keys(config, ("lambda_variant", "learning_rate"))
        learning_rate = config.get("learning_rate")
        return cls(
            lambda_variant=config.get("lambda_variant", "td0"),
            learning_rate=None if learning_rate is None else float(learning_rate),
            custom_label=config.get("label"),
        )
