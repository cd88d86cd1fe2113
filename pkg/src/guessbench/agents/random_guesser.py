"""The control group: pick a bet uniformly at random every round."""

from dataclasses import dataclass
from typing import Optional

from guessbench.agents import Agent, check_config_keys
from guessbench.errors import UsageError


def select_random(n_arms, rng):
    """Uniform draw over ``0..n_arms - 1``."""
    if n_arms < 1:
        raise UsageError(f"need at least one arm, got {n_arms}")
    return int(rng.integers(n_arms))


@dataclass(frozen=True)
class RandomGuesser(Agent):
    custom_label: Optional[str] = None

    kind = "random"

    def new_state(self, n_arms):
        return None

    def select(self, state, payouts, rng):
        return select_random(len(payouts), rng)

    def update(self, state, outcome):
        return state

    def to_config(self):
        config = {"kind": self.kind}
        if self.custom_label:
            config["label"] = self.custom_label
        return config

    @classmethod
    def from_config(cls, config):
        check_config_keys(config, ())
        return cls(custom_label=config.get("label"))
