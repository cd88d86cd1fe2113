"""A single bet type: how often it wins and what it pays."""

from dataclasses import dataclass

from guessbench.errors import ConfigError


@dataclass(frozen=True)
class BetSpec:
    """One arm of the wheel.

    A win pays ``net_payout`` dollars on top of the returned $1 stake,
    a loss costs the stake.
    """

    label: str
    win_prob: float
    net_payout: int

    def __post_init__(self):
        if not self.label:
            raise ConfigError("label", "bet label must be a non-empty string")
        if not 0.0 < self.win_prob < 1.0:
            raise ConfigError(
                "win_prob", f"win probability must lie in (0, 1), got {self.win_prob}"
            )
        if isinstance(self.net_payout, bool) or int(self.net_payout) != self.net_payout:
            raise ConfigError(
                "net_payout", f"net payout must be an integer, got {self.net_payout!r}"
            )
        if self.net_payout < 1:
            raise ConfigError(
                "net_payout", f"net payout must be at least 1, got {self.net_payout}"
            )
        object.__setattr__(self, "net_payout", int(self.net_payout))

    def expected_value(self):
        """Expected net dollars per $1 bet."""
        return expected_value(self)

    def to_config(self):
        """Convert the bet to its JSON config form."""
        return {
            "label": self.label,
            "win_prob": self.win_prob,
            "net_payout": self.net_payout,
        }

    @classmethod
    def from_config(cls, config):
        """Create a bet from its JSON config form."""
        return cls(config["label"], float(config["win_prob"]), config["net_payout"])


def expected_value(spec):
    """Return win_prob * (net_payout + 1) - 1 for a bet."""
    return spec.win_prob * (spec.net_payout + 1) - 1
