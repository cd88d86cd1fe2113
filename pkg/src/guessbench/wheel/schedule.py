"""Time-windowed overrides of an arm's win probability."""

from dataclasses import dataclass

from guessbench.errors import ConfigError


@dataclass(frozen=True)
class ScheduleOverride:
    """Replace ``arm_label``'s win probability for rounds ``from_round..to_round`` inclusive."""

    from_round: int
    to_round: int
    arm_label: str
    win_prob: float

    def __post_init__(self):
        if self.from_round < 1:
            raise ConfigError("from", f"rounds are numbered from 1, got {self.from_round}")
        if self.from_round > self.to_round:
            raise ConfigError(
                "to", f"window ends ({self.to_round}) before it starts ({self.from_round})"
            )
        if not 0.0 < self.win_prob < 1.0:
            raise ConfigError(
                "win_prob", f"win probability must lie in (0, 1), got {self.win_prob}"
            )

    def covers(self, t):
        return self.from_round <= t <= self.to_round

    def overlaps(self, other):
        return (
            self.arm_label == other.arm_label
            and self.from_round <= other.to_round
            and other.from_round <= self.to_round
        )

    def to_config(self):
        """Convert the override to its JSON config form."""
        return {
            "from": self.from_round,
            "to": self.to_round,
            "arm": self.arm_label,
            "win_prob": self.win_prob,
        }

    @classmethod
    def from_config(cls, config):
        """Create an override from its JSON config form."""
        return cls(
            int(config["from"]),
            int(config["to"]),
            config["arm"],
            float(config["win_prob"]),
        )
