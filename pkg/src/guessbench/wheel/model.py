"""Wheel model: the arm set, its schedule and single-round outcome sampling."""

from dataclasses import dataclass, field

from guessbench.errors import ConfigError, UsageError
from guessbench.wheel.bet import BetSpec
from guessbench.wheel.schedule import ScheduleOverride


@dataclass(frozen=True)
class RoundOutcome:
    """What happened in round ``round`` when ``arm`` was played."""

    round: int
    arm: int
    won: bool
    net_reward: int

    def to_config(self):
        return {
            "round": self.round,
            "arm": self.arm,
            "won": self.won,
            "net_reward": self.net_reward,
        }


@dataclass(frozen=True)
class WheelModel:
    """An ordered set of bets plus time-windowed win probability overrides.

    Immutable once built, so one model can back any number of sessions.
    """

    bets: tuple
    schedule: tuple = ()
    _overrides: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "bets", tuple(self.bets))
        object.__setattr__(self, "schedule", tuple(self.schedule))
        if not self.bets:
            raise ConfigError("bets", "a wheel needs at least one bet")

        index_of = {}
        seen_payouts = {}
        for i, bet in enumerate(self.bets):
            if bet.label in index_of:
                raise ConfigError(f"bets[{i}].label", f"duplicate bet label {bet.label!r}")
            if bet.net_payout in seen_payouts:
                raise ConfigError(
                    f"bets[{i}].net_payout",
                    f"payout {bet.net_payout} already used by {seen_payouts[bet.net_payout]!r}",
                )
            index_of[bet.label] = i
            seen_payouts[bet.net_payout] = bet.label

        overrides = {i: [] for i in range(len(self.bets))}
        for j, override in enumerate(self.schedule):
            if override.arm_label not in index_of:
                raise ConfigError(
                    f"schedule[{j}].arm", f"unknown bet label {override.arm_label!r}"
                )
            arm_overrides = overrides[index_of[override.arm_label]]
            for other in arm_overrides:
                if override.overlaps(other):
                    raise ConfigError(
                        f"schedule[{j}]",
                        f"overlaps rounds {other.from_round}..{other.to_round} "
                        f"for {override.arm_label!r}",
                    )
            arm_overrides.append(override)
        object.__setattr__(self, "_overrides", overrides)

    @property
    def n_arms(self):
        return len(self.bets)

    @property
    def labels(self):
        return tuple(bet.label for bet in self.bets)

    @property
    def payouts(self):
        return tuple(bet.net_payout for bet in self.bets)

    def arm_index(self, label):
        """Return the position of the bet called ``label``."""
        for i, bet in enumerate(self.bets):
            if bet.label == label:
                return i
        raise UsageError(f"unknown bet label {label!r}; known: {', '.join(self.labels)}")

    def theta_at(self, t, arm):
        """Win probability of ``arm`` in round ``t`` (rounds count from 1)."""
        if not 0 <= arm < len(self.bets):
            raise UsageError(f"arm index {arm} out of range for {len(self.bets)} arms")
        if t < 1:
            raise UsageError(f"rounds are numbered from 1, got {t}")
        for override in self._overrides[arm]:
            if override.covers(t):
                return override.win_prob
        return self.bets[arm].win_prob

    def spin(self, t, arm, rng):
        """Resolve one $1 bet on ``arm`` in round ``t`` with an independent Bernoulli draw."""
        won = bool(rng.random() < self.theta_at(t, arm))
        net_reward = self.bets[arm].net_payout if won else -1
        return RoundOutcome(round=t, arm=arm, won=won, net_reward=net_reward)

    def to_config(self):
        """Convert the wheel to its explicit JSON config form."""
        return {
            "bets": [bet.to_config() for bet in self.bets],
            "schedule": [override.to_config() for override in self.schedule],
        }

    @classmethod
    def from_config(cls, config):
        """Create a wheel from explicit ``bets``/``schedule`` config."""
        if "bets" not in config:
            raise ConfigError("bets", "missing bet list")
        bets = []
        for i, bet_config in enumerate(config["bets"]):
            bets.append(_parse_part(BetSpec, bet_config, f"bets[{i}]"))
        schedule = []
        for j, override_config in enumerate(config.get("schedule", [])):
            schedule.append(_parse_part(ScheduleOverride, override_config, f"schedule[{j}]"))
        return cls(tuple(bets), tuple(schedule))


def theta_at(model, t, arm):
    """Win probability of ``arm`` in round ``t`` under ``model``."""
    return model.theta_at(t, arm)


def spin(model, t, arm, rng):
    """Play ``arm`` once in round ``t``."""
    return model.spin(t, arm, rng)


def _parse_part(part_class, config, path):
    """Build a wheel part, prefixing validation errors with its config path."""
    try:
        return part_class.from_config(config)
    except ConfigError as e:
        raise ConfigError(f"{path}.{e.field}", e.message) from e
    except KeyError as e:
        raise ConfigError(f"{path}.{e.args[0]}", "missing required key") from e
    except (TypeError, ValueError) as e:
        raise ConfigError(path, str(e)) from e
