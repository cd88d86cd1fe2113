"""One betting session: a single agent plays the wheel until it stops."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from loguru import logger

from guessbench.errors import ConfigError, UsageError

MODES = ("horizon", "bankruptcy")
SUCCESS_CRITERIA = ("nonnegative", "positive")
DEFAULT_BANKROLL = 100
DEFAULT_ROUND_CAP = 1_000_000


@dataclass(frozen=True)
class SessionConfig:
    """How a session starts and when it ends.

    ``horizon`` sessions play exactly ``horizon`` rounds from a balance of 0.
    ``bankruptcy`` sessions start at ``initial_bankroll`` and stop once the
    balance reaches 0 or ``round_cap`` rounds have been played.
    """

    mode: str = "horizon"
    horizon: Optional[int] = None
    initial_bankroll: int = DEFAULT_BANKROLL
    round_cap: int = DEFAULT_ROUND_CAP
    success: str = "nonnegative"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError("mode", f"expected one of {list(MODES)}, got {self.mode!r}")
        if self.success not in SUCCESS_CRITERIA:
            raise ConfigError(
                "success", f"expected one of {list(SUCCESS_CRITERIA)}, got {self.success!r}"
            )
        if self.mode == "horizon":
            if self.horizon is None or self.horizon < 1:
                raise ConfigError("horizon", f"horizon mode needs horizon >= 1, got {self.horizon}")
        else:
            if self.initial_bankroll < 1:
                raise ConfigError(
                    "initial_bankroll", f"must be at least 1, got {self.initial_bankroll}"
                )
            if self.round_cap < 1:
                raise ConfigError("round_cap", f"must be at least 1, got {self.round_cap}")

    @property
    def starting_balance(self):
        return 0 if self.mode == "horizon" else self.initial_bankroll

    def is_success(self, final_balance):
        if self.success == "positive":
            return final_balance > 0
        return final_balance >= 0

    def to_config(self):
        if self.mode == "horizon":
            config = {"mode": self.mode, "horizon": self.horizon}
        else:
            config = {
                "mode": self.mode,
                "initial_bankroll": self.initial_bankroll,
                "round_cap": self.round_cap,
            }
        config["success"] = self.success
        return config

    @classmethod
    def from_config(cls, config):
        mode = config.get("mode", "horizon")
        allowed = {"mode", "success"} | (
            {"horizon"} if mode == "horizon" else {"initial_bankroll", "round_cap"}
        )
        for key in config:
            if key not in allowed:
                raise ConfigError(key, f"not used by {mode!r} sessions")
        try:
            return cls(
                mode=mode,
                horizon=None if config.get("horizon") is None else int(config["horizon"]),
                initial_bankroll=int(config.get("initial_bankroll", DEFAULT_BANKROLL)),
                round_cap=int(config.get("round_cap", DEFAULT_ROUND_CAP)),
                success=config.get("success", "nonnegative"),
            )
        except ConfigError:
            raise
        except (TypeError, ValueError) as e:
            raise ConfigError("", f"bad session value: {e}") from e


@dataclass(frozen=True)
class SessionResult:
    mode: str
    rounds_played: int
    final_balance: int
    bankrupt: bool
    capped: bool
    arm_counts: tuple
    window_arm_counts: tuple = ()
    per_round_trace: Optional[tuple] = None

    def to_config(self):
        record = {
            "rounds_played": self.rounds_played,
            "final_balance": self.final_balance,
            "bankrupt": self.bankrupt,
            "capped": self.capped,
            "arm_counts": list(self.arm_counts),
            "window_arm_counts": [list(counts) for counts in self.window_arm_counts],
        }
        if self.per_round_trace is not None:
            record["trace"] = [outcome.to_config() for outcome in self.per_round_trace]
        return record

    @classmethod
    def from_config(cls, record, mode):
        # Traces are write-only; reloaded results never need them.
        return cls(
            mode=mode,
            rounds_played=int(record["rounds_played"]),
            final_balance=int(record["final_balance"]),
            bankrupt=bool(record["bankrupt"]),
            capped=bool(record["capped"]),
            arm_counts=tuple(record.get("arm_counts", ())),
            window_arm_counts=tuple(tuple(c) for c in record.get("window_arm_counts", ())),
        )


def run_session(
    wheel, policy, session_config, seed, trace=False, selection_windows=(), rng=None
):
    """Play one session of ``policy`` on ``wheel`` and summarise it.

    Every random draw, the wheel's and the agent's, comes from one generator
    seeded with ``seed`` unless ``rng`` is given.
    """
    if rng is None:
        rng = np.random.default_rng(seed)
    n_arms = wheel.n_arms
    payouts = wheel.payouts
    state = policy.new_state(n_arms)
    horizon = session_config.mode == "horizon"
    last_round = session_config.horizon if horizon else session_config.round_cap

    balance = session_config.starting_balance
    arm_counts = [0] * n_arms
    window_counts = [[0] * n_arms for _ in selection_windows]
    outcomes = [] if trace else None
    bankrupt = False
    t = 0
    while t < last_round:
        t += 1
        arm = policy.select(state, payouts, rng)
        if not 0 <= arm < n_arms:
            raise UsageError(f"{policy.label} selected arm {arm} of {n_arms}")
        outcome = wheel.spin(t, arm, rng)
        state = policy.update(state, outcome)
        balance += outcome.net_reward
        arm_counts[arm] += 1
        for counts, (start, end) in zip(window_counts, selection_windows):
            if start <= t <= end:
                counts[arm] += 1
        if trace:
            outcomes.append(outcome)
        if not horizon and balance <= 0:
            bankrupt = True
            break

    capped = not horizon and not bankrupt
    if capped:
        logger.debug(f"{policy.label} session (seed {seed}) reached the {t} round cap")
    return SessionResult(
        mode=session_config.mode,
        rounds_played=t,
        final_balance=balance,
        bankrupt=bankrupt,
        capped=capped,
        arm_counts=tuple(arm_counts),
        window_arm_counts=tuple(tuple(counts) for counts in window_counts),
        per_round_trace=tuple(outcomes) if trace else None,
    )
