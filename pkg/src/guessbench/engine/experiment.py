"""Experiments: many independent sessions for each of several policies."""

import math
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass

import numpy as np
from loguru import logger
from tqdm import tqdm

from guessbench.agents.all import agent_from_config
from guessbench.engine.seeding import MASK64, mix_seed
from guessbench.engine.session import SessionConfig, SessionResult, run_session
from guessbench.errors import ConfigError, UsageError
from guessbench.wheel.presets import wheel_from_config

DEFAULT_SESSIONS = 10_000
DEFAULT_WINDOWS = ((100, 200),)
METRICS = ("success", "survival")


@dataclass(frozen=True)
class ExperimentConfig:
    wheel: object
    session: SessionConfig
    policies: tuple
    sessions_per_policy: int = DEFAULT_SESSIONS
    base_seed: int = 0
    trace: bool = False
    selection_windows: tuple = DEFAULT_WINDOWS

    def __post_init__(self):
        object.__setattr__(self, "policies", tuple(self.policies))
        object.__setattr__(
            self,
            "selection_windows",
            tuple((int(start), int(end)) for start, end in self.selection_windows),
        )
        if self.sessions_per_policy < 1:
            raise ConfigError(
                "sessions_per_policy", f"must be at least 1, got {self.sessions_per_policy}"
            )
        if not 0 <= self.base_seed <= MASK64:
            raise ConfigError("base_seed", f"must be a 64-bit unsigned integer, got {self.base_seed}")
        if not self.policies:
            raise ConfigError("policies", "at least one policy is required")
        labels = set()
        signatures = set()
        for i, policy in enumerate(self.policies):
            if policy.label in labels:
                raise ConfigError(f"policies[{i}].label", f"duplicate label {policy.label!r}")
            signature = _policy_signature(policy)
            if signature in signatures:
                raise ConfigError(f"policies[{i}]", "the same policy appears twice")
            labels.add(policy.label)
            signatures.add(signature)
        for i, (start, end) in enumerate(self.selection_windows):
            if not 1 <= start <= end:
                raise ConfigError(
                    f"selection_windows[{i}]", f"need 1 <= from <= to, got [{start}, {end}]"
                )

    def with_overrides(self, base_seed=None, sessions_per_policy=None):
        """Copy of the config with command-line overrides applied."""
        return ExperimentConfig(
            wheel=self.wheel,
            session=self.session,
            policies=self.policies,
            sessions_per_policy=(
                self.sessions_per_policy if sessions_per_policy is None else sessions_per_policy
            ),
            base_seed=self.base_seed if base_seed is None else base_seed,
            trace=self.trace,
            selection_windows=self.selection_windows,
        )

    def to_config(self):
        return {
            "wheel": self.wheel.to_config(),
            "session": self.session.to_config(),
            "policies": [policy.to_config() for policy in self.policies],
            "sessions_per_policy": self.sessions_per_policy,
            "base_seed": self.base_seed,
            "trace": self.trace,
            "selection_windows": [list(window) for window in self.selection_windows],
        }

    @classmethod
    def from_config(cls, config):
        if not isinstance(config, dict):
            raise ConfigError("", "experiment config must be a JSON object")
        known = {
            "wheel",
            "session",
            "policies",
            "sessions_per_policy",
            "base_seed",
            "trace",
            "selection_windows",
        }
        for key in config:
            if key not in known:
                raise ConfigError(key, "unknown config key")
        for key in ("wheel", "session", "policies"):
            if key not in config:
                raise ConfigError(key, "missing required key")

        wheel = wheel_from_config(config["wheel"])
        try:
            session = SessionConfig.from_config(config["session"])
        except ConfigError as e:
            raise ConfigError(_join("session", e.field), e.message) from e

        if not isinstance(config["policies"], list):
            raise ConfigError("policies", "must be a list of policy objects")
        policies = []
        for i, policy_config in enumerate(config["policies"]):
            try:
                policies.append(agent_from_config(policy_config))
            except ConfigError as e:
                raise ConfigError(_join(f"policies[{i}]", e.field), e.message) from e
            except (TypeError, ValueError) as e:
                raise ConfigError(f"policies[{i}]", str(e)) from e

        try:
            windows = tuple(
                (int(start), int(end))
                for start, end in config.get("selection_windows", DEFAULT_WINDOWS)
            )
            sessions = int(config.get("sessions_per_policy", DEFAULT_SESSIONS))
            base_seed = int(config.get("base_seed", 0))
        except (TypeError, ValueError) as e:
            raise ConfigError("", f"bad experiment value: {e}") from e
        trace = config.get("trace", False)
        if not isinstance(trace, bool):
            raise ConfigError("trace", f"must be true or false, got {trace!r}")
        return cls(
            wheel=wheel,
            session=session,
            policies=tuple(policies),
            sessions_per_policy=sessions,
            base_seed=base_seed,
            trace=trace,
            selection_windows=windows,
        )


def _join(prefix, field):
    return f"{prefix}.{field}" if field else prefix


def _policy_signature(policy):
    config = policy.to_config()
    config.pop("label", None)
    return tuple(sorted(config.items()))


@dataclass(frozen=True)
class PolicyResult:
    label: str
    policy: object
    sessions: tuple
    summary: dict


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    policies: tuple

    @property
    def labels(self):
        return [result.label for result in self.policies]

    def policy(self, label):
        """Results for the policy called ``label``."""
        for result in self.policies:
            if result.label == label:
                return result
        raise UsageError(f"no policy labelled {label!r}; have {', '.join(self.labels)}")

    def metric_groups(self, metric=None):
        """Per-session metric values for each policy, as ``(label, values)`` pairs."""
        metric = metric or default_metric(self.config.session.mode)
        return [
            (result.label, metric_values(result.sessions, metric, self.config.session))
            for result in self.policies
        ]


def success_rate(results, session_config=None):
    """Fraction of horizon-mode sessions that ended in success."""
    if not results:
        raise UsageError("success rate of an empty result list")
    if any(result.mode != "horizon" for result in results):
        raise UsageError("success rate is defined for horizon-mode sessions only")
    session_config = session_config or SessionConfig(horizon=results[0].rounds_played)
    wins = sum(1 for result in results if session_config.is_success(result.final_balance))
    return wins / len(results)


def survival_rounds(results):
    """Rounds played before bankruptcy (or the cap) in each bankruptcy-mode session."""
    if any(result.mode != "bankruptcy" for result in results):
        raise UsageError("survival rounds are defined for bankruptcy-mode sessions only")
    return [result.rounds_played for result in results]


def default_metric(mode):
    return "success" if mode == "horizon" else "survival"


def metric_values(results, metric, session_config):
    """Per-session values of ``metric``: 0/1 success indicators or survival rounds."""
    if metric not in METRICS:
        raise UsageError(f"unknown metric {metric!r}; expected one of {list(METRICS)}")
    if metric == "success":
        if session_config.mode != "horizon":
            raise UsageError("the success metric needs horizon-mode results")
        return [1.0 if session_config.is_success(r.final_balance) else 0.0 for r in results]
    return [float(rounds) for rounds in survival_rounds(results)]


def summarize(sessions, config):
    """Aggregate one policy's sessions into the summary stored with the results."""
    labels = config.wheel.labels
    summary = {"sessions": len(sessions)}
    if config.session.mode == "horizon":
        success_count = sum(1 for s in sessions if config.session.is_success(s.final_balance))
        balances = np.array([s.final_balance for s in sessions], dtype=float)
        summary["success_count"] = success_count
        summary["success_rate"] = success_count / len(sessions)
        summary["balance_mean"] = float(balances.mean())
    else:
        rounds = np.array(survival_rounds(sessions), dtype=float)
        summary["survival_mean"] = float(rounds.mean())
        summary["survival_median"] = float(np.median(rounds))
        summary["survival_min"] = int(rounds.min())
        summary["survival_max"] = int(rounds.max())
        summary["bankrupt_count"] = sum(1 for s in sessions if s.bankrupt)
        summary["capped_count"] = sum(1 for s in sessions if s.capped)

    summary["arm_selection_frequencies"] = _frequencies(
        labels, [s.arm_counts for s in sessions]
    )
    summary["window_selection_frequencies"] = [
        {
            "from": start,
            "to": end,
            "frequencies": _frequencies(labels, [s.window_arm_counts[w] for s in sessions]),
        }
        for w, (start, end) in enumerate(config.selection_windows)
    ]
    return summary


def _frequencies(labels, counts):
    totals = np.sum(np.array(counts, dtype=np.int64).reshape(-1, len(labels)), axis=0)
    played = int(totals.sum())
    if played == 0:
        return {label: 0.0 for label in labels}
    return {label: int(total) / played for label, total in zip(labels, totals)}


def _run_chunk(config, policy_index, indices):
    """Run the sessions ``indices`` of one policy. Top level so worker processes can pickle it."""
    policy = config.policies[policy_index]
    return [
        run_session(
            config.wheel,
            policy,
            config.session,
            mix_seed(config.base_seed, policy_index, j),
            trace=config.trace,
            selection_windows=config.selection_windows,
        )
        for j in indices
    ]


def _chunks(n_sessions, threads):
    size = max(1, math.ceil(n_sessions / (threads * 8)))
    return [range(start, min(start + size, n_sessions)) for start in range(0, n_sessions, size)]


def run_experiment(config, threads=1, progress=False):
    """Run every policy's sessions and summarise them.

    The output depends only on ``config``: each session is seeded from
    (base seed, policy index, session index) and stored by index, so the
    number of worker processes and their completion order are invisible.
    """
    n = config.sessions_per_policy
    sessions = [[None] * n for _ in config.policies]
    total = n * len(config.policies)
    logger.info(
        f"Running {len(config.policies)} policies x {n} sessions "
        f"({config.session.mode} mode, base seed {config.base_seed}, {threads} worker(s))"
    )

    with tqdm(total=total, disable=not progress, desc="sessions") as bar:
        if threads <= 1:
            for p in range(len(config.policies)):
                for j in range(n):
                    sessions[p][j] = _run_chunk(config, p, range(j, j + 1))[0]
                    bar.update(1)
        else:
            with ProcessPoolExecutor(max_workers=threads) as executor:
                futures = {}
                for p in range(len(config.policies)):
                    for indices in _chunks(n, threads):
                        futures[executor.submit(_run_chunk, config, p, indices)] = (p, indices)
                for future in as_completed(futures):
                    p, indices = futures[future]
                    for j, result in zip(indices, future.result()):
                        sessions[p][j] = result
                    bar.update(len(indices))

    results = []
    for policy, policy_sessions in zip(config.policies, sessions):
        summary = summarize(policy_sessions, config)
        _log_summary(policy.label, summary)
        results.append(PolicyResult(policy.label, policy, tuple(policy_sessions), summary))
    return ExperimentResult(config, tuple(results))


def _log_summary(label, summary):
    if "success_rate" in summary:
        logger.info(f"{label}: success rate {summary['success_rate']:.4f}")
        return
    logger.info(
        f"{label}: median survival {summary['survival_median']:.1f} rounds "
        f"(mean {summary['survival_mean']:.1f})"
    )
    if summary["capped_count"]:
        logger.warning(f"{label}: {summary['capped_count']} session(s) hit the round cap")


def result_from_records(config, policy_records):
    """Rebuild an ``ExperimentResult`` from stored per-policy records."""
    results = []
    by_label = {record["label"]: record for record in policy_records}
    for policy in config.policies:
        if policy.label not in by_label:
            raise UsageError(f"results file has no sessions for policy {policy.label!r}")
        record = by_label[policy.label]
        sessions = tuple(
            SessionResult.from_config(s, config.session.mode) for s in record["sessions"]
        )
        results.append(PolicyResult(policy.label, policy, sessions, record.get("summary", {})))
    return ExperimentResult(config, tuple(results))

