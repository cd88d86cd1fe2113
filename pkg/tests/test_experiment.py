import pytest

from guessbench.agents.all import standard_agents
from guessbench.agents.epsilon_greedy import EpsilonGreedy
from guessbench.agents.random_guesser import RandomGuesser
from guessbench.engine import (
    ExperimentConfig,
    SessionConfig,
    SessionResult,
    mix_seed,
    run_experiment,
    success_rate,
    survival_rounds,
)
from guessbench.engine.seeding import MASK64, splitmix64
from guessbench.errors import ConfigError, UsageError
from guessbench.results import results_document
from guessbench.wheel import standard_wheels

FAIR = standard_wheels()["fair"]


def horizon_result(balance):
    return SessionResult("horizon", 50, balance, False, False, (50, 0, 0))


def bankruptcy_result(rounds, capped=False):
    return SessionResult("bankruptcy", rounds, 100 if capped else 0, not capped, capped, (rounds, 0, 0))


def small_config(**overrides):
    settings = dict(
        wheel=FAIR,
        session=SessionConfig(horizon=20),
        policies=tuple(standard_agents()),
        sessions_per_policy=12,
        base_seed=2024,
    )
    settings.update(overrides)
    return ExperimentConfig(**settings)


class _BlankManifest:
    def to_config(self):
        return {}


def comparable(result):
    return results_document(result, _BlankManifest())


# seeding


def test_splitmix64_reference_value():
    assert splitmix64(0) == 0xE220A8397B1DCDAF


def test_mix_seed_is_deterministic_and_spreads():
    seeds = {mix_seed(7, p, j) for p in range(5) for j in range(200)}
    assert len(seeds) == 1000
    assert mix_seed(7, 2, 3) == mix_seed(7, 2, 3)
    assert mix_seed(7, 2, 3) != mix_seed(8, 2, 3)
    assert all(0 <= seed <= MASK64 for seed in seeds)


# metrics


def test_success_rate_examples():
    assert success_rate([horizon_result(b) for b in (-5, 0, 3, -1)]) == 0.5
    assert success_rate([horizon_result(b) for b in (-5, -1)]) == 0.0
    assert success_rate([horizon_result(0) for _ in range(4)]) == 1.0


def test_success_rate_strict_option():
    results = [horizon_result(b) for b in (-5, 0, 3, -1)]
    assert success_rate(results, SessionConfig(horizon=50, success="positive")) == 0.25


def test_success_rate_errors():
    with pytest.raises(UsageError):
        success_rate([])
    with pytest.raises(UsageError):
        success_rate([bankruptcy_result(3)])


def test_survival_rounds():
    assert survival_rounds([bankruptcy_result(3)]) == [3]
    assert survival_rounds([bankruptcy_result(1), bankruptcy_result(40, capped=True)]) == [1, 40]
    with pytest.raises(UsageError):
        survival_rounds([horizon_result(0)])


# experiments


def test_single_session_experiment():
    config = small_config(policies=(RandomGuesser(),), sessions_per_policy=1)
    result = run_experiment(config)
    assert result.labels == ["random"]
    policy = result.policy("random")
    assert len(policy.sessions) == 1
    assert policy.summary["sessions"] == 1
    assert policy.summary["success_count"] in (0, 1)


def test_summary_matches_sessions():
    result = run_experiment(small_config())
    for policy in result.policies:
        assert len(policy.sessions) == 12
        assert policy.summary["success_count"] == sum(s.final_balance >= 0 for s in policy.sessions)
        assert policy.summary["success_rate"] == success_rate(list(policy.sessions))
        frequencies = policy.summary["arm_selection_frequencies"]
        assert set(frequencies) == {"zero", "corner", "even"}
        assert sum(frequencies.values()) == pytest.approx(1.0)
        assert "survival_median" not in policy.summary


def test_bankruptcy_summary():
    config = small_config(session=SessionConfig(mode="bankruptcy", initial_bankroll=5, round_cap=300))
    result = run_experiment(config)
    for policy in result.policies:
        rounds = survival_rounds(list(policy.sessions))
        summary = policy.summary
        assert summary["survival_min"] == min(rounds)
        assert summary["survival_max"] == max(rounds)
        assert summary["bankrupt_count"] + summary["capped_count"] == 12
        assert "success_rate" not in summary


def test_same_config_same_result():
    assert comparable(run_experiment(small_config())) == comparable(run_experiment(small_config()))


def test_worker_count_is_invisible():
    config = small_config(sessions_per_policy=30)
    assert comparable(run_experiment(config, threads=1)) == comparable(
        run_experiment(config, threads=3)
    )


def test_sessions_are_seeded_by_index():
    short = run_experiment(small_config(sessions_per_policy=5))
    longer = run_experiment(small_config(sessions_per_policy=10))
    for a, b in zip(short.policies, longer.policies):
        assert a.sessions == b.sessions[:5]


def test_metric_groups():
    result = run_experiment(small_config())
    groups = dict(result.metric_groups())
    assert set(groups) == set(result.labels)
    assert all(value in (0.0, 1.0) for values in groups.values() for value in values)
    with pytest.raises(UsageError):
        result.metric_groups("survival")


def test_unknown_policy_label():
    result = run_experiment(small_config(policies=(RandomGuesser(),), sessions_per_policy=2))
    with pytest.raises(UsageError):
        result.policy("thompson")


# config validation


def test_config_round_trip():
    config = small_config()
    assert ExperimentConfig.from_config(config.to_config()) == config


def test_preset_config_expands_to_explicit_wheel():
    config = ExperimentConfig.from_config(
        {
            "wheel": {"preset": "nonstationary"},
            "session": {"mode": "bankruptcy"},
            "policies": [{"kind": "random"}],
        }
    )
    assert config.wheel == standard_wheels()["nonstationary"]
    serialized = config.to_config()
    assert "preset" not in serialized["wheel"]
    assert ExperimentConfig.from_config(serialized) == config


def test_duplicate_policy_rejected():
    with pytest.raises(ConfigError) as e:
        small_config(policies=(EpsilonGreedy(0.1), EpsilonGreedy(0.1, custom_label="again")))
    assert e.value.field == "policies[1]"
    with pytest.raises(ConfigError):
        small_config(policies=(EpsilonGreedy(0.1), EpsilonGreedy(0.2, custom_label="epsilon_greedy")))


@pytest.mark.parametrize(
    "patch,field",
    [
        ({"policies": [{"kind": "random"}, {"kind": "epsilon_greedy", "epsilon": 2}]}, "policies[1].epsilon"),
        ({"session": {"mode": "horizon", "horizon": 0}}, "session.horizon"),
        ({"wheel": {"preset": "loaded"}}, "wheel.preset"),
        ({"wheel": {"bets": [{"label": "a", "win_prob": 0.5}]}}, "wheel.bets[0].net_payout"),
        ({"sessions_per_policy": 0}, "sessions_per_policy"),
        ({"base_seed": -1}, "base_seed"),
        ({"policies": []}, "policies"),
        ({"colour": "red"}, "colour"),
        ({"trace": "false"}, "trace"),
    ],
)
def test_config_errors_name_the_field(patch, field):
    document = {
        "wheel": {"preset": "fair"},
        "session": {"mode": "horizon", "horizon": 50},
        "policies": [{"kind": "random"}],
    }
    document.update(patch)
    with pytest.raises(ConfigError) as e:
        ExperimentConfig.from_config(document)
    assert e.value.field == field


def test_overrides():
    config = small_config().with_overrides(base_seed=42, sessions_per_policy=3)
    assert config.base_seed == 42
    assert config.sessions_per_policy == 3
    with pytest.raises(ConfigError):
        small_config().with_overrides(base_seed=2**64)
