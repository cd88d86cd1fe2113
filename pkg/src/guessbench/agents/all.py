"""Registry of every policy kind."""

from guessbench.errors import ConfigError

from .epsilon_greedy import EpsilonGreedy
from .random_guesser import RandomGuesser
from .temporal_difference import TemporalDifference
from .thompson import ThompsonSampling

ALL_AGENTS = {
    agent.kind: agent
    for agent in (RandomGuesser, EpsilonGreedy, ThompsonSampling, TemporalDifference)
}


def agent_from_config(config):
    """Create the agent a policy config describes."""
    if not isinstance(config, dict) or "kind" not in config:
        raise ConfigError("kind", "policy config needs a 'kind'")
    try:
        agent_class = ALL_AGENTS[config["kind"]]
    except KeyError:
        raise ConfigError(
            "kind", f"expected one of {sorted(ALL_AGENTS)}, got {config['kind']!r}"
        )
    return agent_class.from_config(config)


def update(policy, state, outcome):
    """Fold ``outcome`` into ``state`` the way ``policy`` learns."""
    return policy.update(state, outcome)


def standard_agents():
    """The five policies compared in every bundled experiment."""
    return [
        RandomGuesser(),
        EpsilonGreedy(),
        ThompsonSampling(),
        TemporalDifference("td0"),
        TemporalDifference("td1"),
    ]
