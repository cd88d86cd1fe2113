"""Decision policies that choose which bet to place each round."""

from guessbench.errors import ConfigError


class Agent:
    """Uniform interface shared by every policy.

    An agent instance is an immutable description of a policy and its
    parameters. All learning happens in the separate state object returned
    by ``new_state``, which belongs to a single session.
    """

    kind = None

    def new_state(self, n_arms):
        """Create fresh learning state for ``n_arms`` arms."""
        raise NotImplementedError

    def select(self, state, payouts, rng):
        """Choose an arm index without touching ``state``."""
        raise NotImplementedError

    def update(self, state, outcome):
        """Fold one round's outcome into ``state`` and return it."""
        raise NotImplementedError

    @property
    def label(self):
        """Name used for this policy in results and tables."""
        return self.custom_label or self.kind

    def to_config(self):
        """Convert the agent to its JSON config form."""
        raise NotImplementedError

    @classmethod
    def from_config(cls, config):
        """Create an agent from its JSON config form."""
        raise NotImplementedError


def check_config_keys(config, allowed):
    """Reject config keys a policy kind does not use."""
    for key in config:
        if key not in allowed and key not in ("kind", "label"):
            raise ConfigError(key, f"not a parameter of {config.get('kind')!r} policies")
