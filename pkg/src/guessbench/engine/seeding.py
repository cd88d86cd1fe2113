"""Deterministic per-session seeds.

A session's seed depends only on the experiment's base seed, the policy's
position in the config and the session's index, never on which worker runs
it or when. The mixer is the SplitMix64 output function::

    f(x) = splitmix64(x)
    mix(base, p, j) = f(f(f(base) ^ p) ^ j)

with all arithmetic modulo 2**64.
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(x):
    z = (x + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix_seed(base_seed, policy_index, session_index):
    """Seed for session ``session_index`` of the policy at ``policy_index``."""
    z = splitmix64(base_seed & MASK64)
    z = splitmix64(z ^ (policy_index & MASK64))
    return splitmix64(z ^ (session_index & MASK64))
