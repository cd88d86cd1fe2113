"""guessbench: pit bandit agents against a random guesser on a roulette wheel."""

from guessbench.__about__ import VERSION

__version__ = VERSION
