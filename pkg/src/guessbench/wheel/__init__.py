"""Roulette wheel environment: bet economics, schedules and outcome sampling."""

from .bet import BetSpec, expected_value
from .model import RoundOutcome, WheelModel, spin, theta_at
from .presets import standard_wheels
from .schedule import ScheduleOverride
