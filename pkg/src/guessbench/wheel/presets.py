"""Standard European roulette wheels used by the bundled experiments.

Win probabilities are exact ratios over the 37 pockets. The zero bet pays
35 net by default, which gives every fair-wheel bet the same expected value
of -1/37. The ``net36`` convention reads the bet table's 36 as a net payout
instead; under it the skewed zero bet is worth exactly +$1.
"""

from guessbench.errors import ConfigError
from guessbench.wheel.bet import BetSpec
from guessbench.wheel.model import WheelModel
from guessbench.wheel.schedule import ScheduleOverride

POCKETS = 37
ZERO_PAYOUTS = {"net35": 35, "net36": 36}
DEFAULT_CONVENTION = "net35"
NONSTATIONARY_WINDOW = (100, 200)


def _fair_bets(zero_payout, zero_pockets=1):
    return (
        BetSpec("zero", zero_pockets / POCKETS, zero_payout),
        BetSpec("corner", 4 / POCKETS, 8),
        BetSpec("even", 18 / POCKETS, 1),
    )


def standard_wheels(zero_payout_convention=DEFAULT_CONVENTION):
    """Return the ``fair``, ``skewed`` and ``nonstationary`` wheel presets."""
    if zero_payout_convention not in ZERO_PAYOUTS:
        raise ConfigError(
            "zero_payout_convention",
            f"expected one of {sorted(ZERO_PAYOUTS)}, got {zero_payout_convention!r}",
        )
    zero_payout = ZERO_PAYOUTS[zero_payout_convention]
    start, end = NONSTATIONARY_WINDOW
    return {
        "fair": WheelModel(_fair_bets(zero_payout)),
        "skewed": WheelModel(_fair_bets(zero_payout, zero_pockets=2)),
        "nonstationary": WheelModel(
            _fair_bets(zero_payout),
            (ScheduleOverride(start, end, "zero", 2 / POCKETS),),
        ),
    }


def wheel_from_config(config):
    """Build a wheel from either a ``preset`` reference or explicit bets."""
    if "preset" in config:
        unexpected = set(config) - {"preset", "zero_payout_convention"}
        if unexpected:
            raise ConfigError(
                f"wheel.{sorted(unexpected)[0]}", "not allowed alongside a preset"
            )
        try:
            presets = standard_wheels(
                config.get("zero_payout_convention", DEFAULT_CONVENTION)
            )
        except ConfigError as e:
            raise ConfigError(f"wheel.{e.field}", e.message) from e
        try:
            return presets[config["preset"]]
        except KeyError:
            raise ConfigError(
                "wheel.preset",
                f"expected one of {sorted(presets)}, got {config['preset']!r}",
            )
    try:
        return WheelModel.from_config(config)
    except ConfigError as e:
        raise ConfigError(f"wheel.{e.field}", e.message) from e
