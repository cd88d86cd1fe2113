"""Session and experiment runners."""

from .experiment import (
    ExperimentConfig,
    ExperimentResult,
    PolicyResult,
    run_experiment,
    success_rate,
    survival_rounds,
)
from .seeding import mix_seed
from .session import SessionConfig, SessionResult, run_session
