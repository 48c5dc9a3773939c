"""Forced-choice quantity-discrimination experiment toolkit.

Provides the trial/session engine, the masked-protocol feedback event
stream, the trial log codecs (.csv and .txt), the statistical analysis
pipeline (exact binomial tail tests, pair summaries, Pearson
correlations), a subject simulator, and a log-repository service.
"""

from quantgame.engine import (
    DisplayMode,
    GameConfig,
    Session,
    Tier,
    TrialSpec,
    end_of_game_tier,
    evaluate_answer,
    generate_trial,
)
from quantgame.logfmt import TrialRecord, parse_log_csv, parse_log_txt

__all__ = [
    "DisplayMode",
    "GameConfig",
    "Session",
    "Tier",
    "TrialSpec",
    "TrialRecord",
    "end_of_game_tier",
    "evaluate_answer",
    "generate_trial",
    "parse_log_csv",
    "parse_log_txt",
]

__version__ = "0.1.0"
