"""Synthetic subjects and whole-session simulation.

Used to validate the pipeline end to end (simulated logs flow through the
engine, the feedback stream and the log codec exactly like real sessions)
and to estimate statistical power by Monte Carlo.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import Optional, Sequence

from quantgame.engine import (
    ContinuePlaying,
    GameConfig,
    Phase,
    SelectMode,
    Session,
    TouchSlot,
    TrialSpec,
    generate_trial,
)
from quantgame.errors import MissingPairEntry
from quantgame.feedback import FeedbackEvent
from quantgame.logfmt import format_log_csv, format_log_txt
from quantgame.stats import binomial_tail, chance_level

# Per-pair accuracies of the strongest published two-choice subject, used
# as the default ratio-table behavioral model.
SUBJECT1_PAIR_ACCURACY = {
    (1, 2): 0.81, (1, 3): 0.90, (1, 4): 0.93, (1, 5): 0.94,
    (2, 3): 0.82, (2, 4): 0.81, (2, 5): 0.96,
    (3, 4): 0.67, (3, 5): 0.73, (4, 5): 0.55,
}


def _wrong_slot(trial: TrialSpec, rng: random.Random) -> int:
    wrong = [i for i in range(len(trial.values)) if i != trial.correct_index]
    return rng.choice(wrong)


class UniformRandom:
    """Chance-level subject: picks a slot uniformly."""

    name = "uniform"

    def choose(self, trial: TrialSpec, rng: random.Random) -> int:
        return rng.randrange(len(trial.values))


class Perfect:
    """Always selects the maximum."""

    name = "perfect"

    def choose(self, trial: TrialSpec, rng: random.Random) -> int:
        return trial.correct_index


@dataclass
class RatioTable:
    """Correct with the tabulated accuracy for the trial's pair; wrong slots
    are uniform among the non-correct ones.

    For set sizes above 2 the pairwise accuracy of the top-two values is
    applied (a modeling choice, reported in output metadata).
    """

    table: dict = field(default_factory=lambda: dict(SUBJECT1_PAIR_ACCURACY))
    name = "ratio-table"

    def accuracy_for(self, trial: TrialSpec) -> float:
        top_two = sorted(trial.values)[-2:]
        key = (top_two[0], top_two[1])
        try:
            return self.table[key]
        except KeyError:
            raise MissingPairEntry(f"no accuracy entry for pair {key}") from None

    def choose(self, trial: TrialSpec, rng: random.Random) -> int:
        if rng.random() < self.accuracy_for(trial):
            return trial.correct_index
        return _wrong_slot(trial, rng)


@dataclass
class RatioLogistic:
    """P(correct) = 1 / (1 + exp(-(intercept + slope * ratio))) where ratio
    is second-max over max of the presented values."""

    slope: float = -4.0
    intercept: float = 4.0
    name = "ratio-logistic"

    def p_correct(self, trial: TrialSpec) -> float:
        top_two = sorted(trial.values)[-2:]
        ratio = top_two[0] / top_two[1]
        return 1.0 / (1.0 + math.exp(-(self.intercept + self.slope * ratio)))

    def choose(self, trial: TrialSpec, rng: random.Random) -> int:
        if rng.random() < self.p_correct(trial):
            return trial.correct_index
        return _wrong_slot(trial, rng)


MODELS = {
    "uniform": UniformRandom,
    "perfect": Perfect,
    "ratio-table": RatioTable,
    "ratio-logistic": RatioLogistic,
}


def make_model(name: str, **kwargs):
    try:
        return MODELS[name](**kwargs)
    except KeyError:
        raise ValueError(f"unknown model {name!r}") from None


class SyntheticClock:
    """Monotone fake wall clock for replayable simulated sessions."""

    def __init__(self, start: datetime):
        self.current = start

    def now(self) -> datetime:
        return self.current

    def advance_ms(self, ms: float):
        # whole milliseconds only: the log codec stores nothing finer
        self.current = self.current + timedelta(milliseconds=round(ms))


@dataclass
class SimulatedSession:
    records: list
    events: list  # FeedbackEvent stream, in emission order
    seed: int
    csv: str
    txt: str
    metadata: dict


def simulate_session(model, config: GameConfig, n_games: int = 1,
                     seed: Optional[int] = None,
                     start: datetime = datetime(2022, 5, 19, 17, 2, 18),
                     answer_median_ms: float = 3000.0) -> SimulatedSession:
    """Run a full session through the engine and render its log.

    Answering times are log-normal around the configured median; they feed
    the log's timing columns but no statistic in scope.
    """
    if seed is None:
        seed = random.SystemRandom().getrandbits(64)
    rng = random.Random(seed)
    clock = SyntheticClock(start)
    session = Session(config, seed=rng.getrandbits(64), clock=clock.now)
    records = []
    events: list[FeedbackEvent] = []
    session.step(SelectMode(config.mode))
    for game in range(n_games):
        if game > 0:
            session.step(ContinuePlaying())
        while session.state.phase is Phase.IN_GAME:
            trial = session.state.pending
            slot = model.choose(trial, rng)
            clock.advance_ms(rng.lognormvariate(math.log(answer_median_ms), 0.5))
            records.append(session.step(TouchSlot(slot)))
            clock.advance_ms(config.inter_trial_delay_ms)
        events.extend(session.drain_events())
    metadata = {
        "model": model.name,
        "seed": seed,
        "n_games": n_games,
        "trials": len(records),
        "top_two_pair_approximation": config.set_size > 2
        and isinstance(model, (RatioTable, RatioLogistic)),
    }
    return SimulatedSession(records=records, events=events, seed=seed,
                            csv=format_log_csv(records),
                            txt=format_log_txt(records),
                            metadata=metadata)


def session_pvalue(model, config: GameConfig, n_trials: int,
                   rng: random.Random, exact_chance: bool = False) -> float:
    """One replicate: n_trials simulated answers -> binomial tail p-value."""
    k = 0
    for _ in range(n_trials):
        trial = generate_trial(config, rng)
        k += int(model.choose(trial, rng) == trial.correct_index)
    return binomial_tail(k, n_trials, chance_level(config.set_size, exact_chance))


@dataclass
class PowerPoint:
    n_trials: int
    detection_rate: float
    replicates: int


def power_analysis(model, config: GameConfig, n_trials_grid: Sequence[int],
                   alpha: float = 0.05, replicates: int = 1000,
                   seed: Optional[int] = None) -> list[PowerPoint]:
    """Fraction of simulated sessions detected (p < alpha) per grid point."""
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must be in (0,1)")
    if seed is None:
        seed = random.SystemRandom().getrandbits(64)
    rng = random.Random(seed)
    points = []
    for n in n_trials_grid:
        hits = sum(session_pvalue(model, config, n, rng) < alpha
                   for _ in range(replicates))
        points.append(PowerPoint(n_trials=n, detection_rate=hits / replicates,
                                 replicates=replicates))
    return points
