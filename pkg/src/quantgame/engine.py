"""Trial generation, answer evaluation and the session state machine.

A session walks menu -> game -> end-of-game, producing one TrialRecord per
answered trial and a stream of audio feedback events that never leaks the
trial content (see quantgame.feedback).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from datetime import datetime, timedelta
from enum import Enum
from typing import Callable, Optional

from quantgame.errors import IllegalTransition, InvalidConfig, SlotOutOfRange
from quantgame.feedback import (
    FeedbackEvent,
    end_of_game_feedback,
    exit_feedback,
    feedback_for_answer,
    session_started_feedback,
)
from quantgame.logfmt import TrialRecord


class DisplayMode(str, Enum):
    """Visual encoding of an integer value; values are the log wire names."""

    DICE = "dice"
    HEAP = "heap"
    RECT = "rect"
    DISC = "disc"

    @property
    def kind(self) -> str:
        """'Discrete' for dot-count modes, 'Continuous' for magnitude modes."""
        return "Discrete" if self in (DisplayMode.DICE, DisplayMode.HEAP) else "Continuous"


class Tier(Enum):
    LOW = "low"
    MID = "mid"
    HIGH = "high"


DEFAULT_DOMAIN = (1, 2, 3, 4, 5)
MAX_DOMAIN = tuple(range(1, 11))

DEFAULT_VOCABULARY = {
    "correct": "good",
    "incorrect": "no",
    "high": "great",
    "mid": "ok",
    "low": "again",
    "exit": "break",
}


def normalize_domain(values) -> tuple[int, ...]:
    """Validate and sort a value domain (2..10 distinct positive integers)."""
    domain = tuple(sorted(values))
    if len(domain) < 2 or len(domain) > 10:
        raise InvalidConfig(f"domain must have 2..10 values, got {len(domain)}")
    if len(set(domain)) != len(domain):
        raise InvalidConfig("domain values must be distinct")
    if any(not isinstance(v, int) or v <= 0 for v in domain):
        raise InvalidConfig("domain values must be positive integers")
    return domain


@dataclass(frozen=True)
class TrialSpec:
    """One stimulus presentation: slot i of `values` is on-screen slot i."""

    mode: DisplayMode
    values: tuple[int, ...]
    correct_index: int

    def __post_init__(self):
        if not (2 <= len(self.values) <= 5):
            raise InvalidConfig(f"trial must present 2..5 values, got {len(self.values)}")
        if len(set(self.values)) != len(self.values):
            raise InvalidConfig("trial values must be distinct")
        if self.values[self.correct_index] != max(self.values):
            raise InvalidConfig("correct_index must point at the maximum value")


@dataclass(frozen=True)
class GameConfig:
    mode: DisplayMode = DisplayMode.DICE
    domain: tuple[int, ...] = DEFAULT_DOMAIN
    set_size: int = 2
    trials_per_game: int = 20
    score_boundaries: tuple[float, float] = (0.5, 0.8)
    inter_trial_delay_ms: int = 0
    long_press_threshold_ms: int = 1000
    background: str = "black"
    foreground: str = "green"
    bg_opacity: str = ".2"
    learner: str = "Subject"
    trainer: str = "Experimenter"
    feedback_vocabulary: dict = field(default_factory=lambda: dict(DEFAULT_VOCABULARY))

    def __post_init__(self):
        domain = normalize_domain(self.domain)
        object.__setattr__(self, "domain", domain)
        if not (2 <= self.set_size <= 5):
            raise InvalidConfig(f"set_size must be in [2,5], got {self.set_size}")
        if self.set_size > len(domain):
            raise InvalidConfig("set_size cannot exceed the domain cardinality")
        if self.trials_per_game < 1:
            raise InvalidConfig("trials_per_game must be >= 1")
        b1, b2 = self.score_boundaries
        if not (0 <= b1 <= b2 <= 1):
            raise InvalidConfig("score boundaries must satisfy 0 <= b1 <= b2 <= 1")
        if self.inter_trial_delay_ms < 0:
            raise InvalidConfig("inter_trial_delay_ms must be >= 0")
        if self.long_press_threshold_ms <= 0:
            raise InvalidConfig("long_press_threshold_ms must be > 0")

    def other_parameters(self) -> str:
        """The appearance settings string recorded verbatim in every log line."""
        values = ",".join(str(v) for v in self.domain)
        return (
            f"background {self.background}, foreground {self.foreground}, "
            f"bg opacity {self.bg_opacity}, Value Set [{values}]"
        )


def generate_trial(config: GameConfig, rng: random.Random,
                   mode: Optional[DisplayMode] = None) -> TrialSpec:
    """Draw a trial uniformly among all ordered set_size-tuples of distinct
    domain values (so the position of the maximum is uniform over slots)."""
    if config.set_size > len(config.domain):
        raise InvalidConfig("set_size cannot exceed the domain cardinality")
    values = tuple(rng.sample(config.domain, config.set_size))
    correct = max(range(len(values)), key=values.__getitem__)
    return TrialSpec(mode=mode or config.mode, values=values, correct_index=correct)


def evaluate_answer(trial: TrialSpec, chosen_slot: int,
                    display_time: datetime, answer_time: datetime) -> tuple[int, bool, int]:
    """Return (chosen_value, correction, answering_time_ms) for one answer.

    Answering time is measured from stimulus display, so configured
    inter-trial delays never leak into it.
    """
    if not (0 <= chosen_slot < len(trial.values)):
        raise SlotOutOfRange(f"slot {chosen_slot} outside 0..{len(trial.values) - 1}")
    if answer_time < display_time:
        raise InvalidConfig("answer_time precedes display_time")
    chosen_value = trial.values[chosen_slot]
    correction = chosen_slot == trial.correct_index
    answering_time_ms = round((answer_time - display_time).total_seconds() * 1000)
    return chosen_value, correction, answering_time_ms


def end_of_game_tier(correct: int, total: int, boundaries: tuple[float, float]) -> Tier:
    """Place a game score against the two boundaries (lower-inclusive)."""
    if total < 1 or not (0 <= correct <= total):
        raise InvalidConfig("need 0 <= correct <= total and total >= 1")
    b1, b2 = boundaries
    score = correct / total
    if score >= b2:
        return Tier.HIGH
    if score >= b1:
        return Tier.MID
    return Tier.LOW


# --- user inputs -----------------------------------------------------------

@dataclass(frozen=True)
class SelectMode:
    mode: DisplayMode


@dataclass(frozen=True)
class TouchSlot:
    slot: int


@dataclass(frozen=True)
class ExitButton:
    pass


@dataclass(frozen=True)
class LongPress:
    duration_ms: int


@dataclass(frozen=True)
class ContinuePlaying:
    pass


UserInput = object  # one of the five input dataclasses above


class Phase(Enum):
    MENU = "menu"
    IN_GAME = "in_game"
    SETTINGS = "settings"
    ENDED = "ended"


@dataclass
class SessionState:
    phase: Phase
    config: GameConfig
    mode: Optional[DisplayMode] = None
    trial_in_game: int = 0
    correct_in_game: int = 0
    test_no: int = 0  # last emitted test number; the next record gets test_no+1
    pending: Optional[TrialSpec] = None
    pending_display_time: Optional[datetime] = None


class Session:
    """Single-writer session driver.

    `clock` supplies wall time; inject a synthetic clock for replayable
    simulated sessions. The session records its RNG seed so every run can
    be replayed.
    """

    def __init__(self, config: GameConfig, seed: Optional[int] = None,
                 clock: Callable[[], datetime] = datetime.now):
        if seed is None:
            seed = random.SystemRandom().getrandbits(64)
        self.seed = seed
        self.rng = random.Random(seed)
        self.clock = clock
        self.state = SessionState(phase=Phase.MENU, config=config)
        self._events: list[FeedbackEvent] = []

    # -- event queue (one producer, any readers) --

    def drain_events(self) -> list[FeedbackEvent]:
        events, self._events = self._events, []
        return events

    def _emit(self, event: FeedbackEvent):
        self._events.append(event)

    def _now_ms(self) -> int:
        return int(self.clock().timestamp() * 1000)

    # -- transitions --

    def snapshot(self) -> SessionState:
        return replace(self.state)

    def step(self, user_input: UserInput) -> Optional[TrialRecord]:
        """Advance the state machine; returns a TrialRecord iff a trial was
        answered. Feedback events accumulate until drained."""
        state = self.state
        if isinstance(user_input, SelectMode):
            if state.phase not in (Phase.MENU, Phase.ENDED):
                raise IllegalTransition(f"SelectMode not legal in {state.phase}")
            return self._start_game(user_input.mode)
        if isinstance(user_input, ContinuePlaying):
            if state.phase is not Phase.ENDED:
                raise IllegalTransition(f"ContinuePlaying not legal in {state.phase}")
            return self._start_game(state.mode, announce=False)
        if isinstance(user_input, TouchSlot):
            if state.phase is not Phase.IN_GAME:
                raise IllegalTransition(f"TouchSlot not legal in {state.phase}")
            return self._answer(user_input.slot)
        if isinstance(user_input, ExitButton):
            if state.phase is Phase.IN_GAME:
                state.phase = Phase.MENU
                state.pending = None
                state.pending_display_time = None
                vocab = state.config.feedback_vocabulary
                self._emit(exit_feedback(vocab, self._now_ms()))
                return None
            if state.phase in (Phase.SETTINGS, Phase.ENDED):
                state.phase = Phase.MENU
                return None
            raise IllegalTransition(f"ExitButton not legal in {state.phase}")
        if isinstance(user_input, LongPress):
            if state.phase not in (Phase.MENU, Phase.IN_GAME):
                raise IllegalTransition(f"LongPress not legal in {state.phase}")
            if user_input.duration_ms >= state.config.long_press_threshold_ms:
                state.phase = Phase.SETTINGS
            return None
        raise IllegalTransition(f"unknown input {user_input!r}")

    def _start_game(self, mode: DisplayMode, announce: bool = True) -> None:
        state = self.state
        state.phase = Phase.IN_GAME
        state.mode = mode
        state.trial_in_game = 0
        state.correct_in_game = 0
        if announce:
            self._emit(session_started_feedback(mode.value, self._now_ms()))
        self._display_next()
        return None

    def _display_next(self):
        state = self.state
        display_time = self.clock()
        if state.test_no > 0 and state.config.inter_trial_delay_ms:
            display_time = display_time + timedelta(
                milliseconds=state.config.inter_trial_delay_ms)
        state.pending = generate_trial(state.config, self.rng, mode=state.mode)
        state.pending_display_time = display_time

    def _answer(self, slot: int) -> TrialRecord:
        state = self.state
        trial = state.pending
        assert trial is not None and state.pending_display_time is not None
        answer_time = self.clock()
        if answer_time < state.pending_display_time:
            answer_time = state.pending_display_time
        chosen_value, correction, answering_ms = evaluate_answer(
            trial, slot, state.pending_display_time, answer_time)
        state.test_no += 1
        state.trial_in_game += 1
        if correction:
            state.correct_in_game += 1
        record = TrialRecord(
            test_no=state.test_no,
            test_name=trial.mode.value,
            learner=state.config.learner,
            trainer=state.config.trainer,
            values=trial.values,
            value_selected=chosen_value,
            correction=correction,
            date=answer_time,
            answering_time_ms=answering_ms,
            other_parameters=state.config.other_parameters(),
        )
        vocab = state.config.feedback_vocabulary
        self._emit(feedback_for_answer(correction, vocab, self._now_ms()))
        if state.trial_in_game >= state.config.trials_per_game:
            tier = end_of_game_tier(state.correct_in_game,
                                    state.trial_in_game,
                                    state.config.score_boundaries)
            self._emit(end_of_game_feedback(tier, vocab, self._now_ms()))
            state.phase = Phase.ENDED
            state.pending = None
            state.pending_display_time = None
        else:
            self._display_next()
        return record
