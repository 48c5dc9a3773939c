"""Masked-protocol feedback events.

These events are everything the experimenter is allowed to hear. No
variant ever carries stimulus values, slot positions or the correct
index: only post-answer correctness and game-level outcomes, so the
experimenter cannot cue the subject even involuntarily.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from quantgame.errors import MissingVocabularyEntry

if TYPE_CHECKING:  # pragma: no cover
    from quantgame.engine import Tier

KIND_SESSION_STARTED = "session_started"
KIND_TRIAL_CORRECT = "trial_correct"
KIND_TRIAL_INCORRECT = "trial_incorrect"
KIND_GAME_ENDED = "game_ended"
KIND_EXIT_REQUESTED = "exit_requested"


@dataclass(frozen=True)
class FeedbackEvent:
    kind: str
    spoken_word: str
    timestamp_ms: int
    tier: str | None = None  # set only for game_ended events

    def serialize(self) -> str:
        """One event per line: `timestamp kind word`."""
        kind = self.kind if self.tier is None else f"{self.kind}({self.tier})"
        return f"{self.timestamp_ms} {kind} {self.spoken_word}"


def _word(vocabulary: dict, key: str) -> str:
    try:
        return vocabulary[key]
    except KeyError:
        raise MissingVocabularyEntry(f"no word configured for {key!r}") from None


def feedback_for_answer(correction: bool, vocabulary: dict,
                        timestamp_ms: int) -> FeedbackEvent:
    if correction:
        return FeedbackEvent(KIND_TRIAL_CORRECT, _word(vocabulary, "correct"),
                             timestamp_ms)
    return FeedbackEvent(KIND_TRIAL_INCORRECT, _word(vocabulary, "incorrect"),
                         timestamp_ms)


def end_of_game_feedback(tier: "Tier", vocabulary: dict,
                         timestamp_ms: int) -> FeedbackEvent:
    return FeedbackEvent(KIND_GAME_ENDED, _word(vocabulary, tier.value),
                         timestamp_ms, tier=tier.value)


def session_started_feedback(mode_name: str, timestamp_ms: int) -> FeedbackEvent:
    # The mode name reveals nothing about which slot holds the maximum.
    return FeedbackEvent(KIND_SESSION_STARTED, mode_name, timestamp_ms)


def exit_feedback(vocabulary: dict, timestamp_ms: int) -> FeedbackEvent:
    return FeedbackEvent(KIND_EXIT_REQUESTED, _word(vocabulary, "exit"),
                         timestamp_ms)
