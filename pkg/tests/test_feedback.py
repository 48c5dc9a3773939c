import pytest

from quantgame.engine import DEFAULT_VOCABULARY, Tier
from quantgame.errors import MissingVocabularyEntry
from quantgame.feedback import (
    FeedbackEvent,
    end_of_game_feedback,
    exit_feedback,
    feedback_for_answer,
    session_started_feedback,
)


def test_answer_feedback_words():
    correct = feedback_for_answer(True, DEFAULT_VOCABULARY, 1000)
    incorrect = feedback_for_answer(False, DEFAULT_VOCABULARY, 1001)
    assert (correct.kind, correct.spoken_word) == ("trial_correct", "good")
    assert (incorrect.kind, incorrect.spoken_word) == ("trial_incorrect", "no")


def test_end_of_game_feedback_carries_tier():
    event = end_of_game_feedback(Tier.HIGH, DEFAULT_VOCABULARY, 5)
    assert event.tier == "high"
    assert event.spoken_word == "great"
    assert event.serialize() == "5 game_ended(high) great"


def test_serialize_format():
    assert FeedbackEvent("trial_correct", "good", 1652979738000).serialize() \
        == "1652979738000 trial_correct good"


def test_session_started_names_the_mode_only():
    event = session_started_feedback("dice", 7)
    assert event.serialize() == "7 session_started dice"


def test_exit_feedback_word():
    assert exit_feedback(DEFAULT_VOCABULARY, 3).spoken_word == "break"


def test_missing_vocabulary_entry():
    with pytest.raises(MissingVocabularyEntry):
        feedback_for_answer(True, {}, 0)
    with pytest.raises(MissingVocabularyEntry):
        end_of_game_feedback(Tier.LOW, {"correct": "x"}, 0)


def test_custom_vocabulary_is_used():
    vocab = dict(DEFAULT_VOCABULARY, correct="yes")
    assert feedback_for_answer(True, vocab, 0).spoken_word == "yes"
