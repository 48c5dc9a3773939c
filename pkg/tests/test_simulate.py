import random

import pytest

from quantgame.engine import DisplayMode, GameConfig, TrialSpec
from quantgame.errors import MissingPairEntry
from quantgame.feedback import KIND_GAME_ENDED, KIND_SESSION_STARTED
from quantgame.logfmt import parse_log_csv, parse_log_txt
from quantgame.simulate import (
    Perfect,
    RatioLogistic,
    RatioTable,
    SUBJECT1_PAIR_ACCURACY,
    UniformRandom,
    make_model,
    power_analysis,
    session_pvalue,
    simulate_session,
)


def trial(values):
    correct = max(range(len(values)), key=values.__getitem__)
    return TrialSpec(DisplayMode.DICE, tuple(values), correct)


def test_make_model_registry():
    assert isinstance(make_model("uniform"), UniformRandom)
    assert isinstance(make_model("perfect"), Perfect)
    assert isinstance(make_model("ratio-table"), RatioTable)
    assert isinstance(make_model("ratio-logistic"), RatioLogistic)
    with pytest.raises(ValueError):
        make_model("psychic")


def test_perfect_always_selects_maximum():
    rng = random.Random(0)
    model = Perfect()
    for _ in range(50):
        t = trial(rng.sample(range(1, 11), 3))
        assert t.values[model.choose(t, rng)] == max(t.values)


def test_uniform_random_hits_every_slot():
    rng = random.Random(0)
    model = UniformRandom()
    seen = {model.choose(trial([1, 2, 3]), rng) for _ in range(200)}
    assert seen == {0, 1, 2}


def test_ratio_table_accuracy_lookup():
    model = RatioTable()
    assert model.accuracy_for(trial([4, 5])) == SUBJECT1_PAIR_ACCURACY[(4, 5)]
    # top-two pair drives set sizes above 2
    assert model.accuracy_for(trial([1, 4, 5])) == \
        SUBJECT1_PAIR_ACCURACY[(4, 5)]
    with pytest.raises(MissingPairEntry):
        model.accuracy_for(trial([5, 9]))


def test_ratio_table_empirical_rate_tracks_table():
    rng = random.Random(7)
    model = RatioTable()
    t = trial([2, 5])
    hits = sum(model.choose(t, rng) == t.correct_index for _ in range(20000))
    assert hits / 20000 == pytest.approx(SUBJECT1_PAIR_ACCURACY[(2, 5)],
                                         abs=0.01)


def test_ratio_logistic_monotone_in_ratio():
    model = RatioLogistic()
    easy = model.p_correct(trial([1, 5]))
    hard = model.p_correct(trial([4, 5]))
    assert easy > hard
    assert 0.0 < hard < easy < 1.0


def test_simulate_session_produces_parseable_logs():
    config = GameConfig(mode=DisplayMode.HEAP, trials_per_game=20)
    result = simulate_session(RatioTable(), config, n_games=3, seed=101)
    assert len(result.records) == 60
    assert [r.test_no for r in result.records] == list(range(1, 61))
    assert parse_log_csv(result.csv).records == result.records
    assert parse_log_txt(result.txt).records == result.records
    kinds = [e.kind for e in result.events]
    assert kinds.count(KIND_SESSION_STARTED) == 1
    assert kinds.count(KIND_GAME_ENDED) == 3
    assert result.metadata["model"] == "ratio-table"
    assert result.metadata["trials"] == 60


def test_simulate_session_is_deterministic_per_seed():
    config = GameConfig(trials_per_game=10)
    a = simulate_session(UniformRandom(), config, seed=5)
    b = simulate_session(UniformRandom(), config, seed=5)
    c = simulate_session(UniformRandom(), config, seed=6)
    assert a.csv == b.csv
    assert a.csv != c.csv


def test_simulate_session_flags_top_two_approximation():
    config = GameConfig(set_size=3, trials_per_game=5)
    result = simulate_session(RatioTable(), config, seed=1)
    assert result.metadata["top_two_pair_approximation"] is True
    result2 = simulate_session(Perfect(), config, seed=1)
    assert result2.metadata["top_two_pair_approximation"] is False


def test_session_pvalue_bounds_and_perfect_signal():
    rng = random.Random(3)
    p = session_pvalue(UniformRandom(), GameConfig(), 50, rng)
    assert 0.0 < p <= 1.0
    p_perfect = session_pvalue(Perfect(), GameConfig(), 100, rng)
    assert p_perfect == pytest.approx(2.0 ** -100, rel=1e-10)


def test_power_analysis_monotone_for_strong_subject():
    points = power_analysis(RatioTable(), GameConfig(), [20, 100],
                            replicates=200, seed=17)
    assert [p.n_trials for p in points] == [20, 100]
    assert points[1].detection_rate >= points[0].detection_rate
    assert points[1].detection_rate > 0.95
    with pytest.raises(ValueError):
        power_analysis(Perfect(), GameConfig(), [10], alpha=1.5)
