import hashlib
from datetime import datetime

import pytest

from quantgame.engine import DisplayMode, GameConfig
from quantgame.errors import NoData, UnrecognizedHeader
from quantgame.repository import LogStore
from quantgame.simulate import RatioTable, simulate_session


@pytest.fixture
def store(tmp_path):
    return LogStore(tmp_path / "store")


def corpus_text(seed=1, mode=DisplayMode.DICE, start=None):
    config = GameConfig(mode=mode, trials_per_game=20)
    kwargs = {"start": start} if start else {}
    return simulate_session(RatioTable(), config, n_games=2, seed=seed,
                            **kwargs).csv


def test_ingest_is_content_addressed(store):
    text = corpus_text()
    summary = store.ingest(text.encode(), subject="s1")
    assert summary.log_id == hashlib.sha256(text.encode()).hexdigest()
    assert summary.records == 40
    assert summary.status == "ok"
    assert store.raw(summary.log_id).decode() == text


def test_ingest_duplicate_is_idempotent(store):
    text = corpus_text()
    first = store.ingest(text.encode(), subject="s1")
    second = store.ingest(text.encode(), subject="ignored-on-replay")
    assert second.log_id == first.log_id
    assert second.subject == first.subject == "s1"
    assert len(store.query_logs()) == 1


def test_ingest_rejects_garbage(store):
    with pytest.raises(UnrecognizedHeader):
        store.ingest(b"", subject="s1")
    with pytest.raises(UnrecognizedHeader):
        store.ingest(b"hello world\n", subject="s1")


def test_ingest_keeps_logs_with_warnings(store, sample_log_text):
    broken = sample_log_text.replace("4,true", "4,false", 1)
    summary = store.ingest(broken.encode(), subject="s1")
    assert summary.status == "warnings"
    assert summary.warnings == 1
    parsed = store.parsed(summary.log_id)
    assert len(parsed.records) == 71


def test_query_filters_and_ordering(store):
    a = store.ingest(corpus_text(seed=1).encode(), subject="s1",
                     received_at=datetime(2022, 5, 19, 10, 0, 0))
    b = store.ingest(corpus_text(seed=2, mode=DisplayMode.RECT).encode(),
                     subject="s2",
                     received_at=datetime(2022, 5, 20, 10, 0, 0))
    c = store.ingest(corpus_text(seed=3).encode(), subject="s1",
                     received_at=datetime(2022, 5, 21, 10, 0, 0))
    ids = [s.log_id for s in store.query_logs()]
    assert ids == [a.log_id, b.log_id, c.log_id]
    assert [s.log_id for s in store.query_logs(subject="s1")] == \
        [a.log_id, c.log_id]
    assert [s.log_id for s in store.query_logs(mode="rect")] == [b.log_id]
    assert [s.log_id for s in store.query_logs(date_from="2022-05-20")] == \
        [b.log_id, c.log_id]
    assert [s.log_id for s in store.query_logs(date_to="2022-05-20")] == \
        [a.log_id]


def test_sessions_for_unknown_subject(store):
    with pytest.raises(NoData):
        store.sessions_for("nobody")


def test_accuracy_report_renders(store):
    store.ingest(corpus_text(seed=1).encode(), subject="s1")
    text = store.render_accuracy_report("s1", set_size=2)
    assert text.startswith("| Session |")
    assert "| Total |" in text
    report = store.accuracy_report("s1", set_size=2)
    assert report.rows["Total"]["Total"].n == 40


def test_correlation_report_renders(store):
    store.ingest(corpus_text(seed=1).encode(), subject="s1")
    store.ingest(corpus_text(seed=9,
                             start=datetime(2022, 5, 20, 9, 0, 0)).encode(),
                 subject="s1")
    text = store.render_correlation_report("s1")
    assert text.startswith("Value Set,Total,Difference,Ratio,Accuracy")
    assert "variable,Total,Difference,Ratio,Accuracy" in text


def test_raw_missing_object(store):
    with pytest.raises(NoData):
        store.raw("0" * 64)
