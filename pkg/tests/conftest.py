import random
from datetime import datetime
from pathlib import Path

import pytest

from quantgame.logfmt import TrialRecord

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def sample_log_text() -> str:
    return (DATA_DIR / "sample_session.csv").read_text(encoding="utf-8")


def random_record(rng: random.Random, test_no: int) -> TrialRecord:
    """A schema-valid record with randomized content (comma-free names;
    commas in names are not representable in the csv flavor)."""
    size = rng.randint(2, 5)
    values = tuple(rng.sample(range(1, 11), size))
    correct = rng.random() < 0.7
    selected = max(values) if correct else rng.choice(
        [v for v in values if v != max(values)])
    date = datetime(rng.randint(2000, 2030), rng.randint(1, 12),
                    rng.randint(1, 28), rng.randint(0, 23),
                    rng.randint(0, 59), rng.randint(0, 59),
                    rng.randint(0, 999) * 1000)
    return TrialRecord(
        test_no=test_no,
        test_name=rng.choice(["dice", "heap", "rect", "disc"]),
        learner=rng.choice(["Subject", "SubjectA", "Learner-2"]),
        trainer=rng.choice(["Experimenter", "Trainer B"]),
        values=values,
        value_selected=selected,
        correction=selected == max(values),
        date=date,
        answering_time_ms=rng.randint(0, 60000),
        other_parameters=rng.choice([
            "background black, foreground green, bg opacity .2, "
            "Value Set [1,2,3,4,5]",
            "background white, foreground red, bg opacity .5, "
            "Value Set [1,2,3]",
            "plain",
        ]),
    )
