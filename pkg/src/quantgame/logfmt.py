"""Bit-exact writer and parser for the trial log, in .csv and .txt flavors.

The .csv flavor reproduces the original application's export line by line,
including its quirks: the header's stray spaces before two of the commas,
value slots joined by bare commas with empty fields for unused slots, and
the `Other Parameters` tail that itself contains commas (so a line is split
into exactly 13 leading comma-fields and the rest is rejoined verbatim).

Timestamps render as `[YYYY-MM-DD HH:MM(SS.m)]` where the fraction is the
millisecond count written as a plain unpadded integer (981 -> ".981",
70 -> ".70", 6 -> ".6"), which is the only rule consistent with every
published sample line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from datetime import datetime

from quantgame.errors import (
    InvalidRecord,
    MalformedBlock,
    MalformedLine,
    UnrecognizedHeader,
)

CSV_HEADER = (
    "Test no, Test Name, Learner, Trainer, C_0, C_1, C_2, C_3, C_4, "
    "Value selected , Correction , Date, Answering Time (ms), Other Parameters"
)

_HEADER_TOKENS = tuple(tok.strip() for tok in CSV_HEADER.split(","))

_TS_RE = re.compile(
    r"^\[(\d{4})-(\d{2})-(\d{2}) (\d{2}):(\d{2})\((\d{2})\.(\d{1,3})\)\]$")


@dataclass
class TrialRecord:
    """One answered trial; houses every column of a log line."""

    test_no: int
    test_name: str
    learner: str
    trainer: str
    values: tuple[int, ...]  # C_0.. in on-screen order, 2..5 entries
    value_selected: int
    correction: bool
    date: datetime  # wall clock, millisecond precision
    answering_time_ms: int
    other_parameters: str = ""
    flagged: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class LogWarning:
    line_no: int
    message: str
    line: str


@dataclass
class ParsedLog:
    records: list[TrialRecord]
    warnings: list[LogWarning]


def validate_record(record: TrialRecord) -> None:
    """Raise InvalidRecord if the record breaks the log schema invariants."""
    if record.test_no < 1:
        raise InvalidRecord(f"test_no must be positive, got {record.test_no}")
    if not (2 <= len(record.values) <= 5):
        raise InvalidRecord(f"record must hold 2..5 values, got {len(record.values)}")
    if record.value_selected not in record.values:
        raise InvalidRecord(
            f"value_selected {record.value_selected} not among {record.values}")
    if record.correction != (record.value_selected == max(record.values)):
        raise InvalidRecord("correction contradicts the values")
    if record.answering_time_ms < 0:
        raise InvalidRecord("answering_time_ms must be >= 0")


# --- timestamp codec --------------------------------------------------------

def format_timestamp(dt: datetime) -> str:
    millis = dt.microsecond // 1000
    return f"[{dt:%Y-%m-%d} {dt:%H:%M}({dt.second:02d}.{millis})]"


def parse_timestamp(text: str) -> datetime:
    m = _TS_RE.match(text)
    if not m:
        raise InvalidRecord(f"unparseable timestamp {text!r}")
    year, month, day, hour, minute, second, frac = m.groups()
    millis = int(frac)
    if millis > 999:
        raise InvalidRecord(f"millisecond field out of range in {text!r}")
    return datetime(int(year), int(month), int(day), int(hour), int(minute),
                    int(second), millis * 1000)


# --- csv flavor -------------------------------------------------------------

def format_header_csv() -> str:
    return CSV_HEADER


def format_record_csv(record: TrialRecord) -> str:
    validate_record(record)
    slots = [str(v) for v in record.values] + [""] * (5 - len(record.values))
    correction = "true" if record.correction else "false"
    return ", ".join([
        str(record.test_no),
        record.test_name,
        record.learner,
        record.trainer,
        ",".join(slots),
        f"{record.value_selected},{correction}",
        format_timestamp(record.date),
        str(record.answering_time_ms),
        record.other_parameters,
    ])


def format_log_csv(records) -> str:
    lines = [format_header_csv()]
    lines.extend(format_record_csv(r) for r in records)
    return "\n".join(lines) + "\n"


def _header_matches(line: str) -> bool:
    if line == CSV_HEADER:
        return True
    # tolerate whitespace-normalized headers from cleaned files
    return tuple(tok.strip() for tok in line.split(",")) == _HEADER_TOKENS


def _parse_bool(text: str, line_no: int, line: str) -> bool:
    if text == "true":
        return True
    if text == "false":
        return False
    raise MalformedLine(line_no, line, f"bad correction field {text!r}")


def parse_log_csv(text: str) -> ParsedLog:
    """Parse a .csv log. Lines whose correction field contradicts the values
    (or whose selected value is absent) are kept but flagged as warnings."""
    lines = text.splitlines()
    if not lines or not _header_matches(lines[0].rstrip("\r")):
        raise UnrecognizedHeader("log does not start with a recognized header")
    records: list[TrialRecord] = []
    warnings: list[LogWarning] = []
    for line_no, raw in enumerate(lines[1:], start=2):
        line = raw.rstrip("\r")
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) < 14:
            raise MalformedLine(line_no, line, "fewer than 14 comma-fields")
        head = [p.strip() for p in parts[:13]]
        other = ",".join(parts[13:])
        if other.startswith(" "):
            other = other[1:]
        try:
            test_no = int(head[0])
            slots = head[4:9]
            present = [s for s in slots if s]
            if any(s for s in slots[len(present):]):
                raise ValueError("value slots not contiguous from C_0")
            values = tuple(int(s) for s in present)
            if not (2 <= len(values) <= 5):
                raise ValueError(f"{len(values)} value slots filled")
            value_selected = int(head[9])
            correction = _parse_bool(head[10], line_no, line)
            date = parse_timestamp(head[11])
            answering_ms = int(head[12])
        except MalformedLine:
            raise
        except (ValueError, InvalidRecord) as exc:
            raise MalformedLine(line_no, line, str(exc)) from None
        record = TrialRecord(
            test_no=test_no, test_name=head[1], learner=head[2], trainer=head[3],
            values=values, value_selected=value_selected, correction=correction,
            date=date, answering_time_ms=answering_ms, other_parameters=other)
        if value_selected not in values:
            record.flagged = True
            warnings.append(LogWarning(
                line_no, f"value selected {value_selected} not among {values}", line))
        elif correction != (value_selected == max(values)):
            record.flagged = True
            warnings.append(LogWarning(
                line_no, "correction contradicts the values", line))
        records.append(record)
    return ParsedLog(records=records, warnings=warnings)


# --- txt flavor -------------------------------------------------------------

_TXT_LABELS = (
    "Test no", "Test Name", "Learner", "Trainer",
    "C_0", "C_1", "C_2", "C_3", "C_4",
    "Value selected", "Correction", "Date", "Answering Time (ms)",
    "Other Parameters",
)


def format_record_txt(record: TrialRecord) -> str:
    validate_record(record)
    slots = [str(v) for v in record.values] + [""] * (5 - len(record.values))
    fields = [
        str(record.test_no), record.test_name, record.learner, record.trainer,
        *slots,
        str(record.value_selected),
        "true" if record.correction else "false",
        format_timestamp(record.date),
        str(record.answering_time_ms),
        record.other_parameters,
    ]
    lines = []
    for label, value in zip(_TXT_LABELS, fields):
        lines.append(f"{label}: {value}" if value else f"{label}:")
    return "\n".join(lines)


def format_log_txt(records) -> str:
    return "\n\n".join(format_record_txt(r) for r in records) + "\n"


def _record_from_txt_block(block: str) -> TrialRecord:
    fields: dict[str, str] = {}
    for line in block.splitlines():
        if not line.strip():
            continue
        label, sep, value = line.partition(":")
        if not sep:
            raise MalformedBlock(f"line without label separator: {line!r}")
        fields[label.strip()] = value.strip()
    missing = [label for label in _TXT_LABELS if label not in fields]
    if missing:
        raise MalformedBlock(f"missing fields {missing} in block {block!r}")
    slots = [fields[f"C_{i}"] for i in range(5)]
    present = [s for s in slots if s]
    if any(s for s in slots[len(present):]):
        raise MalformedBlock("value slots not contiguous from C_0")
    try:
        values = tuple(int(s) for s in present)
        correction_text = fields["Correction"]
        if correction_text not in ("true", "false"):
            raise ValueError(f"bad correction {correction_text!r}")
        return TrialRecord(
            test_no=int(fields["Test no"]),
            test_name=fields["Test Name"],
            learner=fields["Learner"],
            trainer=fields["Trainer"],
            values=values,
            value_selected=int(fields["Value selected"]),
            correction=correction_text == "true",
            date=parse_timestamp(fields["Date"]),
            answering_time_ms=int(fields["Answering Time (ms)"]),
            other_parameters=fields["Other Parameters"],
        )
    except (ValueError, InvalidRecord) as exc:
        raise MalformedBlock(str(exc)) from None


def parse_log_txt(text: str) -> ParsedLog:
    records: list[TrialRecord] = []
    warnings: list[LogWarning] = []
    for block in re.split(r"\n\s*\n", text.strip()):
        if not block.strip():
            continue
        record = _record_from_txt_block(block)
        if record.value_selected not in record.values:
            record.flagged = True
            warnings.append(LogWarning(0, "value selected not among values", block))
        elif record.correction != (record.value_selected == max(record.values)):
            record.flagged = True
            warnings.append(LogWarning(0, "correction contradicts the values", block))
        records.append(record)
    if not records:
        raise MalformedBlock("no record blocks found")
    return ParsedLog(records=records, warnings=warnings)


def parse_log(text: str, fmt: str = "csv") -> ParsedLog:
    if fmt == "csv":
        return parse_log_csv(text)
    if fmt == "txt":
        return parse_log_txt(text)
    raise ValueError(f"unknown log format {fmt!r}")
