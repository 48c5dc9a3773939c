"""Content-addressed, append-only store for session logs.

Raw log bytes are the ground truth: each upload is stored verbatim under
its sha256 and indexed by a metadata sidecar. Re-uploading identical bytes
is a no-op returning the same id. Both files are written via temp-file +
rename, so a killed ingest never leaves a partially visible log.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import asdict, dataclass
from datetime import datetime
from pathlib import Path
from typing import Optional

from quantgame.errors import NoData, UnrecognizedHeader
from quantgame.logfmt import ParsedLog, TrialRecord, parse_log
from quantgame.stats import (
    StatsReport,
    aggregate,
    correlation_report,
    pair_summaries,
    render_correlation,
    render_pair_table,
    render_report,
    session_key,
)


@dataclass
class StoredLogSummary:
    log_id: str
    subject: str
    experimenter: str
    device: str
    format: str
    received_at: str  # ISO timestamp
    records: int
    warnings: int
    status: str  # "ok" or "warnings"
    modes: list


class LogStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        (self.root / "objects").mkdir(parents=True, exist_ok=True)
        (self.root / "meta").mkdir(parents=True, exist_ok=True)

    def _object_path(self, log_id: str) -> Path:
        return self.root / "objects" / log_id

    def _meta_path(self, log_id: str) -> Path:
        return self.root / "meta" / (log_id + ".json")

    def _write_atomic(self, path: Path, data: bytes):
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def ingest(self, raw: bytes, subject: str, experimenter: str = "",
               device: str = "", fmt: str = "csv",
               received_at: Optional[datetime] = None) -> StoredLogSummary:
        """Parse, then store the payload atomically. Payloads that fail
        header recognition are rejected; parse warnings do not block."""
        if not raw:
            raise UnrecognizedHeader("empty payload")
        text = raw.decode("utf-8")
        parsed = parse_log(text, fmt)  # raises UnrecognizedHeader on garbage
        log_id = hashlib.sha256(raw).hexdigest()
        meta_path = self._meta_path(log_id)
        if meta_path.exists():  # idempotent replay
            return self._load_summary(log_id)
        summary = StoredLogSummary(
            log_id=log_id,
            subject=subject,
            experimenter=experimenter,
            device=device,
            format=fmt,
            received_at=(received_at or datetime.now()).isoformat(
                timespec="milliseconds"),
            records=len(parsed.records),
            warnings=len(parsed.warnings),
            status="warnings" if parsed.warnings else "ok",
            modes=sorted({r.test_name for r in parsed.records}),
        )
        # object first, sidecar last: a log becomes visible only once whole
        self._write_atomic(self._object_path(log_id), raw)
        self._write_atomic(meta_path,
                           json.dumps(asdict(summary), indent=1).encode())
        return summary

    def _load_summary(self, log_id: str) -> StoredLogSummary:
        with open(self._meta_path(log_id), "rb") as fh:
            return StoredLogSummary(**json.loads(fh.read()))

    def raw(self, log_id: str) -> bytes:
        path = self._object_path(log_id)
        if not path.exists():
            raise NoData(f"no stored log {log_id}")
        return path.read_bytes()

    def parsed(self, log_id: str) -> ParsedLog:
        summary = self._load_summary(log_id)
        return parse_log(self.raw(log_id).decode("utf-8"), summary.format)

    def query_logs(self, subject: Optional[str] = None,
                   date_from: Optional[str] = None,
                   date_to: Optional[str] = None,
                   mode: Optional[str] = None) -> list[StoredLogSummary]:
        """Stable listing ordered by (received_at, log_id)."""
        summaries = []
        for meta in (self.root / "meta").glob("*.json"):
            summary = self._load_summary(meta.stem)
            if subject is not None and summary.subject != subject:
                continue
            if date_from is not None and summary.received_at < date_from:
                continue
            if date_to is not None and summary.received_at > date_to:
                continue
            if mode is not None and mode not in summary.modes:
                continue
            summaries.append(summary)
        summaries.sort(key=lambda s: (s.received_at, s.log_id))
        return summaries

    def sessions_for(self, subject: str,
                     include_flagged: bool = False
                     ) -> list[tuple[str, list[TrialRecord]]]:
        """One (session tag, records) entry per stored log of the subject."""
        sessions = []
        for summary in self.query_logs(subject=subject):
            parsed = self.parsed(summary.log_id)
            if parsed.records:
                sessions.append((session_key(parsed.records), parsed.records))
        if not sessions:
            raise NoData(f"no stored logs for subject {subject!r}")
        return sessions

    def accuracy_report(self, subject: str, set_size: int = 2,
                        exact_chance: bool = False,
                        include_flagged: bool = False) -> StatsReport:
        return aggregate(self.sessions_for(subject), set_size=set_size,
                         exact_chance=exact_chance,
                         include_flagged=include_flagged)

    def render_accuracy_report(self, subject: str, set_size: int = 2,
                               fmt: str = "markdown") -> str:
        """Identical to the offline CLI analyzer over the same logs."""
        return render_report(self.accuracy_report(subject, set_size), fmt)

    def render_correlation_report(self, subject: str) -> str:
        records = [r for _, session in self.sessions_for(subject)
                   for r in session if len(r.values) == 2]
        pairs = pair_summaries(records)
        return render_pair_table(pairs) + "\n" + \
            render_correlation(correlation_report(pairs))
