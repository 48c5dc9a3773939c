"""Exception types shared across the toolkit."""


class QuantGameError(Exception):
    """Base class for all toolkit errors."""


class InvalidConfig(QuantGameError):
    """A game/session configuration violates its invariants."""


class SlotOutOfRange(QuantGameError):
    """An answer referenced a slot index outside the displayed tuple."""


class IllegalTransition(QuantGameError):
    """A session input is not legal in the current phase."""


class MissingVocabularyEntry(QuantGameError):
    """The feedback vocabulary lacks a word for the requested event."""


class InvalidRecord(QuantGameError):
    """A trial record violates the log schema invariants."""


class UnrecognizedHeader(QuantGameError):
    """A log file does not start with a recognized header line."""


class MalformedLine(QuantGameError):
    """A csv log line could not be split into the expected fields."""

    def __init__(self, line_no: int, line: str, reason: str = ""):
        self.line_no = line_no
        self.line = line
        msg = f"line {line_no}: {reason or 'malformed'}: {line!r}"
        super().__init__(msg)


class MalformedBlock(QuantGameError):
    """A txt log block could not be parsed back into a record."""


class DomainError(QuantGameError):
    """Invalid input to a statistical routine."""


class DegenerateInput(QuantGameError):
    """A statistic is undefined for the given input (e.g. zero variance)."""


class MixedSetSizeCell(QuantGameError):
    """An aggregation cell would mix trials with different chance levels."""


class UnexpectedValueOutsideDomain(QuantGameError):
    """A trial presented a value outside the configured domain."""


class MissingPairEntry(QuantGameError):
    """A ratio-table subject model has no accuracy for the trial's pair."""


class NoData(QuantGameError):
    """No stored records match the request."""
