"""Statistical pipeline: accuracy grids with exact binomial tail tests,
pair-level summaries, and Pearson correlations.

The binomial tail is computed in log space (anchored term-ratio summation)
so p-values of order 1e-120 keep full relative precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from quantgame.errors import (
    DegenerateInput,
    DomainError,
    MixedSetSizeCell,
    NoData,
    UnexpectedValueOutsideDomain,
)
from quantgame.logfmt import TrialRecord

# Chance levels as the literal constants used in the published analysis;
# exact=True switches to 1/set_size.
CHANCE_LITERAL = {2: 0.5, 3: 0.33, 4: 0.25, 5: 0.2}


def chance_level(set_size: int, exact: bool = False) -> float:
    if exact:
        return 1.0 / set_size
    try:
        return CHANCE_LITERAL[set_size]
    except KeyError:
        raise DomainError(f"no chance level for set size {set_size}") from None


# --- exact binomial tail ----------------------------------------------------

def binomial_tail(k: int, n: int, p0: float) -> float:
    """P[X >= k] for X ~ Binomial(n, p0).

    Terms are summed relative to the largest in-range binomial term, in
    plain doubles, and scaled back through a single log-space anchor, so
    the relative error stays ~1e-13 even deep in the tail.
    """
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n, got k={k} n={n}")
    if not (0.0 < p0 < 1.0):
        raise DomainError(f"need 0 < p0 < 1, got {p0}")
    if k == 0:
        return 1.0
    log_p = math.log(p0)
    log_q = math.log1p(-p0)
    mode = int((n + 1) * p0)
    anchor = min(max(k, mode), n)
    log_anchor = (math.lgamma(n + 1) - math.lgamma(anchor + 1)
                  - math.lgamma(n - anchor + 1)
                  + anchor * log_p + (n - anchor) * log_q)
    odds = p0 / (1.0 - p0)
    total = 1.0
    # upward from the anchor: term(i+1)/term(i) = (n-i)/(i+1) * odds
    term = 1.0
    for i in range(anchor, n):
        term *= (n - i) / (i + 1) * odds
        total += term
        if term < total * 1e-20:
            break
    # downward to k: term(i-1)/term(i) = i/(n-i+1) / odds
    term = 1.0
    for i in range(anchor, k, -1):
        term *= i / (n - i + 1) / odds
        total += term
    log_tail = log_anchor + math.log(total)
    if log_tail >= 0.0:
        return 1.0
    return math.exp(log_tail)


def binomial_pmf(k: int, n: int, p0: float) -> float:
    """P[X = k], on the same log-space footing as binomial_tail."""
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n, got k={k} n={n}")
    if not (0.0 < p0 < 1.0):
        raise DomainError(f"need 0 < p0 < 1, got {p0}")
    return math.exp(math.lgamma(n + 1) - math.lgamma(k + 1)
                    - math.lgamma(n - k + 1)
                    + k * math.log(p0) + (n - k) * math.log1p(-p0))


# --- Pearson correlation ----------------------------------------------------

def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Product-moment correlation coefficient."""
    if len(xs) != len(ys):
        raise DomainError("sequences must have equal length")
    n = len(xs)
    if n < 2:
        raise DomainError("need at least two points")
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateInput("zero variance input")
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    r = sxy / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


# --- aggregation grid -------------------------------------------------------

MODE_COLUMNS = ("Dice", "Heap", "Discrete", "Disc", "Rectangle", "Continuous",
                "Total")

_WIRE_TO_COLUMN = {"dice": "Dice", "heap": "Heap", "disc": "Disc",
                   "rect": "Rectangle"}
_TYPE_OF = {"Dice": "Discrete", "Heap": "Discrete",
            "Disc": "Continuous", "Rectangle": "Continuous"}


@dataclass
class Cell:
    n: int = 0
    k: int = 0

    @property
    def accuracy(self) -> float:
        return self.k / self.n

    def p_value(self, p0: float) -> float:
        return binomial_tail(self.k, self.n, p0)


@dataclass
class StatsReport:
    set_size: int
    chance: float
    sessions: list[str]  # chronological order, excludes the "Total" row
    rows: dict  # session -> column -> Cell (missing column = no data)
    excluded_flagged: int = 0

    def cell(self, session: str, column: str) -> Optional[Cell]:
        return self.rows.get(session, {}).get(column)


def session_key(records: Sequence[TrialRecord]) -> str:
    """Session tag derived from the first record, e.g. '19,17h'."""
    if not records:
        raise NoData("cannot key an empty record sequence")
    first = min(records, key=lambda r: r.date)
    return f"{first.date.day},{first.date.hour:02d}h"


def aggregate(sessions: Iterable[tuple[str, Sequence[TrialRecord]]],
              set_size: Optional[int] = None,
              exact_chance: bool = False,
              include_flagged: bool = False) -> StatsReport:
    """Build the (session x mode/type/total) accuracy grid for one set size.

    `sessions` pairs a session tag with its records (one log = one session).
    With set_size=None the size is inferred and must be homogeneous.
    """
    session_order: list[str] = []
    rows: dict[str, dict[str, Cell]] = {}
    excluded = 0
    seen_sizes: set[int] = set()
    for tag, records in sessions:
        for record in records:
            if record.flagged and not include_flagged:
                excluded += 1
                continue
            size = len(record.values)
            if set_size is not None and size != set_size:
                continue
            seen_sizes.add(size)
            if len(seen_sizes) > 1:
                raise MixedSetSizeCell(
                    f"records mix set sizes {sorted(seen_sizes)}; "
                    "group by set size to keep one chance level per cell")
            if tag not in rows:
                rows[tag] = {}
                session_order.append(tag)
            mode_col = _WIRE_TO_COLUMN.get(record.test_name)
            if mode_col is None:
                raise DomainError(f"unknown display mode {record.test_name!r}")
            for column in (mode_col, _TYPE_OF[mode_col], "Total"):
                cell = rows[tag].setdefault(column, Cell())
                cell.n += 1
                cell.k += int(record.correction)
    if not seen_sizes:
        size = set_size if set_size is not None else 2
        return StatsReport(set_size=size,
                           chance=chance_level(size, exact_chance),
                           sessions=[], rows={}, excluded_flagged=excluded)
    size = seen_sizes.pop()
    # the grand-total row across sessions
    total_row: dict[str, Cell] = {}
    for tag in session_order:
        for column, cell in rows[tag].items():
            agg = total_row.setdefault(column, Cell())
            agg.n += cell.n
            agg.k += cell.k
    rows["Total"] = total_row
    return StatsReport(set_size=size, chance=chance_level(size, exact_chance),
                       sessions=session_order, rows=rows,
                       excluded_flagged=excluded)


# --- pair summaries and correlations ----------------------------------------

@dataclass
class PairSummary:
    low: int
    high: int
    n: int = 0
    k: int = 0

    @property
    def total(self) -> int:
        return self.low + self.high

    @property
    def difference(self) -> int:
        return self.high - self.low

    @property
    def ratio(self) -> Fraction:
        # smallest over largest; exact rational before any display rounding
        return Fraction(self.low, self.high)

    @property
    def accuracy(self) -> Optional[float]:
        return self.k / self.n if self.n else None


def pair_summaries(records: Iterable[TrialRecord],
                   domain: Sequence[int] = (1, 2, 3, 4, 5),
                   include_flagged: bool = False) -> list[PairSummary]:
    """One row per unordered domain pair, in (low, high) lexicographic order."""
    domain = tuple(sorted(domain))
    table = {(x, y): PairSummary(x, y)
             for i, x in enumerate(domain) for y in domain[i + 1:]}
    for record in records:
        if record.flagged and not include_flagged:
            continue
        if len(record.values) != 2:
            raise DomainError(
                f"pair summaries need set size 2, got {len(record.values)}")
        pair = (min(record.values), max(record.values))
        if pair not in table:
            raise UnexpectedValueOutsideDomain(
                f"pair {pair} outside domain {domain}")
        row = table[pair]
        row.n += 1
        row.k += int(record.correction)
    return [table[key] for key in sorted(table)]


CORRELATION_VARIABLES = ("Total", "Difference", "Ratio", "Accuracy")


@dataclass
class CorrelationReport:
    variables: tuple[str, ...]
    matrix: dict  # (var_a, var_b) -> r, symmetric with unit diagonal
    scatter: dict  # (var_a, var_b) -> list of (x, y) points, a < b

    def r(self, a: str, b: str) -> float:
        return self.matrix[(a, b)]


def correlation_report(pairs: Sequence[PairSummary]) -> CorrelationReport:
    """Pairwise Pearson matrix over Total/Difference/Ratio/Accuracy."""
    rows = [p for p in pairs if p.accuracy is not None]
    if len(rows) < 2:
        raise DegenerateInput("need at least two pairs with data")
    series = {
        "Total": [float(p.total) for p in rows],
        "Difference": [float(p.difference) for p in rows],
        "Ratio": [float(p.ratio) for p in rows],
        "Accuracy": [p.accuracy for p in rows],
    }
    matrix = {}
    scatter = {}
    for i, a in enumerate(CORRELATION_VARIABLES):
        for j, b in enumerate(CORRELATION_VARIABLES):
            if a == b:
                matrix[(a, b)] = 1.0
            elif (b, a) in matrix:
                matrix[(a, b)] = matrix[(b, a)]
            else:
                matrix[(a, b)] = pearson(series[a], series[b])
            if i < j:
                scatter[(a, b)] = list(zip(series[a], series[b]))
    return CorrelationReport(CORRELATION_VARIABLES, matrix, scatter)


# --- rendering ---------------------------------------------------------------

def _round_half_away(x: float) -> int:
    return int(math.floor(x + 0.5)) if x >= 0 else -int(math.floor(-x + 0.5))


def format_p_value(p: float) -> str:
    """One significant digit of mantissa, truncated: 1.95e-117 -> '1e-117'."""
    if p <= 0.0:
        return "0e0"
    exponent = math.floor(math.log10(p))
    mantissa = int(p / 10.0 ** exponent)
    if mantissa >= 10:  # floating point edge right at a power of ten
        mantissa = 1
        exponent += 1
    if mantissa < 1:
        mantissa = 9
        exponent -= 1
    return f"{mantissa}e{exponent}"


def format_cell(cell: Optional[Cell], chance: float) -> str:
    if cell is None or cell.n == 0:
        return "(no data)"
    pct = _round_half_away(cell.accuracy * 100.0)
    return f"{pct} ({format_p_value(cell.p_value(chance))})"


def render_report(report: StatsReport, fmt: str = "markdown") -> str:
    """Deterministic text rendering of the accuracy grid."""
    header = ("Session",) + MODE_COLUMNS
    body = []
    for tag in report.sessions + (["Total"] if report.rows else []):
        row = [tag] + [format_cell(report.cell(tag, col), report.chance)
                       for col in MODE_COLUMNS]
        body.append(row)
    lines = []
    if fmt == "markdown":
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + "|".join("---" for _ in header) + "|")
        for row in body:
            lines.append("| " + " | ".join(row) + " |")
    elif fmt == "csv":
        lines.append(",".join(header))
        for row in body:
            lines.append(",".join(f'"{cell}"' if "," in cell else cell
                                  for cell in row))
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    lines.append("")
    lines.append(f"set size: {report.set_size}; chance level: {report.chance}; "
                 f"flagged records excluded: {report.excluded_flagged}")
    return "\n".join(lines) + "\n"


def _truncate_2dp(x: Fraction) -> str:
    scaled = int(x * 100)  # truncation toward zero, matches published table
    whole, frac = divmod(scaled, 100)
    text = f"{whole}.{frac:02d}"
    # drop a single trailing zero ("0.20" -> "0.2") as printed
    return text[:-1] if text.endswith("0") and text[-2] != "." else text


def render_pair_table(pairs: Sequence[PairSummary]) -> str:
    lines = ["Value Set,Total,Difference,Ratio,Accuracy"]
    for p in pairs:
        acc = "(no data)" if p.accuracy is None else \
            f"{_round_half_away(p.accuracy * 100)}%"
        lines.append(f"{{{p.low},{p.high}}},{p.total},{p.difference},"
                     f"{_truncate_2dp(p.ratio)},{acc}")
    return "\n".join(lines) + "\n"


def render_correlation(report: CorrelationReport) -> str:
    """Correlation matrix plus scatter series, as CSV sections."""
    lines = ["variable," + ",".join(report.variables)]
    for a in report.variables:
        cells = [f"{report.matrix[(a, b)]:.4f}" for b in report.variables]
        lines.append(a + "," + ",".join(cells))
    lines.append("")
    lines.append("scatter pair,x,y")
    for (a, b), points in report.scatter.items():
        for x, y in points:
            lines.append(f"{a}/{b},{x:g},{y:g}")
    return "\n".join(lines) + "\n"
