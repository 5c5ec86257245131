"""New passenger-car registration series for EU27+UK, 2015-2050.

The series is the exogenous demand backbone: every adoption share is a
fraction of the year's new registrations.  A bundled reference series is
shipped as package data; it was fitted once (smoothest annual series subject
to four period-sum constraints matching the bundled scenario market
potentials, year-over-year changes bounded by 3%, and the two calibration
fixed points) and is loaded verbatim at runtime.
"""

import csv
import dataclasses
import importlib.resources

from .errors import CoverageError, SeriesParseError

__all__ = ["RegistrationSeries", "load_registrations", "build_reference_series"]

CSV_HEADER = ("year", "new_registrations")


@dataclasses.dataclass(frozen=True)
class RegistrationSeries:
    """Contiguous annual registration counts, all strictly positive."""

    years: tuple[int, ...]
    counts: tuple[float, ...]

    def __post_init__(self):
        if not self.years:
            raise ValueError("registration series is empty")
        if len(self.years) != len(self.counts):
            raise ValueError("years and counts differ in length")
        gaps = [
            y
            for y in range(self.years[0], self.years[-1] + 1)
            if y not in set(self.years)
        ]
        if list(self.years) != sorted(self.years) or len(set(self.years)) != len(
            self.years
        ):
            raise ValueError("years must be strictly increasing")
        if gaps:
            raise CoverageError(gaps, context="series has gaps")
        bad = [y for y, c in zip(self.years, self.counts) if not c > 0]
        if bad:
            raise ValueError(f"non-positive registration count in year(s) {bad}")

    @classmethod
    def from_mapping(cls, mapping):
        years = tuple(sorted(mapping))
        return cls(years=years, counts=tuple(float(mapping[y]) for y in years))

    @property
    def first_year(self):
        return self.years[0]

    @property
    def last_year(self):
        return self.years[-1]

    def __contains__(self, year):
        return self.first_year <= year <= self.last_year

    def __getitem__(self, year):
        if year not in self:
            raise CoverageError([year])
        return self.counts[year - self.first_year]

    def __len__(self):
        return len(self.years)

    def items(self):
        return zip(self.years, self.counts)

    def require_coverage(self, start, end, context=""):
        missing = [y for y in range(start, end + 1) if y not in self]
        if missing:
            raise CoverageError(missing, context=context)

    def total(self, start, end):
        """Sum of registrations over the inclusive year range."""
        self.require_coverage(start, end, context=f"total over {start}-{end}")
        return sum(self[y] for y in range(start, end + 1))


def _parse_csv(lines):
    rows = {}
    header_seen = False
    for lineno, row in enumerate(csv.reader(lines), start=1):
        if not row or row[0].startswith("#"):
            continue
        if not header_seen:
            if tuple(cell.strip() for cell in row) != CSV_HEADER:
                raise SeriesParseError(
                    f"expected header {','.join(CSV_HEADER)!r}, got {','.join(row)!r}",
                    line=lineno,
                )
            header_seen = True
            continue
        if len(row) != 2:
            raise SeriesParseError(f"expected 2 columns, got {len(row)}", line=lineno)
        try:
            year = int(row[0])
        except ValueError:
            raise SeriesParseError(f"bad year {row[0]!r}", line=lineno) from None
        try:
            count = float(row[1])
        except ValueError:
            raise SeriesParseError(f"bad count {row[1]!r}", line=lineno) from None
        if year in rows:
            raise SeriesParseError(f"duplicate year {year}", line=lineno)
        if not count > 0:
            raise SeriesParseError(
                f"non-positive registration count {row[1]} for {year}", line=lineno
            )
        rows[year] = count
    if not header_seen:
        raise SeriesParseError("file has no header row")
    if not rows:
        raise SeriesParseError("file has no data rows")
    return RegistrationSeries.from_mapping(rows)


def load_registrations(path):
    """Load and validate a two-column ``year,new_registrations`` CSV.

    Lines starting with ``#`` are ignored (emitted files carry a manifest
    comment).  Rejects missing/extra columns, duplicate or gap years and
    non-positive counts, reporting the offending line or year.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        return _parse_csv(fh)


def reference_series_bytes():
    """Raw bytes of the bundled reference series (used for input hashing)."""
    return (
        importlib.resources.files("avdiff")
        .joinpath("data/reference_registrations.csv")
        .read_bytes()
    )


def build_reference_series():
    """The bundled EU27+UK reference registration series, 2015-2050."""
    text = reference_series_bytes().decode("utf-8")
    return _parse_csv(text.splitlines())
