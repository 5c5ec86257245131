"""Exception hierarchy for avdiff.

All domain errors derive from :class:`AvdiffError` so the CLI can map them
to exit codes in one place (validation errors -> 1, solver failures -> 2).
"""


class AvdiffError(Exception):
    """Base class for all avdiff errors."""


class CoverageError(AvdiffError):
    """A registration series does not cover one or more required years."""

    def __init__(self, missing_years, context=""):
        self.missing_years = tuple(sorted(missing_years))
        years = ", ".join(str(y) for y in self.missing_years)
        msg = f"registration series missing year(s): {years}"
        if context:
            msg = f"{context}: {msg}"
        super().__init__(msg)


class SeriesParseError(AvdiffError):
    """A registration CSV could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(AvdiffError):
    """Invalid scenario configuration."""


class CalibrationError(AvdiffError):
    """Base class for calibration solver failures."""


class BracketError(CalibrationError):
    """The calibration target is not attainable within the q bounds."""


class ConvergenceError(CalibrationError):
    """The calibration solver did not converge within the iteration budget."""


class AnchorError(AvdiffError):
    """No rule yields a mass-market anchor volume for a cost curve."""
