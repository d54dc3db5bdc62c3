"""Exception hierarchy shared across the toolkit.

Exit-code mapping used by the CLI: usage errors exit 2, data errors 3,
numerical errors 4.
"""


class LockplanError(Exception):
    exit_code = 1


class UsageError(LockplanError):
    exit_code = 2


class DataError(LockplanError):
    exit_code = 3


class NumericalError(LockplanError):
    exit_code = 4


class MalformedInput(DataError):
    """Input stream is not valid CSV/JSON in the declared format."""


class NonMonotoneSeries(DataError):
    """A cumulative count decreases somewhere in the series."""


class GappedDates(DataError):
    """A day is missing from the daily series (gaps are never interpolated)."""


class WindowOutOfRange(DataError):
    """Requested analysis window is not contained in the series."""


class NegativeActive(DataError):
    """Recovered + deceased exceeds confirmed on some date."""


class MissingTests(DataError):
    """Operation needs the tests column and the series does not carry it."""


class ZeroTests(DataError):
    """No tests were performed inside the requested window."""


class InsufficientData(DataError):
    """Series is too short for the requested window/degree."""


class SingularSystem(NumericalError):
    """Normal equations are numerically singular; refusing to regularize."""


class MissingModel(UsageError):
    """A rate cap is set but no fitted model for that rate was supplied."""


class BeforeProfileStart(DataError):
    """Capacity queried before the first profile segment begins."""


class ZeroActive(DataError):
    """Per-case factor estimation needs a nonzero active count."""
