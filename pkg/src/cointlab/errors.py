"""Exception hierarchy shared by all cointlab modules."""


class CointlabError(Exception):
    """Base class for every error raised by this package."""


# -- series construction and transforms -------------------------------------

class NonPositiveValue(CointlabError):
    """A log transform hit a value <= 0; carries the offending year."""

    def __init__(self, name: str, year: int, value: float):
        self.name = name
        self.year = year
        self.value = value
        super().__init__(f"series {name!r} has non-positive value {value} in {year}")


class SeriesTooShort(CointlabError):
    """Too few observations for the requested operation."""


class ZeroVariance(CointlabError):
    """Standardization or PCA on a column with no sample variance."""


# -- estimation --------------------------------------------------------------

class RankDeficient(CointlabError):
    """Design matrix is numerically rank deficient (collinear regressors)."""


class InsufficientObservations(CointlabError):
    """Not enough degrees of freedom to estimate the model."""


class BandwidthTooLarge(CointlabError):
    """HAC bandwidth at or beyond the sample length."""


class NotPositiveDefinite(CointlabError):
    """Matrix required to be positive definite is not."""


class InvalidParameters(CointlabError):
    """Invalid distribution parameters (e.g. non-positive degrees of freedom)."""


class InvalidRank(CointlabError):
    """Cointegration rank outside 1 <= r < d."""


class UnknownVariable(CointlabError):
    """Referenced variable name is not in the system."""


class TooFewColumns(CointlabError):
    """PCA needs at least two input columns."""


# -- critical value tables ---------------------------------------------------

class UnsupportedCombination(CointlabError):
    """No bundled critical values for the requested (family, spec, index, level)."""


# -- ingestion and pipeline --------------------------------------------------

class MissingColumn(CointlabError):
    """A column declared in the variable map is absent from the data file."""


class NonNumericCell(CointlabError):
    """A data cell failed to parse as a number; carries row/column context."""

    def __init__(self, row: int, column: str, raw: str):
        self.row = row
        self.column = column
        self.raw = raw
        super().__init__(f"non-numeric cell {raw!r} at row {row}, column {column!r}")


class GapInYears(CointlabError):
    """Year coverage is not contiguous; carries the missing year(s)."""

    def __init__(self, years):
        self.years = tuple(years)
        super().__init__(f"missing year(s): {', '.join(str(y) for y in self.years)}")


class IoFailure(CointlabError):
    """Filesystem failure while writing pipeline outputs."""


class PipelineStageError(CointlabError):
    """A pipeline stage failed; names the stage and chains the cause."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage!r} failed: {cause}")
