"""Exception types raised by the ilfs pipeline.

Every error carries a stable class name; the CLI prints it as
``error:<Name>:<message>``.
"""


class IlfsError(Exception):
    """Base class for all pipeline errors."""

    @property
    def name(self):
        return type(self).__name__


class EmptyDataset(IlfsError):
    pass


class MissingColumn(IlfsError):
    pass


class ParseError(IlfsError):
    def __init__(self, row, col, detail=""):
        self.row = row
        self.col = col
        msg = f"row {row}, column {col!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class SingleClass(IlfsError):
    pass


class OutOfRange(IlfsError):
    pass


class DegenerateCounts(IlfsError):
    pass


class SingularMatrix(IlfsError):
    pass


class BudgetExceeded(IlfsError):
    pass


class EmptySelection(IlfsError):
    pass


class InvalidSpec(IlfsError, ValueError):
    pass


class NoConvergence(RuntimeWarning):
    """Power iteration hit its iteration cap; the best estimate is still returned."""
