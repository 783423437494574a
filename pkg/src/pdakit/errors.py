"""Exception hierarchy shared by every pdakit module."""


class PdaKitError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(PdaKitError, ValueError):
    pass


class RankError(PdaKitError, ValueError):
    pass


class OverflowCountError(PdaKitError, OverflowError):
    """An overflow-marked count was used where an exact size is needed."""


class InvalidPdaError(PdaKitError, ValueError):
    pass


class MalformedPdaError(PdaKitError, ValueError):
    """The grid is not a rectangular array of stars and positive integers."""


class ParseError(PdaKitError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class GraphError(PdaKitError, ValueError):
    pass


class GappedColorsError(GraphError):
    pass


class SizeCapError(PdaKitError, ValueError):
    pass


class MaterializationError(PdaKitError, MemoryError):
    pass


class DivisibilityError(PdaKitError, ValueError):
    pass


class DemandError(PdaKitError, ValueError):
    pass


class MissingCacheEntryError(PdaKitError, KeyError):
    pass
