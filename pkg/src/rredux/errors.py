"""Error types raised while ingesting and validating input data."""


class DataError(Exception):
    """Base class for problems with input data (parse, schema, validation)."""


class ParseError(DataError):
    """Structurally malformed CSV, e.g. a ragged row."""


class SchemaError(DataError):
    """Unusable header or empty input."""


class ValidationError(DataError):
    """Well-formed input containing unacceptable cell values."""
