"""Shared exception hierarchy.

Everything the library raises for bad input or bad state derives from
SmellexError, so the CLI can map library failures to exit code 1 and keep
genuine bugs loud.
"""


class SmellexError(Exception):
    pass


class CorpusError(SmellexError):
    """Malformed corpus/keyword/gold files, bad splits."""


class PatternSyntaxError(SmellexError):
    """Pattern DSL parse failure.  Carries a 1-based column offset."""

    def __init__(self, message: str, column: int):
        super().__init__(message)
        self.column = column

    def __str__(self) -> str:
        return "%s (column %d)" % (self.args[0], self.column)


class LexiconBindingError(SmellexError):
    """A pattern references a synonym group the lexicon does not define."""


class BootstrapError(SmellexError):
    """Cycle state machine violations (empty lexicon, bad acceptance, ...)."""


class EvaluationError(SmellexError):
    """Bad evaluation inputs (label length mismatch, unknown tags, ...)."""
