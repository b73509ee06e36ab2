"""smellex: finding smell experiences in literary text.

A lexico-syntactic pattern DSL and matcher, an iterative bootstrapping
engine with a human-in-the-loop validation loop, and an evaluation
harness (inter-annotator agreement, precision-recall, paired
significance against a keyword baseline).
"""

__version__ = "0.1.0"

from .errors import (
    BootstrapError,
    CorpusError,
    EvaluationError,
    LexiconBindingError,
    PatternSyntaxError,
    SmellexError,
)

__all__ = [
    "BootstrapError",
    "CorpusError",
    "EvaluationError",
    "LexiconBindingError",
    "PatternSyntaxError",
    "SmellexError",
    "__version__",
]
