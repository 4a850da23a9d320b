"""Exact chain-level computations with finite group presentations and plus constructions."""

from .errors import PlusctlError, ResourceExhausted, ValidationError
from .words import Presentation, Word, parse_presentation

__version__ = "0.1.0"

__all__ = ["PlusctlError", "Presentation", "ResourceExhausted", "ValidationError", "Word",
           "parse_presentation", "__version__"]
