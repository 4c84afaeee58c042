"""Finite, exhaustively checkable models of lex profunctors, enriched
categories over them, and the Set-based algebraic pipeline they generalise."""

from .errors import (BoundsError, CatkitError, CompositionError, InvariantError, LIMITS, ParseError,
                     PreconditionError, ResourceError, StabilizationError)

__version__ = "0.1.0"
