"""Exception hierarchy and global resource limits."""

import os
from dataclasses import dataclass


class CatkitError(Exception):
    pass


class CompositionError(CatkitError):
    """Domain/codomain mismatch when composing."""


class BoundsError(CatkitError, IndexError):
    pass


class ResourceError(CatkitError):
    """An enumeration or construction exceeded a configured bound."""


class StabilizationError(ResourceError):
    """Free-algebra tabulation did not close up within the depth bound."""


class PreconditionError(CatkitError):
    pass


class InvariantError(CatkitError):
    """Internal invariant violated; signals a bug rather than bad input."""


class ParseError(CatkitError):
    pass


@dataclass
class Limits:
    max_set_size: int = 10**5
    max_candidates: int = 10**7


def _initial_limits() -> Limits:
    lim = Limits()
    env = os.environ.get("CATKIT_MAX_CANDIDATES")
    if env:
        lim.max_candidates = int(env)
    return lim


LIMITS = _initial_limits()


def check_size(n: int, what: str = "set") -> int:
    if n > LIMITS.max_set_size:
        raise ResourceError(f"{what} of size {n} exceeds max_set_size={LIMITS.max_set_size}")
    return n


def check_candidates(n: int, what: str = "enumeration") -> int:
    if n > LIMITS.max_candidates:
        raise ResourceError(f"{what} needs {n} candidates, cap is {LIMITS.max_candidates}")
    return n
