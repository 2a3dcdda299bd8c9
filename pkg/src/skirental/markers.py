"""Distinguished non-numeric values.

Two separate markers are used so that an unbounded season and an unbounded
competitive ratio can never be confused with each other, or with a float.
"""

import enum


class InfiniteSeason(enum.Enum):
    """The season that never ends (the adversary's atom)."""

    INFINITE = "infinite"

    def __repr__(self):
        return "INFINITE"


class Unbounded(enum.Enum):
    """A quantity that diverges, e.g. the sensitivity at alpha = 0 or 1."""

    UNBOUNDED = "inf"

    def __repr__(self):
        return "UNBOUNDED"


INFINITE = InfiniteSeason.INFINITE
UNBOUNDED = Unbounded.UNBOUNDED
