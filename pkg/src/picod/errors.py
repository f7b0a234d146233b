"""Exception types shared across the toolkit."""


class PicodError(Exception):
    """Base class for all toolkit errors."""


class CapExceeded(PicodError):
    """A search or enumeration would exceed its configured cap.

    Carries the exact size that was refused so callers can report it or
    rerun with a deliberately raised cap.
    """

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class FieldTooSmall(PicodError):
    """The requested field cannot host the requested MDS matrix."""


class SearchOverflow(PicodError):
    """An exact search ran out of node budget before reaching an answer.

    Distinct from a negative answer: the search neither found a witness nor
    proved that none exists.
    """


class NotAFactor(PicodError):
    """An edge selection does not cover every vertex exactly once."""
