class KnotWidthError(Exception):
    pass


class LexError(KnotWidthError):
    """Raised for a token that is not of the form u<i>, d<i>, x<i> or y<i>."""

    def __init__(self, token, position):
        self.token = token
        self.position = position
        super().__init__(f"bad token {token!r} at event {position}")


class ValidityError(KnotWidthError):
    """Raised when an event is out of range for the running strand count.

    ``position`` is the 1-based event position, or ``len(word) + 1`` when the
    word ends with strands still open.
    """

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"event {position}: {message}")


class NotApplicable(KnotWidthError):
    pass


class InvalidInput(KnotWidthError):
    pass


class InvalidSite(KnotWidthError):
    pass


class NotAKnot(KnotWidthError):
    pass
