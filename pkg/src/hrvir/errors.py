"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed textual input; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class UndecidableError(ValueError):
    """A question that cannot be settled from the declared data."""
