from __future__ import annotations


class PolyfacesError(ValueError):
    """Base class for every error raised by the library."""


class ParseError(PolyfacesError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class InvariantError(PolyfacesError):
    def __init__(self, invariant: str, detail: str = ""):
        msg = f"invariant violated: {invariant}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.invariant = invariant
        self.detail = detail


class PreconditionError(PolyfacesError):
    pass


class CapExceeded(PolyfacesError):
    pass
