"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed ring spec or element literal.

    ``position`` is the 0-based offset into ``source`` where parsing failed.
    """

    def __init__(self, message, source="", position=None):
        self.message = message
        self.source = source
        self.position = position
        super().__init__(str(self))

    def __str__(self):
        if self.position is None:
            return self.message
        return f"{self.message} at position {self.position} in {self.source!r}"


class NotInvertibleError(ArithmeticError):
    pass


class NotDivisibleError(ArithmeticError):
    pass


class HomomorphismError(ValueError):
    pass
