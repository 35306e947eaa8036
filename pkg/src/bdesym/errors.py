"""Exception hierarchy shared by all modules."""


class BDEError(Exception):
    pass


class NotRealValued(BDEError, ValueError):
    pass


class InfiniteGroup(BDEError, ValueError):
    pass


class NotAdmissible(BDEError, ValueError):
    pass


class NotIndexTwo(NotAdmissible):
    pass


class NotNormal(NotAdmissible):
    pass


class NotInGroup(BDEError, ValueError):
    pass


class NotExactlyRepresentable(BDEError, ArithmeticError):
    """A root of unity outside {1, i, -1, -i} would be needed."""


class NotInPlusModule(BDEError, ValueError):
    pass


class NotMorse(BDEError, ValueError):
    pass


class RowNotInTable(BDEError, KeyError):
    pass


class DegenerateBDE(BDEError, ValueError):
    pass


class Degenerate(BDEError, ValueError):
    """Discriminant is not positive at the requested point."""


class Undefined(BDEError, ValueError):
    """All three coefficients vanish at the requested point."""


class Inconsistent(BDEError, RuntimeError):
    pass


class NoSamples(BDEError, RuntimeError):
    pass


class PolySyntaxError(BDEError, SyntaxError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text_input = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class NegativeExponent(PolySyntaxError):
    pass


class ZeroDenominator(PolySyntaxError, ZeroDivisionError):
    pass


class GroupSyntaxError(BDEError, SyntaxError):
    pass
