class LatinError(ValueError):
    """Base class for rejected inputs."""


class NonSquare(LatinError):
    pass


class BadSymbol(LatinError):
    def __init__(self, r, c, value=None):
        self.r, self.c = r, c
        super().__init__(f"cell ({r},{c}) holds {value!r}, not a symbol in range")


class RowRepeat(LatinError):
    def __init__(self, r, s):
        self.r, self.s = r, s
        super().__init__(f"row {r} repeats symbol {s}")


class ColumnRepeat(LatinError):
    def __init__(self, c, s):
        self.c, self.s = c, s
        super().__init__(f"column {c} repeats symbol {s}")


class SizeMismatch(LatinError):
    pass


class OddOrder(LatinError):
    pass


class ForeignCell(LatinError):
    pass


class NotCirculant(LatinError):
    pass


class NotRowComplete(LatinError):
    pass


class InvalidPartition(LatinError):
    pass


class UncoveredCell(LatinError):
    pass


class ParseError(LatinError):
    pass


class InvalidGroup(LatinError):
    pass


class NotLatin(InvalidGroup):
    pass


class NoIdentity(InvalidGroup):
    pass


class NoInverse(InvalidGroup):
    def __init__(self, g):
        self.g = g
        super().__init__(f"element {g} has no inverse")


class NotAssociative(InvalidGroup):
    def __init__(self, a, b, c):
        self.triple = (a, b, c)
        super().__init__(f"({a}*{b})*{c} != {a}*({b}*{c})")


class OrderTooLarge(LatinError):
    pass


class Undecidable(LatinError):
    pass


class StructureViolation(RuntimeError):
    """A structural claim about a circulant failed (would be a counterexample)."""


class BudgetExhausted(RuntimeError):
    def __init__(self, lower, upper, result=None):
        self.lower, self.upper, self.result = lower, upper, result
        super().__init__(f"budget exhausted; chi in [{lower}, {upper}]")


class MethodInapplicable(LatinError):
    pass
