"""Exception hierarchy shared by every module."""


class BraidSimError(Exception):
    """Base class for library errors."""


class NotHermitian(BraidSimError, ValueError):
    pass


class NotSquare(BraidSimError, ValueError):
    pass


class ShapeMismatch(BraidSimError, ValueError):
    pass


class DegenerateControls(BraidSimError, ValueError):
    pass


class StepTooLarge(BraidSimError, ValueError):
    pass


class DetuningTooSmall(BraidSimError, ValueError):
    pass


class OutOfRange(BraidSimError, ValueError):
    pass


class EtaOutOfRange(BraidSimError, ValueError):
    pass


class NotNormalized(BraidSimError, ValueError):
    pass


class TiedPopulations(BraidSimError, ValueError):
    pass


class NotAPermutation(BraidSimError, ValueError):
    pass


class UnsupportedPair(BraidSimError, ValueError):
    pass


class SizeMismatch(BraidSimError, ValueError):
    pass


class TooLarge(BraidSimError, ValueError):
    pass


class SameLabel(BraidSimError, ValueError):
    pass
