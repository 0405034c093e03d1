"""Exception hierarchy shared by all rainbowbench modules."""


class RainbowError(ValueError):
    """Base class for every error raised by this package."""


class InvalidEdge(RainbowError):
    pass


class DisconnectedGraph(RainbowError):
    pass


class EmptyOrFullSet(RainbowError):
    pass


class InvalidBipartition(EmptyOrFullSet):
    pass


class ConvergenceFailure(RainbowError):
    pass


class TooLarge(RainbowError):
    pass


class InvalidSpec(RainbowError):
    pass


class OddBaseUnsupported(RainbowError):
    pass


class NonIntegerWeights(RainbowError):
    pass


class BadPartition(RainbowError):
    pass


class CapacityViolation(RainbowError):
    pass


class SwapError(RainbowError):
    pass
