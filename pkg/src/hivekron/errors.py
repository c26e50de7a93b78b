"""Exception types shared across the package."""


class HivekronError(Exception):
    """Base class for all package errors."""


class UnknownVertex(HivekronError):
    pass


class MutationAtFrozen(HivekronError):
    pass


class NotAWeightConfig(HivekronError):
    pass


class SizeTooSmall(HivekronError):
    pass


class OutOfRange(HivekronError):
    pass


class IndexOutOfRange(HivekronError):
    pass


class WeightConfigInconsistent(HivekronError):
    pass


class WeightRoutesDisagree(HivekronError):
    pass


class UnderdeterminedWeights(HivekronError):
    pass


class UnsupportedDiamond(HivekronError):
    pass


class NonSquare(HivekronError):
    pass


class DegenerateSample(HivekronError):
    pass


class NotBoundaryFrozen(HivekronError):
    pass


class ArrowMissing(HivekronError):
    pass


class UnboundedFibre(HivekronError):
    pass


class SizeMismatch(HivekronError):
    pass


class LengthExceedsL(HivekronError):
    pass


class LengthExceedsM(HivekronError):
    pass


class SizeTooLargeForOracle(HivekronError):
    pass
