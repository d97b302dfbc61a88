"""Exception hierarchy.

Every error carries the process exit code the command line maps it to:
1 for numerical or schema failures, 2 for data outside the admissible
class (real or multiple zeros), 3 for a singular Marchenko system and
4 for a failed verification oracle.
"""


class HalflineError(Exception):
    exit_code = 1


class ConfigError(HalflineError):
    """Malformed or inconsistent configuration / data file."""


class StepFailure(HalflineError):
    """The adaptive integrator could not complete the requested interval."""


class NonCertifiedColumn(HalflineError):
    """A solution column was requested outside its sector of validity."""


class SingularPsi(HalflineError):
    pass


class QuadratureNotConverged(HalflineError):
    pass


class InconsistentResidue(HalflineError):
    pass


class VanishingS1AtZero(HalflineError):
    pass


class NearPole(HalflineError):
    pass


class GridTooCoarse(HalflineError):
    pass


class GridNotSymmetric(HalflineError):
    pass


class InsufficientNearOriginSamples(HalflineError):
    pass


class EigenvaluePresent(HalflineError):
    pass


class BoundaryZero(HalflineError):
    """A zero of the sampled function sits on the search contour."""


class ClassViolation(HalflineError):
    """Data outside the admissible class: a real or a multiple zero."""
    exit_code = 2


class RealZeroOfS2(ClassViolation):
    pass


class MultipleZeroSuspected(ClassViolation):
    pass


MultipleZero = MultipleZeroSuspected


class SingularSystem(HalflineError):
    exit_code = 3


class OracleFailure(HalflineError):
    exit_code = 4
