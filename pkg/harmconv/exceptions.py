"""
harmconv - Error hierarchy

Every failure raised by the toolkit is a HarmconvError carrying a short
``error_type`` slug, so the CLI and the API can report it uniformly.
"""


class HarmconvError(Exception):
    """Base exception for all harmconv errors."""

    error_type = 'unknown'

    def __init__(self, message: str, error_type: str = None):
        self.message = message
        if error_type:
            self.error_type = error_type
        super().__init__(self.message)


class NearZeroConstantTerm(HarmconvError):
    error_type = 'near_zero_constant_term'


class NoConvergence(HarmconvError):
    """Root iteration did not settle; ``residual`` holds the best value seen."""

    error_type = 'no_convergence'

    def __init__(self, message: str, residual: float = float('inf')):
        self.residual = residual
        super().__init__(message)


class NotMonic(HarmconvError):
    error_type = 'not_monic'


class ConstantTermNotInDisk(HarmconvError):
    error_type = 'constant_term_not_in_disk'


class NearPole(HarmconvError):
    error_type = 'near_pole'


class DilatationNotSchlicht(HarmconvError):
    error_type = 'dilatation_not_schlicht'


class DegenerateShear(HarmconvError):
    error_type = 'degenerate_shear'


class OutsideDomain(HarmconvError):
    error_type = 'outside_domain'


class DegenerateDenominator(HarmconvError):
    error_type = 'degenerate_denominator'


class DegenerateMoebius(HarmconvError):
    error_type = 'degenerate_moebius'


class BoundaryCase(HarmconvError):
    error_type = 'boundary_case'


class WitnessNotFound(HarmconvError):
    error_type = 'witness_not_found'


class DegenerateCurve(HarmconvError):
    error_type = 'degenerate_curve'


class UnknownCase(HarmconvError):
    error_type = 'unknown_case'


class OnSlitPoint(HarmconvError):
    error_type = 'on_slit_point'


class ParseError(HarmconvError):
    error_type = 'parse_error'


class MapFileError(HarmconvError):
    error_type = 'io_error'


class SeriesTruncated(HarmconvError):
    error_type = 'series_truncated'
