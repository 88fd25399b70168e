"""Exception hierarchy shared across the package."""


class GlctError(Exception):
    """Base class for all library errors."""


class ValidationError(GlctError):
    """Bad user input (parameters, shapes, file contents)."""


class NotUnimodular(ValidationError):
    """Parameter quadruple (a, b, c, d) with ad - bc != 1."""


class BZero(ValidationError):
    """Chirp decomposition requested for a parameter matrix with b ~ 0."""


class NotB0Case(ValidationError):
    """b = 0 decomposition requested for a parameter matrix with b != 0."""


class NotSymmetric(ValidationError):
    """Adjacency matrix is not symmetric."""


class DimensionMismatch(ValidationError):
    """Signal length does not match the graph's node count."""


class NotUnitModulus(ValidationError):
    """Complex number expected on the unit circle is not."""


class InvalidDelta(ValidationError):
    """Scaling factor must be strictly positive."""


class InvalidSpec(ValidationError):
    """Graph generator specification is inconsistent."""


class UnsupportedRecipe(ValidationError):
    """Operation not defined for this operator's construction recipe."""


class DegenerateDenominator(ValidationError):
    """NMSE denominator is (numerically) zero."""


class ConfigError(ValidationError):
    """Benchmark configuration file is invalid."""


class ParseError(ValidationError):
    """Input file could not be parsed."""


class NumericalFailure(GlctError):
    """A numerical routine produced a result outside its tolerance."""


class IoError(GlctError):
    """File could not be read or written."""
