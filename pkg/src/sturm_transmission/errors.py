"""Exception hierarchy shared by all submodules."""


class SturmTransmissionError(Exception):
    """Base class for every error raised by this package."""


# -- problem datum -------------------------------------------------------------

class ProblemValidationError(SturmTransmissionError, ValueError):
    pass


class BadGeometry(ProblemValidationError):
    pass


class NonPositiveMinors(ProblemValidationError):
    """Transmission matrix has Delta12 <= 0 or Delta34 <= 0."""


class ZeroBoundaryRow(ProblemValidationError):
    pass


class NonpositiveDelta0(ProblemValidationError):
    pass


class OutOfSide(SturmTransmissionError, ValueError):
    pass


# -- integration / quadrature ---------------------------------------------------

class IntegrationError(SturmTransmissionError, ArithmeticError):
    pass


class StepUnderflow(IntegrationError):
    pass


class NonFinite(IntegrationError):
    pass


class MaxStepsExceeded(IntegrationError):
    pass


class OutOfSpan(SturmTransmissionError, ValueError):
    pass


class QuadratureFailure(SturmTransmissionError, ArithmeticError):
    pass


# -- spectral computations ------------------------------------------------------

class AtEigenvalue(SturmTransmissionError, ArithmeticError):
    """The characteristic function vanishes (numerically) at the requested lambda."""


class AtInteriorSingularity(SturmTransmissionError, ValueError):
    pass


class BadRange(SturmTransmissionError, ValueError):
    pass


class NotABracket(SturmTransmissionError, ValueError):
    pass


class NoConvergence(SturmTransmissionError, ArithmeticError):
    pass


class NotAnEigenvalue(SturmTransmissionError, ValueError):
    pass


# -- Hilbert space operations ---------------------------------------------------

class Delta0Zero(SturmTransmissionError, ValueError):
    pass


class NotInDomain(SturmTransmissionError, ValueError):
    pass


class DegenerateConstraints(SturmTransmissionError, ValueError):
    pass


# -- configuration files --------------------------------------------------------

class ConfigSyntaxError(SturmTransmissionError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class MissingKey(SturmTransmissionError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "missing key"
