"""
errors.py

Exceptions raised by pinchperf. Each one also derives from the builtin
that best describes it, so callers may catch either.
"""


class PinchPerfError(Exception):
    pass


class DomainError(PinchPerfError, ValueError):
    """
    A special-function argument lies outside the supported domain.
    """
    pass


class InvalidParameterError(PinchPerfError, ValueError):
    pass


class ConfigError(InvalidParameterError):
    pass


class BracketError(PinchPerfError, ValueError):
    """
    A root search could not bracket its target inside the allowed interval.
    """
    pass


class ConvergenceError(PinchPerfError, ArithmeticError):
    """
    An adaptive quadrature stopped without reaching its tolerance.

    Attributes:
        label:      name of the integral that failed
        value:      last estimate returned by the integrator
        abserr:     its error estimate
        context:    optional mapping describing where it happened
                    (filled in by callers such as the sweep runner)
    """

    def __init__(self, label, value, abserr, message='', context=None):
        self.label = label
        self.value = value
        self.abserr = abserr
        self.context = dict(context or {})
        super(ConvergenceError, self).__init__(
            "Quadrature '%s' did not converge (value=%r, abserr=%.3g)%s"
            % (label, value, abserr, ': ' + message if message else ''))

    def with_context(self, **context):
        """
        with_context: keyword context -> ConvergenceError

        Returns a copy carrying the given context in addition to any
        it already had.
        """
        merged = dict(self.context)
        merged.update(context)
        err = ConvergenceError(self.label, self.value, self.abserr,
                               context=merged)
        err.args = (str(self) + ' [%s]' % ', '.join(
            '%s=%r' % item for item in sorted(merged.items())),)
        return err


class ToleranceViolationError(PinchPerfError, AssertionError):
    """
    A closed form disagreed with its oracle by more than the allowed
    tolerance. `parameters` holds the offending tuple.
    """

    def __init__(self, check, delta, tolerance, parameters):
        self.check = check
        self.delta = delta
        self.tolerance = tolerance
        self.parameters = dict(parameters)
        super(ToleranceViolationError, self).__init__(
            "%s: delta %.3e exceeds tolerance %.3e at %s"
            % (check, delta, tolerance, ', '.join(
                '%s=%r' % item for item in sorted(self.parameters.items()))))
