
class PhiHeatError(ValueError):

    '''
    Root of all errors raised by the ``phi_heat`` package. It derives from :class:`ValueError` so that callers
    that only care about "bad input or unusable numerical state" can catch a single, familiar exception type.
    '''


class DomainError(PhiHeatError):
    '''
    Raised when a point or argument lies outside the domain of a function, e.g. a point outside a chart.
    '''


class ParameterError(PhiHeatError):
    '''
    Raised when a parameter is out of range or when two objects that must be compatible are not
    (mismatched grids, empty fields, negative durations, ...).
    '''


class ConfigurationError(PhiHeatError):
    '''
    Raised when a combination of otherwise valid settings cannot be realized on the chosen grid, for example
    an anchor lattice that leaves part of the collar uncovered.
    '''


class AssemblyError(PhiHeatError):
    '''
    Raised when a discrete operator cannot be assembled, e.g. because a metric coefficient degenerates.
    '''


class HypothesisViolationError(PhiHeatError):
    '''
    Raised when a coefficient violates the standing hypothesis of the heat operator (positivity, lower bound).
    '''


class UnsupportedError(PhiHeatError):
    '''
    Raised for requests that are well formed but deliberately not implemented, such as ``k > 2`` norms or
    oracles for models without a closed-form heat kernel.
    '''


class AuditFailure(PhiHeatError):

    '''
    Raised when an audit check fails.

    :param str message: what failed
    :param witness: the point, pair or value that demonstrates the failure
    '''
    def __init__(self, message, witness=None):

        super().__init__(message)
        self.witness                                    = witness


class ContractionBudgetError(PhiHeatError):

    '''
    Raised when the measured norm proxy of the error operator is too large for the Neumann series to be used,
    either because it is not below 1 or because the series would need more terms than its cap.

    :param float proxy: the measured norm proxy
    :param float epsilon: collar scale in use
    :param float T: time window in use
    :param int terms_needed: terms the series would need, when the refusal comes from the term cap
    :param int terms_cap: the term cap in force
    '''
    def __init__(self, proxy, epsilon, T, delta=None, terms_needed=None, terms_cap=None):

        self.proxy                                      = proxy
        self.epsilon                                    = epsilon
        self.T                                          = T
        self.terms_needed                               = terms_needed
        if terms_needed is None:
            msg                                         = "Measured error-operator proxy " + str(proxy)      \
                                                            + " is not below 1 for eps=" + str(epsilon)       \
                                                            + ", T=" + str(T) + "."
        else:
            msg                                         = "Measured error-operator proxy " + str(proxy)      \
                                                            + " needs " + str(terms_needed) + " Neumann terms" \
                                                            + " for eps=" + str(epsilon) + ", T=" + str(T)    \
                                                            + ", more than the cap of " + str(terms_cap) + "."
        if delta is not None:
            msg                                         += " Target budget was " + str(delta) + "."
        msg                                             += "\n\t==> Shrink the window T (the T^(alpha/2) term)" \
                                                            + " or the collar scale eps, or run the budget"   \
                                                            + " search of the audit-parametrix command."
        super().__init__(msg)


class GluingError(PhiHeatError):

    '''
    Raised when two time windows do not agree on their overlap.

    :param str message: description of the mismatch
    :param dict diagnostics: seam diagnostics (mismatch, jumps, tolerance)
    '''
    def __init__(self, message, diagnostics):

        super().__init__(message)
        self.diagnostics                                = diagnostics


class NoConvergenceError(PhiHeatError):

    '''
    Raised when an iteration fails to converge within its budget.

    :param str message: description of the failure
    :param list history: the gap or residual history recorded before giving up
    '''
    def __init__(self, message, history):

        super().__init__(message)
        self.history                                    = list(history)


class ConfigValidationError(PhiHeatError):

    '''
    Raised when a run configuration violates a constraint.

    :param str key: the offending configuration key
    :param str constraint: human readable statement of the constraint that was violated
    '''
    def __init__(self, key, constraint):

        self.key                                        = key
        self.constraint                                 = constraint
        super().__init__("Invalid value for config key '" + str(key) + "': " + str(constraint))
