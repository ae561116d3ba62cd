from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.spaces.holder_estimator                               import HolderEstimator
from phi_heat.util.phi_heat_errors                                  import ParameterError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


class NormEstimate():

    '''
    Operator-norm proxies of the error operators measured on a probe set.

    :param dict proxies: label -> largest measured ``||R l||_alpha`` over the probes
    :param dict witnesses: label -> name of the probe attaining it
    :param float consistency_err: largest ``|R l - (R1 l + R2 l + R3 l)|`` over the probes
    '''
    def __init__(self, proxies, witnesses, consistency_err):

        self.proxies                                    = proxies
        self.witnesses                                  = witnesses
        self.consistency_err                            = consistency_err

    def proxy(self, label=PhiHeatStatics.R_TOTAL):
        return self.proxies[label]


class OperatorNormEstimator():

    '''
    Lower-bound proxies for the operator norms of ``R1, R2, R3`` and ``R`` on ``x^gamma C^alpha``: the largest measured
    norm of ``R l`` over probes ``l`` of unit measured norm. Every probe is pushed through the parametrix once and
    all four error fields are measured from the same action.

    :param Parametrix parametrix: the parametrix whose error operators are measured
    :param ProbeSet probe_set: probes on the parametrix grid and time axis
    :param HolderEstimator estimator: norm estimator
    '''
    def __init__(self, parametrix, probe_set, estimator=None):

        self.parametrix                                 = parametrix
        self.probe_set                                  = probe_set
        self.estimator                                  = HolderEstimator() if estimator is None else estimator

    def estimate(self, spec, labels=None):
        '''
        :param NormSpec spec: norm in which ``R l`` is measured; ``k`` is ignored
        :param list labels: error operators to measure, all by default
        :rtype: NormEstimate
        :raises ParameterError: if the probe set is empty
        '''
        labels                                          = PhiHeatStatics.ERROR_LABELS if labels is None else labels
        probes                                          = self.probe_set.probes()
        if len(probes) == 0:
            raise ParameterError("Cannot estimate an operator norm on an empty probe set")
        if spec.gamma != 0:
            PhiHeatApplication.app().log("Operator norms with gamma=" + str(spec.gamma) + " are experimental",
                                         PhiHeat_Logger.LEVEL_WARNING)

        local_spec                                      = spec.but(k=0)
        proxies                                         = {label: 0.0 for label in labels}
        witnesses                                       = {label: None for label in labels}
        consistency                                     = 0.0
        for name, probe in probes:
            action                                      = self.parametrix.apply(probe)
            consistency                                 = max(consistency, action.consistency_error())
            for label in labels:
                value                                   = self.estimator.k_alpha_norm(action.error(label), local_spec).total
                if value > proxies[label]:
                    proxies[label], witnesses[label]    = value, name

        PhiHeatApplication.app().log("Operator-norm proxies at eps=" + str(self.parametrix.epsilon) + ", T="
                                     + str(self.parametrix.time_axis.T) + ": "
                                     + ", ".join(label + "=" + "{:.4g}".format(proxies[label]) for label in labels),
                                     PhiHeat_Logger.LEVEL_INFO)
        return NormEstimate(proxies, witnesses, consistency)

    def estimate_operator_norm(self, label, spec):
        '''
        :return: the proxy of a single error operator
        :rtype: float
        '''
        return self.estimate(spec, labels=[label]).proxy(label)
