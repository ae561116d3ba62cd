from phi_heat.spaces.norm_spec                                      import NormSpec
from phi_heat.spaces.time_axis                                      import TimeAxis
from phi_heat.util.phi_heat_errors                                  import ParameterError


class ParametrixConfig():

    '''
    Settings of one parametrix cell ``(eps, T)``.

    :param PartitionConfig partition: collar scale ``eps`` and anchors
    :param float T: time window
    :param int nt: time steps in the window
    :param float delta: contraction budget in ``(0, 1)``
    :param int neumann_max: cap on the number of Neumann terms, at most :attr:`MAX_NEUMANN_TERMS`
    :param int probe_count: number of probe fields used to measure operator norms, at least 20
    :param float tol: residual tolerance of the Neumann series, relative to ``max(1, ||l||_inf)``
    :param float theta: time scheme parameter
    :param NormSpec norm_spec: norm in which operator norms are measured
    '''
    MIN_PROBES                                          = 20
    # A series that needs more terms than this means the contraction budget is too loose
    MAX_NEUMANN_TERMS                                   = 12

    def __init__(self, partition, T, nt, delta=0.5, neumann_max=12, probe_count=20, tol=1e-8, theta=0.5,
                 norm_spec=None):

        if not 0 < delta < 1:
            raise ParameterError("Contraction budget delta must lie in (0, 1), got " + str(delta))
        if not T > 0:
            raise ParameterError("Time window must be positive, got T=" + str(T))
        if int(neumann_max) != neumann_max or not 1 <= neumann_max <= self.MAX_NEUMANN_TERMS:
            raise ParameterError("Neumann truncation must be an integer in [1, " + str(self.MAX_NEUMANN_TERMS)
                                 + "], got " + str(neumann_max)
                                 + "\n\t==> Tighten the contraction budget instead of allowing more terms")
        if int(probe_count) != probe_count or probe_count < self.MIN_PROBES:
            raise ParameterError("Need at least " + str(self.MIN_PROBES) + " probes, got " + str(probe_count))
        if not tol > 0:
            raise ParameterError("Tolerance must be positive, got " + str(tol))

        self.partition                                  = partition
        self.T                                          = float(T)
        self.nt                                         = int(nt)
        self.delta                                      = float(delta)
        self.neumann_max                                = int(neumann_max)
        self.probe_count                                = int(probe_count)
        self.tol                                        = float(tol)
        self.theta                                      = float(theta)
        self.norm_spec                                  = NormSpec(0.5) if norm_spec is None else norm_spec

        self.time_axis                                  = TimeAxis(self.T, self.nt)

    @property
    def epsilon(self):
        return self.partition.epsilon

    @property
    def vartheta(self):
        return self.partition.vartheta

    def but(self, **overrides):
        '''
        :return: a copy with some settings replaced, e.g. ``config.but(T=0.01, nt=10)``
        :rtype: ParametrixConfig
        '''
        params                                          = dict(partition=self.partition, T=self.T, nt=self.nt,
                                                               delta=self.delta, neumann_max=self.neumann_max,
                                                               probe_count=self.probe_count, tol=self.tol,
                                                               theta=self.theta, norm_spec=self.norm_spec)
        params.update(overrides)
        return ParametrixConfig(**params)
