import itertools                                                    as _itertools
import pandas                                                       as _pd

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.semilinear.nonlinear_rhs                              import NonlinearRHS
from phi_heat.spaces.holder_estimator                               import HolderEstimator
from phi_heat.util.phi_heat_errors                                  import ParameterError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


class LipschitzAuditor():

    '''
    Measures the Lipschitz constants of the two parts of a :class:`NonlinearRHS` over pairs of sample fields.

    For the first part the measured ratio is ``||F1(u) - F1(u')|| / ||u - u'||``; for the second it is
    ``||F2(u) - F2(u')|| / (max(||u||, ||u'||) ||u - u'||)``. Both are taken in the sup norm and in the sampled
    Hoelder norm of the given spec, and the largest ratio over all pairs is the measured ``C_mu``.
    '''
    SUP                                                 = "sup"
    HOLDER                                              = "holder"

    def __init__(self, estimator=None):

        self.estimator                                  = HolderEstimator() if estimator is None else estimator

    def norm(self, kind, u, spec):
        if kind == self.SUP:
            return self.estimator.sup_norm(u)
        return self.estimator.k_alpha_norm(u, spec).total

    def lipschitz_audit(self, rhs, samples, spec):
        '''
        :param NonlinearRHS rhs: the right-hand side
        :param list samples: at least two fields on a common grid and time axis
        :param NormSpec spec: the Hoelder norm; also the norm of the ``mu`` ball
        :return: one row per part and norm with columns ``part, style, norm, c_mu``
        :rtype: pandas.DataFrame
        :raises ParameterError: if a sample lies outside the ``mu`` ball
        '''
        S                                               = PhiHeatStatics
        if len(samples) < 2:
            raise ParameterError("A Lipschitz audit needs at least 2 sample fields, got " + str(len(samples)))
        for sample in samples[1:]:
            if not sample.compatible_with(samples[0]):
                raise ParameterError("Sample '" + str(sample.label) + "' lives on another grid or time axis")

        holder_norms                                    = [self.norm(self.HOLDER, u, spec) for u in samples]
        for u, value in zip(samples, holder_norms):
            if value > rhs.mu:
                raise ParameterError("Sample '" + str(u.label) + "' has norm " + "{:.4g}".format(value)
                                     + " outside the ball of radius mu=" + str(rhs.mu)
                                     + "\n\t==> Scale the samples down or declare a larger mu")
        norms                                           = {self.SUP:    [self.estimator.sup_norm(u) for u in samples],
                                                           self.HOLDER: holder_norms}

        rows                                            = []
        for part, style in NonlinearRHS.STYLES.items():
            images                                      = [rhs.evaluate_part(part, u) for u in samples]
            for kind in (self.SUP, self.HOLDER):
                c_mu                                    = 0.0
                for i, j in _itertools.combinations(range(len(samples)), 2):
                    gap                                 = self.norm(kind, samples[i] - samples[j], spec)
                    if gap == 0:
                        continue
                    scale                               = gap if style == 1 else max(norms[kind][i], norms[kind][j]) * gap
                    if scale == 0:
                        continue
                    c_mu                                = max(c_mu, self.norm(kind, images[i] - images[j], spec) / scale)
                rows.append({S.PART_COL: part, S.STYLE_COL: style, S.NORM_COL: kind, S.C_MU_COL: c_mu})

        PhiHeatApplication.app().log("Lipschitz audit over " + str(len(samples)) + " samples: "
                                     + ", ".join(r[S.PART_COL] + "/" + r[S.NORM_COL] + "="
                                                 + "{:.4g}".format(r[S.C_MU_COL]) for r in rows),
                                     PhiHeat_Logger.LEVEL_INFO)
        return _pd.DataFrame(rows)
