import math                                                         as _math
import numpy                                                        as _np
import scipy.stats                                                  as _stats

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.spaces.holder_estimator                               import HolderEstimator
from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.spaces.time_axis                                      import TimeAxis
from phi_heat.util.phi_heat_errors                                  import AuditFailure
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


class PartitionAuditReport():

    '''
    Measurements of a :class:`BumpFamily` against the four properties of the bump families:

    * I: ``psi_hat == 1`` on the support of ``phi_hat``, checked exactly at every grid point and anchor,
    * II: the seminorm of ``phi_hat``, reported together with ``seminorm * eps^alpha``,
    * III: finiteness of the ``k = 2`` norm of ``phi_hat``,
    * IV: the ``d_{1,Phi}`` diameter of the support of ``phi_hat`` against its bound.

    Also records the partition-of-unity error on ``{x <= eps/2}`` and the anchor overlap.
    '''
    def __init__(self):

        self.epsilon                                    = None
        self.anchor_count                               = None
        self.max_overlap                                = None
        self.property_I_ok                              = None
        self.sum_to_one_max_err                         = None
        self.seminorm                                   = None
        self.seminorm_times_eps_alpha                   = None
        self.k2_norm                                    = None
        self.diam_max                                   = None
        self.diam_bound                                 = None
        self.nominal_bound                              = None

        # List of (check name, message, witness)
        self.failures                                   = []

    def passed(self):
        return len(self.failures) == 0

    def to_row(self):
        S                                               = PhiHeatStatics
        return {S.EPSILON_COL:          self.epsilon,
                S.ANCHOR_COUNT_COL:     self.anchor_count,
                S.MAX_OVERLAP_COL:      self.max_overlap,
                S.DIAM_MAX_COL:         self.diam_max,
                S.DIAM_BOUND_COL:       self.diam_bound,
                S.SEMINORM_COL:         self.seminorm,
                S.SEMINORM_EPS_COL:     self.seminorm_times_eps_alpha,
                S.PROPERTY_I_COL:       self.property_I_ok,
                S.SUM_TO_ONE_COL:       self.sum_to_one_max_err,
                S.K2_NORM_COL:          self.k2_norm}


class PartitionAuditor():

    '''
    Audits bump families. Seminorms are measured on the representative anchor 0 with pairs whose first point
    lies in the support of its ``psi_hat``; all anchors are translates of each other in the periodic directions.

    :param HolderEstimator estimator: norm estimator to use
    '''
    SUM_TO_ONE_TOLERANCE                                = 1e-12

    # Points per chunk of the pairwise diameter scan
    DIAMETER_CHUNK                                      = 256

    def __init__(self, estimator=None):

        self.estimator                                  = HolderEstimator() if estimator is None else estimator

    @staticmethod
    def diameter_bound(b, f, epsilon):
        '''
        Supremum of ``d_{1,Phi}`` over pairs of points with ``x, x' < eps``, ``|y-y_bar| < sqrt(b)`` and
        ``|z-z_bar| < sqrt(f)``; the distance is convex in ``(x, x')`` so the sup sits at a corner of ``[0, eps]^2``.
        It equals ``max{1, 4 sqrt(b), 4 sqrt(f)} eps`` whenever ``f = 0``.
        '''
        e                                               = epsilon
        return max(e + 2 * _math.sqrt(b) * e + 2 * _math.sqrt(f) * e**2,
                   4 * _math.sqrt(b) * e + 8 * _math.sqrt(f) * e**2)

    @staticmethod
    def nominal_constant(b, f):
        return max(1.0, 4 * _math.sqrt(b), 4 * _math.sqrt(f))

    def measure(self, family, spec):
        '''
        :param BumpFamily family: the family to audit; normalized if needed
        :param NormSpec spec: Hoelder exponent and sampling parameters for property II
        :rtype: PartitionAuditReport
        '''
        grid                                            = family.grid
        chart                                           = grid.model.chart
        eps                                             = family.epsilon
        report                                          = PartitionAuditReport()
        report.epsilon                                  = eps
        report.anchor_count                             = family.anchor_count

        family.normalize()
        report.max_overlap                              = family.max_overlap()

        # I
        report.property_I_ok                            = True
        for q in range(family.anchor_count):
            phi_hat, psi_hat                            = family.raw_bumps(q)
            bad                                         = (phi_hat > 0) & (psi_hat != 1.0)
            if _np.any(bad):
                idx                                     = _np.unravel_index(int(_np.argmax(bad)), grid.shape)
                witness                                 = (q, tuple(c[idx] for c in grid.coordinates()))
                report.property_I_ok                    = False
                report.failures.append(("property_I", "psi_hat != 1 on supp phi_hat", witness))
                break

        # Partition of unity
        total                                           = family.phi_total()
        x                                               = grid.coordinates()[0]
        plateau                                         = x <= eps / 2
        report.sum_to_one_max_err                       = float(_np.max(_np.abs(total[plateau] - 1.0))) \
                                                            if _np.any(plateau) else 0.0
        if report.sum_to_one_max_err > self.SUM_TO_ONE_TOLERANCE:
            idx                                         = _np.unravel_index(int(_np.argmax(_np.where(plateau,
                                                                    _np.abs(total - 1.0), -1.0))), grid.shape)
            report.failures.append(("sum_to_one", "sum of phi differs from 1 on {x <= eps/2}",
                                    tuple(c[idx] for c in grid.coordinates())))
        if _np.min(total) < -self.SUM_TO_ONE_TOLERANCE or _np.max(total) > 1 + self.SUM_TO_ONE_TOLERANCE:
            report.failures.append(("phi_total_range", "sum of phi leaves [0, 1]", (float(_np.min(total)),
                                                                                   float(_np.max(total)))))

        # II and III on the representative anchor
        phi_hat, psi_hat                                = family.raw_bumps(0)
        axis                                            = TimeAxis(1.0, 2)
        field                                           = SpaceTimeField.constant_in_time(grid, axis, phi_hat, label="phi_hat")
        focus                                           = _np.flatnonzero(psi_hat.ravel() > 0)
        local_spec                                      = spec.but(k=0, gamma=0.0, focus=focus)
        report.seminorm                                 = self.estimator.alpha_seminorm(field, local_spec)
        report.seminorm_times_eps_alpha                 = report.seminorm * eps**spec.alpha
        report.k2_norm                                  = self.estimator.k_alpha_norm(field, local_spec.but(k=2)).total
        if not _np.isfinite(report.k2_norm):
            report.failures.append(("property_III", "k=2 norm of phi_hat is not finite", report.k2_norm))

        # IV
        report.diam_max                                 = self.support_diameter(grid, phi_hat)
        report.diam_bound                               = self.diameter_bound(chart.b, chart.f, eps)
        report.nominal_bound                            = self.nominal_constant(chart.b, chart.f) * eps
        if report.diam_max > report.diam_bound * (1 + 1e-12):
            report.failures.append(("property_IV", "support diameter exceeds its bound",
                                    (report.diam_max, report.diam_bound)))

        PhiHeatApplication.app().log("Partition audit eps=" + str(eps) + ": anchors=" + str(report.anchor_count)
                                     + ", overlap=" + str(report.max_overlap) + ", diam=" + "{:.4g}".format(report.diam_max)
                                     + ", [phi_hat]_alpha=" + "{:.4g}".format(report.seminorm),
                                     PhiHeat_Logger.LEVEL_DEBUG)
        return report

    def audit(self, family, spec):
        '''
        Like :meth:`measure`, but raises when a check fails.

        :raises AuditFailure: listing the failed checks; ``witness`` holds the first failure's witness
        '''
        report                                          = self.measure(family, spec)
        if not report.passed():
            names                                       = ", ".join(name + " (" + msg + ")" for name, msg, _ in report.failures)
            raise AuditFailure("Partition audit failed for eps=" + str(family.epsilon) + ": " + names,
                               witness=report.failures[0][2])
        return report

    def support_diameter(self, grid, field):
        '''
        :return: largest ``d_{1,Phi}`` distance between two grid points where ``field > 0``
        :rtype: float
        '''
        P                                               = grid.points()[field.ravel() > 0]
        if len(P) < 2:
            return 0.0
        model                                           = grid.model
        best                                            = 0.0
        for start in range(0, len(P), self.DIAMETER_CHUNK):
            block                                       = P[start:start + self.DIAMETER_CHUNK]
            d                                           = model.phi_distance(block[:, None, :], P[None, :, :], q=1,
                                                                             validate=False)
            best                                        = max(best, float(_np.max(d)))
        return best

    @staticmethod
    def scaling_law(reports, alpha):
        '''
        Regression of ``log seminorm`` against ``log eps`` over an eps sweep.

        :param list reports: one :class:`PartitionAuditReport` per eps
        :return: dict with the fitted slope, its expected value ``-alpha`` and the spread (max/min) of
            ``seminorm * eps^alpha``
        '''
        eps                                             = _np.array([r.epsilon for r in reports])
        semi                                            = _np.array([r.seminorm for r in reports])
        scaled                                          = _np.array([r.seminorm_times_eps_alpha for r in reports])
        result                                          = {"expected_slope": -alpha, "slope": float("nan"),
                                                           "spread": float("nan")}
        if len(reports) >= 2 and _np.all(semi > 0):
            fit                                         = _stats.linregress(_np.log(eps), _np.log(semi))
            result["slope"]                             = float(fit.slope)
            result["spread"]                            = float(_np.max(scaled) / _np.min(scaled))
        return result
