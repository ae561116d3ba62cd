import numpy                                                        as _np

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.partition.profile                                     import Profile
from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.util.phi_heat_errors                                  import GluingError, ParameterError


class GluedSolution():

    '''
    A solution assembled from overlapping windows.

    :param SpaceTimeField field: the glued field
    :param list seams: one dict of seam diagnostics per glued window
    '''
    def __init__(self, field, seams):

        self.field                                      = field
        self.seams                                      = seams


class TimeGluer():

    '''
    Extends a solution of ``P_a u = l`` in time by solving on overlapping windows of a fixed length ``T0``.

    A new window starts ``lam`` before the end of the glued solution: its solution is
    ``w = Q l + E(u(t_s))``, the Neumann solve of the shifted datum plus the homogeneous solve from the current
    value. On the overlap ``w`` must agree with the glued solution (both solve the same problem with the same
    initial value); the two are then joined with the weight ``1 - sigma(tau)``, ``tau`` running from 0 to 1 across
    the overlap, which is C^2 in time.

    :param HomogeneousSolver homogeneous_solver: solver on the full time axis of ``l``
    :param float tolerance: largest accepted overlap mismatch; ``100 tol max(1, ||u||_inf)`` by default
    '''
    def __init__(self, homogeneous_solver, tolerance=None, profile=None):

        self.homogeneous_solver                         = homogeneous_solver
        self.tolerance                                  = tolerance
        self.profile                                    = Profile() if profile is None else profile

    def extend_in_time(self, source, u, lam, horizon=None):
        '''
        :param SpaceTimeField source: the datum ``l`` on ``[0, T]``
        :param SpaceTimeField u: the solution on the first window ``[0, T0]``, on the first steps of ``l``'s axis
        :param float lam: overlap length, ``0 < lam < T0``
        :param float horizon: final time, at most ``T``; ``2 T0 - lam`` by default
        :rtype: GluedSolution
        :raises GluingError: if a window disagrees with the glued solution on its overlap
        '''
        axis                                            = source.time_axis
        if abs(u.time_axis.h - axis.h) > 1e-12 * axis.h or abs(u.time_axis.start - axis.start) > 1e-12:
            raise ParameterError("The first window must start the datum's time axis with the same step")
        n0                                              = u.time_axis.nt
        nl                                              = axis.steps_for(lam)
        if not 0 < nl < n0 < axis.nt:
            raise ParameterError("Need 0 < lam < T0 < T, got lam=" + str(lam) + ", T0=" + str(u.time_axis.T)
                                 + ", T=" + str(axis.T))
        H                                               = 2 * n0 - nl if horizon is None else axis.steps_for(horizon)
        if H > axis.nt or H < n0:
            raise ParameterError("Horizon must lie in [T0, T], got " + str(H * axis.h))

        app                                             = PhiHeatApplication.app()
        grid                                            = source.grid
        glued                                           = _np.zeros((H + 1, grid.size))
        glued[:n0 + 1]                                  = u.flat()
        tolerance                                       = self.tolerance
        if tolerance is None:
            tol                                         = self.homogeneous_solver.neumann_solver.config.tol
            tolerance                                   = 100 * tol * max(1.0, float(_np.max(_np.abs(u.values))))

        seams                                           = []
        end                                             = n0
        while end < H:
            start                                       = end - nl
            n                                           = min(n0, H - start)
            solver                                      = self.homogeneous_solver.window(start, n)
            particular, _                               = solver.neumann_solver.neumann_solve(source.window(start, n))
            homogeneous, _                              = solver.homogeneous_solve(glued[start].reshape(grid.shape))
            w                                           = (particular + homogeneous).flat()

            diagnostics                                 = self._seam_diagnostics(glued, w, start, end, axis.h)
            diagnostics["tolerance"]                    = tolerance
            diagnostics["t_seam"]                       = axis.times[end]
            if diagnostics["mismatch"] > tolerance:
                raise GluingError("Windows disagree by " + "{:.3e}".format(diagnostics["mismatch"]) + " on the overlap ["
                                  + str(axis.times[start]) + ", " + str(axis.times[end]) + "], tolerance "
                                  + "{:.3e}".format(tolerance), diagnostics)

            for j in range(nl + 1):
                chi                                     = 1.0 - float(self.profile.evaluate(j / nl))
                glued[start + j]                        = (1 - chi) * glued[start + j] + chi * w[j]
            glued[end + 1:start + n + 1]                = w[nl + 1:n + 1]

            diagnostics["slope_jump"]                   = self._slope_jump(glued, end, axis.h)
            seams.append(diagnostics)
            app.log("Glued window [" + "{:.4g}".format(axis.times[start]) + ", " + "{:.4g}".format(axis.times[start + n])
                    + "], overlap mismatch " + "{:.3e}".format(diagnostics["mismatch"]), PhiHeat_Logger.LEVEL_INFO)
            end                                         = start + n

        window_axis                                     = axis.window(0, H)
        field                                           = SpaceTimeField(glued.reshape((H + 1,) + tuple(grid.shape)), grid,
                                                                         window_axis, label="u_glued")
        return GluedSolution(field, seams)

    def _seam_diagnostics(self, glued, w, start, end, h):
        overlap                                         = glued[start:end + 1] - w[:end - start + 1]
        inner                                           = glued[1:end]
        second                                          = _np.abs(glued[2:end + 1] - 2 * inner + glued[:end - 1]) / h \
                                                            if end >= 2 else _np.zeros(1)
        return {"mismatch":             float(_np.max(_np.abs(overlap))),
                "value_jump":           float(_np.max(_np.abs(overlap[-1]))),
                "interior_variation":   float(_np.max(second))}

    def _slope_jump(self, glued, seam, h):
        '''
        :return: ``max |D^+ - D^-|`` of the glued field at the seam node, comparable to ``interior_variation``
        '''
        if seam + 1 >= len(glued):
            return 0.0
        left                                            = glued[seam] - glued[seam - 1]
        right                                           = glued[seam + 1] - glued[seam]
        return float(_np.max(_np.abs(right - left)) / h)
