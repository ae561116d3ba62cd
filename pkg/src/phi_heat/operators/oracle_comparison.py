import math                                                         as _math
import numpy                                                        as _np
import pandas                                                       as _pd
import scipy.stats                                                  as _stats

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.operators.laplacian_assembler                         import LaplacianAssembler
from phi_heat.operators.oracle_kernel                               import OracleKernel
from phi_heat.operators.propagator                                  import Propagator
from phi_heat.util.phi_heat_errors                                  import ParameterError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


class OracleComparison():

    '''
    Runs the grid propagator against the closed-form kernel of a built-in model.

    The initial datum is the kernel itself at time ``t0`` centred at ``p_tilde``, scaled to unit discrete mass. By
    the semigroup property the exact solution at time ``t`` is the kernel at ``t0 + t`` with the same scaling, so
    the comparison needs no convolution. ``t0`` sets the width of the blob and must be large enough for the grid
    to resolve it.

    :param DiscreteOperator laplacian: Laplacian of the model on the comparison grid
    :param float theta: scheme parameter
    '''
    # Nodes with x below this multiple of x_min form the truncation layer
    LAYER_FACTOR                                        = 2.0

    def __init__(self, laplacian, theta=0.5):

        self.laplacian                                  = laplacian
        self.grid                                       = laplacian.grid
        self.model                                      = laplacian.model
        self.theta                                      = theta
        self.oracle                                     = OracleKernel(self.model)

    def centre(self, r0):
        '''
        :return: the point at ``r = 1/x = r0`` in the middle of the periodic directions
        '''
        return _np.array([1.0 / r0] + [_math.pi] * (self.model.m - 1))

    def blob(self, t0, p_tilde):
        '''
        :return: ``(u0, scale)``: the kernel at ``t0`` on the grid divided by its discrete mass, and that mass
        '''
        K                                               = self.oracle.kernel_on_grid(self.grid, t0, p_tilde)
        scale                                           = float(_np.sum(self.laplacian.mass * K.ravel()))
        if not scale > 0:
            raise ParameterError("Blob centred at " + str(tuple(p_tilde)) + " has no mass on the grid")
        return K / scale, scale

    def compare(self, T, nt, t0=2.0, r0=10.0):
        '''
        :param float T: comparison horizon
        :param int nt: number of time steps
        :return: one row per time node with the relative sup and ``L^2(dvol)`` errors and the discrete mass
        :rtype: pandas.DataFrame
        '''
        S                                               = PhiHeatStatics
        p_tilde                                         = self.centre(r0)
        u0, scale                                       = self.blob(t0, p_tilde)
        prop                                            = Propagator(self.laplacian, 1.0, T / nt, self.theta)
        trajectory                                      = prop.trajectory(u0, nt)
        W                                               = self.laplacian.mass

        rows                                            = []
        for n in range(nt + 1):
            t                                           = n * T / nt
            exact                                       = self.oracle.kernel_on_grid(self.grid, t0 + t, p_tilde).ravel() / scale
            diff                                        = trajectory[n] - exact
            rows.append({S.T_COL:       t,
                         S.SUP_ERR_COL: float(_np.max(_np.abs(diff)) / _np.max(_np.abs(exact))),
                         S.L2_ERR_COL:  float(_np.sqrt(_np.sum(W * diff**2) / _np.sum(W * exact**2))),
                         S.MASS_COL:    float(_np.sum(W * trajectory[n]))})

        df                                              = _pd.DataFrame(rows)
        PhiHeatApplication.app().log("Oracle comparison on " + repr(self.model) + ": final relative sup error "
                                     + "{:.3e}".format(df[S.SUP_ERR_COL].iloc[-1]), PhiHeat_Logger.LEVEL_INFO)
        return df

    def refinement(self, T, nt, levels, t0=2.0, r0=10.0):
        '''
        Repeats :meth:`compare` with every spacing, and the time step, halved ``levels - 1`` times.

        :return: one row per level with the grid size, the periodic spacing ``h``, the number of steps and the
            largest relative sup and ``L^2`` errors over the horizon
        :rtype: pandas.DataFrame
        '''
        S                                               = PhiHeatStatics
        if levels < 1:
            raise ParameterError("A refinement study needs at least one level, got " + str(levels))
        rows                                            = []
        for level in range(levels):
            if level == 0:
                laplacian                               = self.laplacian
            else:
                laplacian                               = LaplacianAssembler().assemble_laplacian(self.model, self.grid.refined(level))
            steps                                       = nt * 2**level
            frame                                       = OracleComparison(laplacian, self.theta).compare(T, steps, t0=t0, r0=r0)
            rows.append({S.LEVEL_COL:   level,
                         S.NX_COL:      laplacian.grid.nx,
                         S.SPACING_COL: max(laplacian.grid.periodic_spacings),
                         S.STEPS_COL:   steps,
                         S.SUP_ERR_COL: float(frame[S.SUP_ERR_COL].max()),
                         S.L2_ERR_COL:  float(frame[S.L2_ERR_COL].max())})
        return _pd.DataFrame(rows)

    @staticmethod
    def convergence_order(refinement):
        '''
        :param pandas.DataFrame refinement: the output of :meth:`refinement`
        :return: slope of ``log sup_err`` against ``log h``, or nan with fewer than two levels of positive error
        '''
        S                                               = PhiHeatStatics
        h                                               = refinement[S.SPACING_COL].to_numpy(dtype=float)
        err                                             = refinement[S.SUP_ERR_COL].to_numpy(dtype=float)
        keep                                            = _np.isfinite(err) & (err > 0)
        if _np.unique(h[keep]).size < 2:
            return float("nan")
        return float(_stats.linregress(_np.log(h[keep]), _np.log(err[keep])).slope)

    @staticmethod
    def mass_report(prop, u0, T, layer_factor=LAYER_FACTOR):
        '''
        Tracks ``int u dvol`` along a propagation.

        :param Propagator prop: the propagator
        :param u0: nonnegative initial datum; it is rescaled to unit discrete mass
        :param float T: horizon, a multiple of the propagator step
        :return: per time node: mass, drift from the initial mass, and the mass held by the nodes with
            ``x <= layer_factor * x_min``, which measures how much of the solution reached the truncation
        :rtype: pandas.DataFrame
        '''
        S                                               = PhiHeatStatics
        U0                                              = _np.asarray(u0, dtype=float).ravel()
        if _np.any(U0 < 0):
            raise ParameterError("Mass reports need a nonnegative initial datum")
        W                                               = prop.laplacian.mass
        grid                                            = prop.grid
        total                                           = float(_np.sum(W * U0))
        if not total > 0:
            raise ParameterError("Initial datum has no mass")
        n_steps                                         = prop.steps_for(T)
        trajectory                                      = prop.trajectory(U0 / total, n_steps)

        layer                                           = (grid.coordinates()[0] <= layer_factor * grid.x_nodes[0]).ravel()
        rows                                            = []
        for n in range(n_steps + 1):
            mass                                        = float(_np.sum(W * trajectory[n]))
            rows.append({S.T_COL:           n * prop.h,
                         S.MASS_COL:        mass,
                         S.DRIFT_COL:       mass - 1.0,
                         S.LAYER_MASS_COL:  float(_np.sum(W[layer] * trajectory[n][layer]))})
        return _pd.DataFrame(rows)
