import numpy                                                        as _np
import scipy.sparse                                                 as _sparse

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.operators.discrete_operator                           import DiscreteOperator
from phi_heat.util.phi_heat_errors                                  import AssemblyError, ParameterError


class LaplacianAssembler():

    '''
    Assembles the positive Laplace-Beltrami operator of a Phi-metric with vertex-centred finite volumes.

    The metric is diagonal, so the divergence form ``Delta u = -(1/sqrt(g)) d_i (sqrt(g) g^ii d_i u)`` splits into one
    flux per axis. Every axis contributes a Kronecker product: the 1-D stiffness of the axis, the dual widths of
    the ``x`` nodes weighted by the flux coefficient of the axis, and the periodic spacings of the remaining axes.
    Fluxes through the two ends of the ``x`` range are zero (Neumann closure).

    Metric coefficients are evaluated at ``grid.metric_x`` of nodes and faces, so doubled grids whose metric is a
    function of a reflected coordinate are assembled by the same code.
    '''
    MIN_NODES                                           = 16

    def __init__(self):
        pass

    def assemble_laplacian(self, model, grid):
        '''
        :param ManifoldModel model: geometry whose metric is discretized
        :param PhiGrid grid: grid with at least :attr:`MIN_NODES` nodes per axis
        :rtype: DiscreteOperator
        :raises AssemblyError: if a metric coefficient degenerates at a node or face
        '''
        if grid.min_resolution() < self.MIN_NODES:
            raise ParameterError("Laplacian assembly needs at least " + str(self.MIN_NODES) + " nodes per axis, "
                                 + "got grid shape " + str(grid.shape))

        metric                                          = model.metric
        x_nodes                                         = grid.metric_x(grid.positions)
        x_faces                                         = grid.metric_x(grid.face_positions())
        self._check_positive(x_nodes, "node")
        self._check_positive(x_faces, "face")

        widths                                          = grid.dual_widths()
        spacings                                        = grid.periodic_spacings
        n_periodic                                      = len(spacings)

        # x axis
        conductance                                     = metric.flux_coefficient_x(x_faces) / _np.diff(grid.positions)
        factors                                         = [self._chain_stiffness(conductance)] \
                                                            + [h * _sparse.identity(n, format="csr")
                                                               for h, n in zip(spacings, grid.periodic_counts)]
        K                                               = self._kron(factors)

        # Periodic axes
        chart                                           = model.chart
        for a in range(n_periodic):
            if a < chart.b:
                coefficient                             = metric.flux_coefficient_base(x_nodes)
            else:
                coefficient                             = metric.flux_coefficient_fiber(x_nodes)
            factors                                     = [_sparse.diags(coefficient * widths, format="csr")]
            for c in range(n_periodic):
                n                                       = grid.periodic_counts[c]
                if c == a:
                    factors.append(self._ring_stiffness(n) / spacings[c])
                else:
                    factors.append(spacings[c] * _sparse.identity(n, format="csr"))
            K                                           = K + self._kron(factors)

        W                                               = grid.volume_weights().ravel()
        if not _np.all(_np.isfinite(W)) or _np.any(W <= 0):
            raise AssemblyError("Degenerate volume weights on grid " + str(grid.shape))
        if not _np.all(_np.isfinite(K.data)):
            raise AssemblyError("Non-finite stiffness entries on grid " + str(grid.shape))

        laplacian                                       = DiscreteOperator(K, W, grid)
        PhiHeatApplication.app().log("Assembled Laplacian of " + repr(model) + " on grid " + str(grid.shape)
                                     + " (" + str(laplacian.stiffness.nnz) + " nonzeros)", PhiHeat_Logger.LEVEL_DEBUG)
        return laplacian

    def _check_positive(self, x, where):
        bad                                             = ~(_np.isfinite(x) & (x > 0))
        if _np.any(bad):
            raise AssemblyError("Metric degenerates at " + where + " x=" + str(_np.asarray(x)[bad][0])
                                + "\n\t==> Keep the grid inside the truncated chart x >= x_min > 0")

    @staticmethod
    def _chain_stiffness(conductance):
        '''
        :return: the 1-D stiffness of a chain of nodes joined by the given face conductances
        '''
        n                                               = len(conductance) + 1
        main                                            = _np.zeros(n)
        main[:-1]                                       += conductance
        main[1:]                                        += conductance
        return _sparse.diags([-conductance, main, -conductance], [-1, 0, 1], format="csr")

    @staticmethod
    def _ring_stiffness(n):
        '''
        :return: the 1-D periodic stiffness ``2 u_j - u_{j-1} - u_{j+1}`` on ``n`` nodes
        '''
        off                                             = _np.ones(n - 1)
        L                                               = _sparse.diags([-off, 2 * _np.ones(n), -off], [-1, 0, 1], format="lil")
        L[0, n - 1]                                     = -1.0
        L[n - 1, 0]                                     = -1.0
        return L.tocsr()

    @staticmethod
    def _kron(factors):
        result                                          = factors[0]
        for F in factors[1:]:
            result                                      = _sparse.kron(result, F, format="csr")
        return result
