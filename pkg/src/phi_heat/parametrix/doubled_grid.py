import numpy                                                        as _np

from phi_heat.geometry.phi_grid                                     import PhiGrid
from phi_heat.util.phi_heat_errors                                  import ConfigurationError


class DoubledGrid(PhiGrid):

    '''
    Grid on the double of the interior region ``{x >= x_c}`` of a collar grid, ``x_c = eps/4``.

    Nodes are indexed by the reflected coordinate ``s``: copy 1 holds the collar nodes with ``x > x_c`` at
    ``s = x - x_c``, copy 2 their mirror images at ``s = -(x - x_c)``. The metric is the Phi-metric evaluated at

        ``X(s) = x_c + d Q(|s|/d)`` for ``|s| < d``, ``X(s) = x_c + |s|`` otherwise,

    with ``d = eps/8`` and ``Q(u) = 2u^2 - u^3``. ``X`` is C^1, even in ``s``, bounded below by ``x_c``, and coincides
    with ``x`` on ``{x >= 3 eps/8}``, so on copy 1 the doubled metric is the original one there.

    :param PhiGrid collar_grid: the collar grid
    :param float epsilon: collar scale
    '''
    # Collar nodes required in the blending interval (x_c, x_c + d]
    MIN_BLEND_NODES                                     = 2

    def __init__(self, collar_grid, epsilon):

        x                                               = collar_grid.x_nodes
        x_c                                             = epsilon / 4
        d                                               = epsilon / 8
        self.x_c                                        = x_c
        self.blend_width                                = d
        self.collar_grid                                = collar_grid

        if x_c < x[0]:
            raise ConfigurationError("The doubling hypersurface x=" + str(x_c) + " lies below x_min=" + str(x[0])
                                     + "\n\t==> Increase eps or decrease x_min")
        if epsilon / 2 >= x[-1]:
            raise ConfigurationError("The interior region {x >= eps/2} is empty for eps=" + str(epsilon)
                                     + " and x_max=" + str(x[-1]) + "\n\t==> Decrease eps")
        blend_nodes                                     = int(_np.sum((x > x_c) & (x <= x_c + d)))
        if blend_nodes < self.MIN_BLEND_NODES:
            raise ConfigurationError("Only " + str(blend_nodes) + " x nodes resolve the doubling seam ("
                                     + str(x_c) + ", " + str(x_c + d) + "] for eps=" + str(epsilon)
                                     + "\n\t==> Refine grid_nx or increase eps")

        kept                                            = _np.flatnonzero(x > x_c)
        s                                               = x[kept] - x_c
        positions                                       = _np.concatenate([-s[::-1], s])

        # Collar x index of every doubled x node, and the copy it belongs to
        self.collar_x_index                             = _np.concatenate([kept[::-1], kept])
        self.copy_sign                                  = _np.concatenate([-_np.ones(len(kept), dtype=int),
                                                                           _np.ones(len(kept), dtype=int)])
        self.kept_x                                     = kept

        chart                                           = collar_grid.model.chart
        counts                                          = collar_grid.periodic_counts
        ny                                              = counts[0] if chart.b > 0 else 32
        nz                                              = counts[-1] if chart.f > 0 else 16
        super().__init__(collar_grid.model, len(positions), ny=ny, nz=nz, spacing=collar_grid.spacing,
                         positions=positions)

    def metric_x(self, positions):
        s                                               = _np.abs(_np.asarray(positions, dtype=float))
        d                                               = self.blend_width
        u                                               = _np.minimum(s / d, 1.0)
        blended                                         = self.x_c + d * u**2 * (2.0 - u)
        return _np.where(s < d, blended, self.x_c + s)

    def collar_flat_index(self):
        '''
        :return: integer array of this grid's shape with, for every node, the flat index of the collar node it
            copies
        '''
        collar_shape                                    = self.collar_grid.shape
        idx                                             = _np.meshgrid(self.collar_x_index,
                                                                       *[_np.arange(n) for n in self.periodic_counts],
                                                                       indexing="ij")
        return _np.ravel_multi_index(idx, collar_shape)

    def lift(self, collar_values):
        '''
        Extends a collar field to copy 1 and by zero to copy 2.

        :param collar_values: array of shape ``(T, N_collar)`` of flat collar slices
        :return: array of shape ``(T, N_doubled)``
        '''
        V                                               = _np.asarray(collar_values, dtype=float)
        T                                               = V.shape[0]
        source                                          = V.reshape((T,) + tuple(self.collar_grid.shape))[:, self.collar_x_index]
        mask                                            = self.broadcast_x(self.copy_sign > 0)
        return (source * mask[None, ...]).reshape(T, -1)

    def restrict(self, doubled_values):
        '''
        Reads copy 1 back onto the collar; collar nodes with ``x <= x_c`` receive 0.

        :param doubled_values: array of shape ``(T, N_doubled)``
        :return: array of shape ``(T, N_collar)``
        '''
        V                                               = _np.asarray(doubled_values, dtype=float)
        T                                               = V.shape[0]
        grid_values                                     = V.reshape((T,) + tuple(self.shape))
        first_copy                                      = grid_values[:, self.copy_sign > 0]
        result                                          = _np.zeros((T,) + tuple(self.collar_grid.shape))
        result[:, self.kept_x]                          = first_copy
        return result.reshape(T, -1)

    def mirror(self, doubled_values):
        '''
        :return: the values composed with the reflection ``s -> -s``
        '''
        V                                               = _np.asarray(doubled_values, dtype=float)
        T                                               = V.shape[0]
        return V.reshape((T,) + tuple(self.shape))[:, ::-1].reshape(T, -1)
