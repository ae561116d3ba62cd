import numpy                                                        as _np

from phi_heat.util.phi_heat_errors                                  import ParameterError


class PhiGrid():

    '''
    Vertex-centred tensor grid on the truncated collar chart of a :class:`ManifoldModel`.

    The ``x`` axis carries ``nx`` nodes from ``x_min`` to ``x_max``; with the default geometric spacing the
    ratio of consecutive nodes is constant, which resolves the collar ``{x <= eps}`` and corresponds to a uniform
    grid in ``log x``. Each periodic axis (``b`` base axes with ``ny`` nodes, ``f`` fiber axes with ``nz`` nodes)
    has nodes ``2*pi*j/n``.

    Grid functions are numpy arrays of shape :attr:`shape` = ``(nx, ny, ..., nz, ...)``; flattening follows
    C order, matching the Kronecker ordering of assembled operators.

    :param ManifoldModel model: the geometry
    :param int nx: number of ``x`` nodes
    :param int ny: nodes per base axis
    :param int nz: nodes per fiber axis
    :param str spacing: ``"geometric"`` or ``"uniform"``
    '''
    GEOMETRIC                                           = "geometric"
    UNIFORM                                             = "uniform"

    def __init__(self, model, nx, ny=32, nz=16, spacing=GEOMETRIC, positions=None):

        if nx < 3:
            raise ParameterError("Need at least 3 x nodes, got " + str(nx))
        if not spacing in [self.GEOMETRIC, self.UNIFORM]:
            raise ParameterError("Unknown x spacing '" + str(spacing) + "', expected '" + self.GEOMETRIC
                                 + "' or '" + self.UNIFORM + "'")

        self.model                                      = model
        self.spacing                                    = spacing
        chart                                           = model.chart

        if positions is not None:
            self.positions                              = _np.asarray(positions, dtype=float)
        elif spacing == self.GEOMETRIC:
            self.positions                              = chart.x_min * (chart.x_max / chart.x_min) \
                                                            ** (_np.arange(nx) / (nx - 1))
        else:
            self.positions                              = _np.linspace(chart.x_min, chart.x_max, nx)

        self.periodic_counts                            = [int(ny)] * chart.b + [int(nz)] * chart.f
        self.periodic_nodes                             = [2 * _np.pi * _np.arange(n) / n for n in self.periodic_counts]
        self.periodic_spacings                          = [2 * _np.pi / n for n in self.periodic_counts]

        self._coordinates                               = None
        self._points                                    = None

    @property
    def nx(self):
        return len(self.positions)

    @property
    def shape(self):
        return tuple([self.nx] + self.periodic_counts)

    @property
    def size(self):
        return int(_np.prod(self.shape))

    @property
    def x_nodes(self):
        '''
        :return: values of the boundary defining function at the ``x`` nodes
        '''
        return self.metric_x(self.positions)

    def metric_x(self, positions):
        '''
        Value of ``x`` at which metric coefficients are evaluated for a node or face position. It is the identity
        on collar grids; doubled grids override it.
        '''
        return _np.asarray(positions, dtype=float)

    def min_resolution(self):
        return min([self.nx] + self.periodic_counts)

    def face_positions(self):
        return 0.5 * (self.positions[1:] + self.positions[:-1])

    def dual_widths(self):
        '''
        :return: widths of the dual cells of the ``x`` nodes; half cells at both ends
        '''
        gaps                                            = _np.diff(self.positions)
        widths                                          = _np.zeros(self.nx)
        widths[:-1]                                     += 0.5 * gaps
        widths[1:]                                      += 0.5 * gaps
        return widths

    def transverse_measure(self):
        return float(_np.prod(self.periodic_spacings)) if len(self.periodic_spacings) > 0 else 1.0

    def broadcast_x(self, values):
        '''
        :param values: array of length ``nx``
        :return: ``values`` broadcast to the full grid shape
        '''
        v                                               = _np.asarray(values, dtype=float)
        return _np.broadcast_to(v.reshape((self.nx,) + (1,) * len(self.periodic_counts)), self.shape)

    def coordinates(self):
        '''
        :return: list of ``m`` arrays of the full grid shape: ``x`` and then the periodic coordinates
        '''
        if self._coordinates is None:
            self._coordinates                           = _np.meshgrid(self.x_nodes, *self.periodic_nodes, indexing="ij")
        return self._coordinates

    def points(self):
        '''
        :return: array of shape ``(size, m)`` with the coordinates of every node, in flattening order
        '''
        if self._points is None:
            self._points                                = _np.stack([c.ravel() for c in self.coordinates()], axis=-1)
        return self._points

    def volume_weights(self):
        '''
        :return: lumped ``dvol`` mass of every dual cell, as an array of the grid shape
        '''
        density                                         = self.model.metric.volume_density(self.x_nodes)
        return self.broadcast_x(density * self.dual_widths() * self.transverse_measure()).copy()

    def frame_weights(self):
        '''
        :return: array of shape ``(m,) + shape`` with the coordinate weight of every Phi-frame vector at every node
        '''
        weights                                         = self.model.metric.frame_weights(self.x_nodes)
        return _np.stack([self.broadcast_x(weights[:, i]) for i in range(weights.shape[1])], axis=0)

    def first_x_index_at_least(self, value):
        '''
        :return: index of the first ``x`` node whose value is ``>= value``, or ``nx`` if there is none
        '''
        return int(_np.searchsorted(self.x_nodes, value, side="left"))

    def refined(self, level=1):
        '''
        :param int level: number of halvings
        :return: the grid with every spacing divided by ``2**level``. New ``x`` nodes are the geometric (or
            arithmetic, for uniform grids) midpoints of the old ones, so the old nodes are kept.
        :rtype: PhiGrid
        '''
        if level < 0:
            raise ParameterError("Refinement level must be nonnegative, got " + str(level))
        positions                                       = self.positions
        for _ in range(level):
            if self.spacing == self.GEOMETRIC:
                middle                                  = _np.sqrt(positions[1:] * positions[:-1])
            else:
                middle                                  = 0.5 * (positions[1:] + positions[:-1])
            merged                                      = _np.empty(2 * len(positions) - 1)
            merged[0::2], merged[1::2]                  = positions, middle
            positions                                   = merged
        chart                                           = self.model.chart
        ny                                              = self.periodic_counts[0] if chart.b > 0 else 1
        nz                                              = self.periodic_counts[chart.b] if chart.f > 0 else 1
        return PhiGrid(self.model, len(positions), ny=ny * 2**level, nz=nz * 2**level, spacing=self.spacing,
                       positions=positions)

    def same_as(self, other):
        return other is self or (self.model.identifier == other.model.identifier and self.shape == other.shape
                                 and _np.array_equal(self.positions, other.positions))
