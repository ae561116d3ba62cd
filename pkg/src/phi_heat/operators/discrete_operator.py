import numpy                                                        as _np

from phi_heat.util.phi_heat_errors                                  import ParameterError


class DiscreteOperator():

    '''
    A finite-volume operator ``W^-1 K`` on the grid functions of a :class:`PhiGrid`, where ``K`` is a sparse
    stiffness matrix and ``W`` the lumped ``dvol`` mass of the dual cells.

    For the Laplacian ``K`` is symmetric and positive semidefinite with ``K 1 = 0``, so the operator is
    self-adjoint for ``<u, v> = sum W u v`` and annihilates constants on every row.

    :param stiffness: sparse matrix of shape ``(N, N)``, ``N = grid.size``
    :param mass: array of ``N`` positive dual-cell masses
    :param PhiGrid grid: grid the operator acts on
    :param str boundary: closure used at the ends of the ``x`` range
    '''
    NEUMANN                                             = "neumann"

    def __init__(self, stiffness, mass, grid, boundary=NEUMANN):

        self.stiffness                                  = stiffness.tocsr()
        self.mass                                       = _np.asarray(mass, dtype=float).ravel()
        self.grid                                       = grid
        self.model                                      = grid.model
        self.boundary                                   = boundary

        if self.stiffness.shape != (grid.size, grid.size) or len(self.mass) != grid.size:
            raise ParameterError("Operator of shape " + str(self.stiffness.shape) + " does not fit a grid of "
                                 + str(grid.size) + " nodes")

        self.symmetric                                  = self.symmetry_defect() <= 1e-12 * self.scale()

    @property
    def size(self):
        return len(self.mass)

    def scale(self):
        '''
        :return: largest absolute stiffness entry, the yardstick for relative symmetry checks
        '''
        return float(abs(self.stiffness).max()) if self.stiffness.nnz > 0 else 1.0

    def symmetry_defect(self):
        D                                               = self.stiffness - self.stiffness.T
        return float(abs(D).max()) if D.nnz > 0 else 0.0

    def apply(self, u):
        '''
        :param u: flat grid function of length ``N``, or a block of shape ``(N, k)``
        :return: the operator applied to ``u``, same shape
        '''
        U                                               = _np.asarray(u, dtype=float)
        KU                                              = self.stiffness @ U
        return KU / (self.mass if U.ndim == 1 else self.mass[:, None])

    def apply_grid(self, u):
        '''
        :param u: grid function of the grid shape
        :return: the operator applied to ``u``, as an array of the grid shape
        '''
        return self.apply(_np.asarray(u, dtype=float).ravel()).reshape(self.grid.shape)

    def apply_field(self, u):
        '''
        Applies the operator to every time slice of a :class:`SpaceTimeField`.
        '''
        flat                                            = u.flat()
        result                                          = (self.stiffness @ flat.T).T / self.mass[None, :]
        return u.with_values(result.reshape(u.shape), label="Delta(" + str(u.label) + ")")

    def inner(self, u, v):
        '''
        :return: ``sum W u v`` over the grid, the discrete ``L^2(dvol)`` inner product
        '''
        return float(_np.sum(self.mass * _np.asarray(u, dtype=float).ravel() * _np.asarray(v, dtype=float).ravel()))

    def diagonal(self):
        return self.stiffness.diagonal() / self.mass

    def __repr__(self):
        return "DiscreteOperator(" + repr(self.model) + ", shape=" + str(self.grid.shape) + ", boundary=" \
                    + self.boundary + ")"
