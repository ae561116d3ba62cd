import itertools                                                    as _itertools
import math                                                         as _math
import numpy                                                        as _np

from phi_heat.util.phi_heat_errors                                  import ParameterError


class PartitionConfig():

    '''
    Scale and anchors of a bump family.

    Anchors are boundary points ``(0, y_bar, z_bar)``. The lattice built by :meth:`lattice` has, on every periodic
    axis, ``n = ceil(2*pi/vartheta)`` equally spaced values, i.e. the periodic lattice closest to spacing
    ``vartheta`` whose spacing does not exceed it.

    :param float epsilon: collar scale in ``(0, 1)``
    :param float vartheta: lattice spacing in ``(0, 1)``
    :param anchors: array of shape ``(K, m)`` with first column 0
    '''
    def __init__(self, epsilon, vartheta, anchors):

        if not 0 < epsilon < 1:
            raise ParameterError("epsilon must lie in (0, 1), got " + str(epsilon))
        if not 0 < vartheta < 1:
            raise ParameterError("vartheta must lie in (0, 1), got " + str(vartheta))
        A                                               = _np.atleast_2d(_np.asarray(anchors, dtype=float))
        if A.size == 0:
            raise ParameterError("The anchor list must not be empty")
        if _np.any(A[:, 0] != 0):
            raise ParameterError("Anchors must lie on the boundary x = 0")

        self.epsilon                                    = float(epsilon)
        self.vartheta                                   = float(vartheta)
        self.anchors                                    = A
        self.anchors.setflags(write=False)

    @staticmethod
    def lattice(model, epsilon, vartheta):
        '''
        :return: configuration whose anchors are the lattice ``(0, vartheta*Lambda)`` of the model's chart
        :rtype: PartitionConfig
        '''
        if not 0 < vartheta < 1:
            raise ParameterError("vartheta must lie in (0, 1), got " + str(vartheta))
        n                                               = int(_math.ceil(2 * _math.pi / vartheta - 1e-12))
        axis_values                                     = [2 * _math.pi * _np.arange(n) / n] * (model.m - 1)
        rows                                            = [(0.0,) + tuple(c) for c in _itertools.product(*axis_values)]
        return PartitionConfig(epsilon, vartheta, _np.array(rows, dtype=float))

    @property
    def anchor_count(self):
        return self.anchors.shape[0]
