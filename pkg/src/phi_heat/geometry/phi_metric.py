import numpy                                                        as _np


class PhiMetric():

    '''
    Closed-form Phi-metric ``g = dx^2/x^4 + g_Y/x^2 + g_Z`` with flat unit-circle factors ``g_Y``, ``g_Z`` and
    vanishing cross terms. All coefficient functions accept scalars or arrays of ``x``.

    :param int b: base dimension
    :param int f: fiber dimension
    '''
    def __init__(self, b, f):

        self.b                                          = b
        self.f                                          = f
        self.h_is_zero                                  = True

    def diagonal(self, x):
        '''
        :return: array of shape ``x.shape + (m,)`` with the diagonal coefficients ``(1/x^4, 1/x^2, ..., 1, ...)``
        '''
        x                                               = _np.asarray(x, dtype=float)
        parts                                           = [x**-4] + [x**-2] * self.b + [_np.ones_like(x)] * self.f
        return _np.stack(parts, axis=-1)

    def matrix(self, x):
        return _np.diag(self.diagonal(float(x)))

    def volume_density(self, x):
        '''
        :return: ``sqrt(det g) = x^-(2+b)``
        '''
        return _np.asarray(x, dtype=float) ** (-(2 + self.b))

    def frame_weights(self, x):
        '''
        :return: array of shape ``x.shape + (m,)`` with the weights ``(x^2, x, ..., 1, ...)`` of the Phi-frame
            ``x^2 d_x, x d_y, d_z`` in coordinates
        '''
        x                                               = _np.asarray(x, dtype=float)
        parts                                           = [x**2] + [x] * self.b + [_np.ones_like(x)] * self.f
        return _np.stack(parts, axis=-1)

    # Flux coefficients sqrt(det g) * g^{ii} of the divergence form of the Laplace-Beltrami operator
    #
    def flux_coefficient_x(self, x):
        return _np.asarray(x, dtype=float) ** (2 - self.b)

    def flux_coefficient_base(self, x):
        return _np.asarray(x, dtype=float) ** (-self.b)

    def flux_coefficient_fiber(self, x):
        return _np.asarray(x, dtype=float) ** (-(2 + self.b))
