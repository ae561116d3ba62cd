import numpy                                                        as _np

from phi_heat.util.phi_heat_errors                                  import DomainError


class Profile():

    '''
    The cutoff profile ``sigma: [0, inf) -> [0, 1]``: equal to 1 on ``[0, 1/2]``, to 0 on ``[1, inf)``, and on
    ``[1/2, 1]`` the unique quintic matching value, slope and curvature at both ends, i.e.
    ``sigma(s) = 1 - S(2s - 1)`` with ``S(u) = 10u^3 - 15u^4 + 6u^5``. The profile is C^2 and monotone.
    '''
    def __init__(self):
        pass

    def sigma(self, s):
        '''
        :param float s: a nonnegative real
        :rtype: float
        '''
        if s < 0:
            raise DomainError("sigma is defined on [0, inf), got s=" + str(s))
        return float(self.evaluate(s))

    def evaluate(self, s):
        '''
        Vectorized profile. Negative entries are treated as 0, which is what every caller composing the profile
        with a nonnegative expression (norms, distances) expects.
        '''
        s                                               = _np.maximum(_np.asarray(s, dtype=float), 0.0)
        u                                               = _np.clip(2.0 * s - 1.0, 0.0, 1.0)
        smooth                                          = u**3 * (10.0 + u * (-15.0 + 6.0 * u))
        return _np.where(s <= 0.5, 1.0, _np.where(s >= 1.0, 0.0, 1.0 - smooth))

    def derivative(self, s, order=1):
        '''
        :return: first or second derivative of the profile
        '''
        s                                               = _np.maximum(_np.asarray(s, dtype=float), 0.0)
        u                                               = _np.clip(2.0 * s - 1.0, 0.0, 1.0)
        if order == 1:
            d                                           = -2.0 * 30.0 * u**2 * (1.0 - u)**2
        elif order == 2:
            d                                           = -4.0 * 60.0 * u * (1.0 - u) * (1.0 - 2.0 * u)
        else:
            raise DomainError("Only first and second derivatives of sigma are available")
        return _np.where((s <= 0.5) | (s >= 1.0), 0.0, d)
