import numpy                                                        as _np

from phi_heat.partition.profile                                     import Profile
from phi_heat.util.phi_heat_errors                                  import ConfigurationError, ParameterError


class BumpFamily():

    '''
    The eps-scaled bumps attached to the anchors of a :class:`PartitionConfig`, on a collar grid.

    For an anchor ``(0, y_bar, z_bar)`` the raw pair is

        ``phi_hat = sigma(x/eps) sigma(x|y-y_bar|) sigma(eps x^2 |z-z_bar|) C(1)``
        ``psi_hat = sigma(x/(2eps)) sigma(x|y-y_bar|/2) sigma(eps x^2 |z-z_bar|/2) C(1/2)``

    where ``C(c) = prod_i sigma(c|y_i - y_bar_i|) prod_j sigma(c|z_j - z_bar_j|)`` restricts a bump to the half-cube
    chart of its anchor. Every argument of ``psi_hat`` is half the matching argument of ``phi_hat``, so
    ``psi_hat == 1`` exactly on the support of ``phi_hat``.

    Normalization divides each ``phi_hat`` by the sum ``D`` of the tangential factors (everything but
    ``sigma(x/eps)``) over all anchors. Hence ``sum phi = sigma(x/eps)``: identically 1 on ``{x <= eps/2}``, smooth,
    and 0 on ``{x >= eps}``. On ``{x <= eps/2}`` this coincides with ``phi_hat / sum(phi_hat)``.

    Per-anchor fields are computed on demand; only the denominators and aggregates are cached.

    :param PhiGrid grid: collar grid
    :param PartitionConfig config: scale and anchors
    :param Profile profile: cutoff profile
    '''
    def __init__(self, grid, config, profile=None):

        self.grid                                       = grid
        self.config                                     = config
        self.profile                                    = Profile() if profile is None else profile
        self.epsilon                                    = config.epsilon

        if config.anchors.shape[1] != grid.model.m:
            raise ParameterError("Anchors have " + str(config.anchors.shape[1]) + " coordinates, the model needs "
                                 + str(grid.model.m))

        self._denominator                               = None
        self._psi_sum                                   = None
        self._phi_total                                 = None
        self._overlap                                   = None

    @property
    def anchor_count(self):
        return self.config.anchor_count

    def anchor(self, q):
        return self.config.anchors[q]

    # ------------------------------------------------------------------------------------------------------------
    # Raw bumps
    # ------------------------------------------------------------------------------------------------------------
    def radial_factor(self, scale=1.0):
        '''
        :return: ``sigma(scale * x / eps)`` on the grid
        '''
        x                                               = self.grid.coordinates()[0]
        return self.profile.evaluate(scale * x / self.epsilon)

    def tangential_factor(self, q, scale=1.0):
        '''
        :return: product of the factors of the raw bump of anchor ``q`` other than the radial one, with all
            arguments multiplied by ``scale``
        '''
        coords                                          = self.grid.coordinates()
        x                                               = coords[0]
        anchor                                          = self.anchor(q)
        chart                                           = self.grid.model.chart
        sigma                                           = self.profile.evaluate

        result                                          = _np.ones(self.grid.shape)
        base_sq                                         = _np.zeros(self.grid.shape)
        fiber_sq                                        = _np.zeros(self.grid.shape)
        for slot in chart.base_slots():
            d                                           = chart.shortest_arc(coords[slot] - anchor[slot])
            base_sq                                     += d**2
            result                                      *= sigma(scale * d)
        for slot in chart.fiber_slots():
            d                                           = chart.shortest_arc(coords[slot] - anchor[slot])
            fiber_sq                                    += d**2
            result                                      *= sigma(scale * d)

        result                                          *= sigma(scale * x * _np.sqrt(base_sq))
        result                                          *= sigma(scale * self.epsilon * x**2 * _np.sqrt(fiber_sq))
        return result

    def raw_bumps(self, q):
        '''
        :param int q: anchor index
        :return: ``(phi_hat, psi_hat)`` as arrays of the grid shape
        '''
        phi_hat                                         = self.radial_factor() * self.tangential_factor(q)
        psi_hat                                         = self.radial_factor(0.5) * self.tangential_factor(q, 0.5)
        return phi_hat, psi_hat

    # ------------------------------------------------------------------------------------------------------------
    # Normalization
    # ------------------------------------------------------------------------------------------------------------
    def normalize(self):
        '''
        Computes the normalization denominators and checks that the anchors cover the collar.

        :return: this family, now normalized
        :rtype: BumpFamily
        '''
        D                                               = _np.zeros(self.grid.shape)
        psi_sum                                         = _np.zeros(self.grid.shape)
        overlap                                         = _np.zeros(self.grid.shape, dtype=int)
        radial                                          = self.radial_factor()
        for q in range(self.anchor_count):
            T                                           = self.tangential_factor(q)
            D                                           += T
            overlap                                     += (radial * T > 0)
            psi_sum                                     += self.radial_factor(0.5) * self.tangential_factor(q, 0.5)

        uncovered                                       = (radial > 0) & (D <= 0)
        if _np.any(uncovered):
            idx                                         = _np.unravel_index(int(_np.argmax(uncovered)), self.grid.shape)
            point                                       = tuple(c[idx] for c in self.grid.coordinates())
            raise ConfigurationError("Anchor lattice with vartheta=" + str(self.config.vartheta)
                                     + " leaves the collar point " + str(point) + " uncovered; decrease vartheta")

        self._denominator                               = D
        self._psi_sum                                   = psi_sum
        self._overlap                                   = overlap
        self._phi_total                                 = None
        return self

    def is_normalized(self):
        return self._denominator is not None

    def _require_normalized(self):
        if not self.is_normalized():
            self.normalize()

    def normalized_pair(self, q):
        '''
        :return: ``(phi, psi)`` for anchor ``q``, where ``psi = psi_hat / sum(psi_hat)`` wherever the sum is positive
        '''
        self._require_normalized()
        phi                                             = self.normalized_phi(q)
        _, psi_hat                                      = self.raw_bumps(q)
        psi                                             = _np.divide(psi_hat, self._psi_sum, out=_np.zeros(self.grid.shape),
                                                                     where=self._psi_sum > 0)
        return phi, psi

    def normalized_phi(self, q):
        self._require_normalized()
        radial                                          = self.radial_factor()
        T                                               = self.tangential_factor(q)
        ratio                                           = _np.divide(T, self._denominator, out=_np.zeros(self.grid.shape),
                                                                     where=self._denominator > 0)
        return radial * ratio

    def localization_pair(self, q):
        '''
        :return: ``(phi, psi_hat)`` for anchor ``q``: the normalized cutoff applied to the data and the raw cutoff,
            equal to 1 on its support, applied to the local solution
        '''
        _, psi_hat                                      = self.raw_bumps(q)
        return self.normalized_phi(q), psi_hat

    def localization_block(self, indices):
        '''
        :return: two arrays of shape ``(grid.size, len(indices))`` with the flattened ``phi`` and ``psi_hat`` of the
            given anchors as columns
        '''
        Phi                                             = _np.empty((self.grid.size, len(indices)))
        Psi                                             = _np.empty((self.grid.size, len(indices)))
        for j, q in enumerate(indices):
            phi, psi_hat                                = self.localization_pair(q)
            Phi[:, j]                                   = phi.ravel()
            Psi[:, j]                                   = psi_hat.ravel()
        return Phi, Psi

    def phi_total(self):
        '''
        :return: ``sum phi`` over all anchors, accumulated anchor by anchor
        '''
        self._require_normalized()
        if self._phi_total is None:
            total                                       = _np.zeros(self.grid.shape)
            for q in range(self.anchor_count):
                total                                   += self.normalized_phi(q)
            self._phi_total                             = total
        return self._phi_total

    def max_overlap(self):
        '''
        :return: largest number of anchors whose raw bump is positive at a common grid point
        '''
        self._require_normalized()
        return int(_np.max(self._overlap))
