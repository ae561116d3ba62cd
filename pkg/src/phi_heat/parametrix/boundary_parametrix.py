import numpy                                                        as _np

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.operators.propagator                                  import Propagator


class BoundaryAction():

    '''
    Flat arrays of shape ``(nt + 1, N)`` produced by one application of the boundary parametrix:

    * ``u``: ``sum_q psi_hat_q H_{c_q}(phi_q l)``
    * ``g1``: ``sum_q psi_hat_q (a^n - c_q) Delta H_{c_q}(phi_q l)`` at every node ``n``
    * ``g2``: ``a^n (Delta u - sum_q psi_hat_q Delta H_{c_q}(phi_q l))``, the commutator ``[a Delta, psi_hat]``

    The error fields are the theta averages of ``g1`` and ``g2`` over consecutive nodes.
    '''
    def __init__(self, u, g1, g2):

        self.u                                          = u
        self.g1                                         = g1
        self.g2                                         = g2


class BoundaryParametrix():

    '''
    Boundary part of the parametrix. For each anchor ``q`` the coefficient is frozen at ``c_q = a(p_bar_q, t_0)``,
    the localized datum ``phi_q l`` is propagated by the Duhamel solver with coefficient ``c_q`` and the result is
    cut off with ``psi_hat_q``, which equals 1 on ``supp phi_q``.

    Anchors sharing a frozen value share one factorization and are stepped together, :attr:`BLOCK` at a time,
    as a block of right-hand sides.

    :param DiscreteOperator laplacian: Laplacian on the collar grid
    :param BumpFamily family: normalized bump family on the same grid
    :param CoefficientField coefficient: coefficient on the same grid
    :param float theta: time scheme parameter
    '''
    BLOCK                                               = 32

    def __init__(self, laplacian, family, coefficient, theta=0.5):

        self.laplacian                                  = laplacian
        self.family                                     = family.normalize() if not family.is_normalized() else family
        self.coefficient                                = coefficient
        self.theta                                      = float(theta)
        self.time_axis                                  = coefficient.time_axis

        self.frozen                                     = [coefficient.frozen_at(family.anchor(q))
                                                           for q in range(family.anchor_count)]
        self._propagators                               = {}
        self._blocks                                    = None

    def groups(self):
        '''
        :return: dict mapping each distinct frozen coefficient to the list of its anchors
        '''
        result                                          = {}
        for q, c in enumerate(self.frozen):
            result.setdefault(c, []).append(q)
        return result

    def propagator(self, c):
        if not c in self._propagators.keys():
            self._propagators[c]                        = Propagator(self.laplacian, c, self.time_axis.h, self.theta)
        return self._propagators[c]

    def _localization_blocks(self):
        if self._blocks is None:
            blocks                                      = []
            for c, anchors in self.groups().items():
                for start in range(0, len(anchors), self.BLOCK):
                    indices                             = anchors[start:start + self.BLOCK]
                    Phi, Psi                            = self.family.localization_block(indices)
                    blocks.append((c, Phi, Psi))
            self._blocks                                = blocks
        return self._blocks

    def apply(self, source):
        '''
        :param SpaceTimeField source: the datum ``l`` on the coefficient's grid and time axis
        :rtype: BoundaryAction
        '''
        flat                                            = source.flat()
        n_nodes                                         = len(self.time_axis)
        N                                               = self.laplacian.size
        K                                               = self.laplacian.stiffness
        W                                               = self.laplacian.mass[:, None]

        u                                               = _np.zeros((n_nodes, N))
        g1                                              = _np.zeros((n_nodes, N))
        psi_delta                                       = _np.zeros((n_nodes, N))

        for c, Phi, Psi in self._localization_blocks():
            prop                                        = self.propagator(c)
            U                                           = _np.zeros(Phi.shape)
            for n in range(1, n_nodes):
                U                                       = prop.step(U, Phi * flat[n][:, None])
                DU                                      = (K @ U) / W
                u[n]                                    += _np.sum(Psi * U, axis=1)
                weighted                                = _np.sum(Psi * DU, axis=1)
                psi_delta[n]                            += weighted
                g1[n]                                   += (self.coefficient.at(n) - c) * weighted

        delta_u                                         = (K @ u.T).T / self.laplacian.mass[None, :]
        g2                                              = _np.empty_like(u)
        for n in range(n_nodes):
            g2[n]                                       = self.coefficient.at(n) * (delta_u[n] - psi_delta[n])

        PhiHeatApplication.app().log("Boundary parametrix applied over " + str(self.family.anchor_count) + " anchors in "
                                     + str(len(self.groups())) + " frozen-coefficient groups", PhiHeat_Logger.LEVEL_DEBUG)
        return BoundaryAction(u, g1, g2)
