import functools                                                    as _functools
import itertools                                                    as _itertools
import numpy                                                        as _np

from phi_heat.spaces.norm_spec                                      import HolderReport
from phi_heat.spaces.pair_sampler                                   import PairSampler
from phi_heat.util.phi_heat_errors                                  import ParameterError, UnsupportedError


class HolderEstimator():

    '''
    Measures grid fields in the weighted parabolic Hoelder norms ``x^gamma C^{k, alpha}`` of a model.

    Seminorms are suprema of

        ``|u(p,t) - u(p',t')| / (d_{2,Phi}(p,p')^alpha + |t-t'|^(alpha/2))``

    over a sampled set of pairs (see :class:`PairSampler`), hence lower bounds of the true seminorms. Pairs only
    ever involve nodes of the truncated chart. Derivatives are taken along the Phi-frame ``x^2 d_x, x d_y, d_z``
    with second-order finite differences.
    '''
    # Pairs evaluated per vectorized chunk
    CHUNK                                               = 200000

    # Pair sets kept per estimator, one per (grid shape, steps, seed, budget, focus)
    PAIR_CACHE_SIZE                                     = 16

    def __init__(self):
        self._cached_pairs                              = _functools.lru_cache(maxsize=self.PAIR_CACHE_SIZE)(self._sample_pairs)

    def sup_norm(self, u):
        '''
        :param SpaceTimeField u: the field
        :return: ``max |u|`` over all samples
        :rtype: float
        '''
        if u.is_empty():
            raise ParameterError("Cannot take the sup norm of an empty field")
        return float(_np.max(_np.abs(u.values)))

    def alpha_seminorm(self, u, spec):
        '''
        :param SpaceTimeField u: the field, measured as is (no weight is applied)
        :param NormSpec spec: exponent and sampling parameters
        :return: sampled seminorm of ``u``
        :rtype: float
        '''
        value, _                                        = self.alpha_seminorm_with_pair(u, spec)
        return value

    def alpha_seminorm_with_pair(self, u, spec):
        '''
        :return: the sampled seminorm and the pair achieving it, ``((point, t), (point', t'))``, or None when every
            sampled quotient vanishes
        :rtype: tuple
        '''
        i1, n1, i2, n2                                  = self._pairs(u.grid, u.time_axis, spec)
        flat                                            = u.flat()
        points                                          = u.grid.points()
        times                                           = u.time_axis.times
        model                                           = u.grid.model
        alpha                                           = spec.alpha

        best                                            = 0.0
        best_idx                                        = None
        for start in range(0, len(i1), self.CHUNK):
            sl                                          = slice(start, start + self.CHUNK)
            a, b, c, d                                  = i1[sl], n1[sl], i2[sl], n2[sl]
            dist                                        = model.phi_distance(points[a], points[c], q=2, validate=False)
            den                                         = dist**alpha + _np.abs(times[b] - times[d]) ** (alpha / 2)
            num                                         = _np.abs(flat[b, a] - flat[d, c])
            valid                                       = den > 0
            if not _np.any(valid):
                continue
            quotients                                   = _np.where(valid, num / _np.where(valid, den, 1.0), 0.0)
            j                                           = int(_np.argmax(quotients))
            if quotients[j] > best:
                best                                    = float(quotients[j])
                best_idx                                = start + j

        if best_idx is None:
            return 0.0, None
        pair                                            = ((tuple(points[i1[best_idx]]), float(times[n1[best_idx]])),
                                                           (tuple(points[i2[best_idx]]), float(times[n2[best_idx]])))
        return best, pair

    def phi_derivative(self, u, direction):
        '''
        :param SpaceTimeField u: the field
        :param int direction: index of the Phi-frame vector: 0 for ``x^2 d_x``, then base and fiber directions
        :return: the derivative of ``u`` along the frame vector; one-sided second-order differences at the ``x``
            ends, central differences elsewhere
        :rtype: SpaceTimeField
        '''
        D                                               = HolderEstimator.frame_derivative(u.values, u.grid, direction)
        return u.with_values(D, label=u.label + ".V" + str(direction))

    @staticmethod
    def frame_derivative(values, grid, direction):
        '''
        :param values: array of shape ``(n,) + grid.shape``, time first
        :return: array of the same shape with the derivative along the Phi-frame vector ``direction``
        '''
        m                                               = len(grid.shape)
        if int(direction) != direction or not 0 <= direction < m:
            raise ParameterError("Frame direction must be an integer in [0, " + str(m) + "), got " + str(direction))

        V                                               = _np.asarray(values, dtype=float)
        axis                                            = 1 + direction
        if direction == 0:
            D                                           = _np.gradient(V, grid.positions, axis=axis, edge_order=2)
        else:
            h                                           = grid.periodic_spacings[direction - 1]
            D                                           = (_np.roll(V, -1, axis=axis) - _np.roll(V, 1, axis=axis)) / (2 * h)
        return D * grid.frame_weights()[direction][None, ...]

    def time_derivative(self, u):
        if len(u.time_axis) < 3:
            raise ParameterError("Time derivatives need at least 3 time nodes, field '" + str(u.label) + "' has "
                                 + str(len(u.time_axis)))
        D                                               = _np.gradient(u.values, u.time_axis.times, axis=0, edge_order=2)
        return u.with_values(D, label=u.label + ".t")

    def weighted(self, u, gamma):
        '''
        :return: ``x^-gamma u``
        '''
        if gamma == 0:
            return u
        x                                               = u.grid.coordinates()[0]
        return u.with_values(u.values / x[None, ...] ** gamma)

    def k_alpha_norm(self, u, spec):
        '''
        Computes ``||x^-gamma u||_{k, alpha}``: the sum, over every word of ``l1`` frame derivatives and ``l2``
        time derivatives with ``l1 + 2*l2 <= k``, of the sup norm and the sampled seminorm of the derivative.

        :param SpaceTimeField u: the field
        :param NormSpec spec: norm parameters; ``k`` must be 0, 1 or 2
        :rtype: HolderReport
        '''
        if spec.k > 2:
            raise UnsupportedError("Norms with k > 2 are not supported, got k=" + str(spec.k))

        base                                            = self.weighted(u, spec.gamma)
        m                                               = len(u.grid.shape)

        terms                                           = []
        total                                           = 0.0
        best_semi                                       = -1.0
        best_pair                                       = None
        base_sup                                        = None
        base_semi                                       = None
        for l2 in range(spec.k // 2 + 1):
            timed                                       = base
            for _ in range(l2):
                timed                                   = self.time_derivative(timed)
            for l1 in range(spec.k - 2 * l2 + 1):
                for word in _itertools.product(range(m), repeat=l1):
                    field                               = timed
                    for direction in word:
                        field                           = self.phi_derivative(field, direction)

                    sup                                 = self.sup_norm(field)
                    semi, pair                          = self.alpha_seminorm_with_pair(field, spec)
                    name                                = "t" * l2 + "".join("V" + str(d) for d in word)
                    terms.append((name, sup, semi))
                    total                               += sup + semi
                    if l1 == 0 and l2 == 0:
                        base_sup, base_semi             = sup, semi
                    if semi > best_semi:
                        best_semi, best_pair            = semi, pair

        return HolderReport(base_sup, base_semi, total, argmax_pair=best_pair, terms=terms)

    def _pairs(self, grid, time_axis, spec):
        focus                                           = None if spec.focus is None else tuple(_np.asarray(spec.focus, dtype=_np.int64).ravel().tolist())
        return self._cached_pairs(tuple(grid.shape), time_axis.nt, spec.seed, spec.pair_budget, focus)

    def pair_cache_info(self):
        return self._cached_pairs.cache_info()

    @staticmethod
    def _sample_pairs(shape, nt, seed, budget, focus):
        return PairSampler(shape, nt, seed=seed, focus=focus).pairs(budget)
