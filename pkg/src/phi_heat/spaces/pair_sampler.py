import numpy                                                        as _np


class PairSampler():

    '''
    Deterministic stream of space-time sample pairs for Hoelder seminorm estimates.

    The stream is produced in blocks of :attr:`BLOCK` pairs, block ``b`` being drawn from a generator seeded with
    ``(seed, b)``. The pairs for a budget ``B`` are therefore the first ``B`` pairs of the stream, and any estimate
    that takes a maximum over them is nondecreasing in ``B``.

    Each block is stratified:

    * the first half are near-diagonal pairs: offsets of at most :attr:`NEAR` cells along every axis and, for half
      of them, at most :attr:`NEAR` time steps,
    * the third quarter are dyadic pairs: offsets of ``+-2^j`` cells on a random subset of axes, which probes the
      scale at which a localized field varies,
    * the last quarter are uniform pairs.

    The first two pairs of the stream join the initial and final time node at a fixed point, so that quotients
    that peak across the whole time axis are attained.

    :param tuple shape: spatial grid shape, ``x`` first, periodic axes after
    :param int nt: number of time steps
    :param int seed: seed of the stream
    :param focus: optional array of flat spatial indices from which every first point is drawn
    '''
    BLOCK                                               = 512
    NEAR                                                = 4

    def __init__(self, shape, nt, seed=0, focus=None):

        self.shape                                      = tuple(shape)
        self.nt                                         = int(nt)
        self.seed                                       = int(seed)
        self.size                                       = int(_np.prod(self.shape))
        self.focus                                      = None if focus is None else _np.asarray(focus, dtype=_np.int64)

    def pairs(self, budget):
        '''
        :param int budget: number of pairs
        :return: four integer arrays ``(i1, n1, i2, n2)`` of flat spatial indices and time indices
        '''
        nb_blocks                                       = -(-int(budget) // self.BLOCK)
        blocks                                          = [self._block(b) for b in range(nb_blocks)]
        return tuple(_np.concatenate([blk[j] for blk in blocks])[:budget] for j in range(4))

    def _block(self, b):
        rng                                             = _np.random.default_rng([self.seed, b])
        B                                               = self.BLOCK
        n_near                                          = B // 2
        n_dyadic                                        = B // 4
        n_uniform                                       = B - n_near - n_dyadic

        first                                           = self._first_points(rng, B)
        t1                                              = rng.integers(0, self.nt + 1, size=B)

        second                                          = _np.empty_like(first)
        t2                                              = _np.empty_like(t1)

        # Near-diagonal
        sl                                              = slice(0, n_near)
        offsets                                         = rng.integers(-self.NEAR, self.NEAR + 1, size=(n_near, len(self.shape)))
        second[sl]                                      = self._shift(first[sl], offsets)
        dt                                              = rng.integers(-self.NEAR, self.NEAR + 1, size=n_near)
        dt[rng.random(n_near) < 0.5]                    = 0
        t2[sl]                                          = _np.clip(t1[sl] + dt, 0, self.nt)

        # Dyadic
        sl                                              = slice(n_near, n_near + n_dyadic)
        offsets                                         = _np.zeros((n_dyadic, len(self.shape)), dtype=_np.int64)
        for axis, n in enumerate(self.shape):
            levels                                      = rng.integers(0, max(1, int(_np.log2(n))) + 1, size=n_dyadic)
            signs                                       = rng.choice([-1, 1], size=n_dyadic)
            active                                      = rng.random(n_dyadic) < 0.5
            offsets[:, axis]                            = _np.where(active, signs * 2**levels, 0)
        second[sl]                                      = self._shift(first[sl], offsets)
        levels                                          = rng.integers(0, max(1, int(_np.log2(self.nt + 1))) + 1, size=n_dyadic)
        dt                                              = rng.choice([-1, 1], size=n_dyadic) * 2**levels
        dt[rng.random(n_dyadic) < 0.5]                  = 0
        t2[sl]                                          = _np.clip(t1[sl] + dt, 0, self.nt)

        # Uniform
        sl                                              = slice(n_near + n_dyadic, B)
        second[sl]                                      = _np.stack(_np.unravel_index(rng.integers(0, self.size, size=n_uniform),
                                                                                      self.shape), axis=-1)
        t2[sl]                                          = rng.integers(0, self.nt + 1, size=n_uniform)

        i1                                              = _np.ravel_multi_index(tuple(first.T), self.shape)
        i2                                              = _np.ravel_multi_index(tuple(second.T), self.shape)

        if b == 0:
            for j in range(min(2, B)):
                i2[j]                                   = i1[j]
                t1[j]                                   = 0
                t2[j]                                   = self.nt

        return i1, t1, i2, t2

    def _first_points(self, rng, count):
        if self.focus is not None and len(self.focus) > 0:
            flat                                        = self.focus[rng.integers(0, len(self.focus), size=count)]
        else:
            flat                                        = rng.integers(0, self.size, size=count)
        return _np.stack(_np.unravel_index(flat, self.shape), axis=-1).astype(_np.int64)

    def _shift(self, multi, offsets):
        result                                          = multi + offsets
        # x axis is clamped, periodic axes wrap
        result[:, 0]                                    = _np.clip(result[:, 0], 0, self.shape[0] - 1)
        for axis in range(1, len(self.shape)):
            result[:, axis]                             = _np.mod(result[:, axis], self.shape[axis])
        return result
