import math                                                         as _math
import numpy                                                        as _np

from phi_heat.spaces.holder_estimator                               import HolderEstimator
from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.util.phi_heat_errors                                  import ParameterError


class ProbeSet():

    '''
    Smooth test data for measuring operator norms. A third of the probes are Gaussian bumps in ``log x`` times
    a tangential profile, a third are low trigonometric modes, and the rest are seeded random combinations of
    smooth modes. Every probe varies slowly in time and is scaled to unit measured ``alpha`` norm.

    Probes are written in the normalized log coordinate ``w = log(x/x_min) / log(x_max/x_min)`` so that they
    resolve the collar on geometric grids.

    :param PhiGrid grid: collar grid
    :param TimeAxis time_axis: time axis of the probes
    :param int count: number of probes
    :param NormSpec spec: the norm the probes are normalized in; only ``alpha``, ``gamma`` and sampling matter
    :param int seed: seed of the random probes
    '''
    def __init__(self, grid, time_axis, count, spec, seed=0, estimator=None):

        if int(count) != count or count < 0:
            raise ParameterError("Probe count must be a nonnegative integer, got " + str(count))
        self.grid                                       = grid
        self.time_axis                                  = time_axis
        self.count                                      = int(count)
        self.spec                                       = spec.but(k=0)
        self.seed                                       = int(seed)
        self.estimator                                  = HolderEstimator() if estimator is None else estimator
        self._probes                                    = None

    def __len__(self):
        return self.count

    def _coordinates(self):
        coords                                          = self.grid.coordinates()
        chart                                           = self.grid.model.chart
        x                                               = coords[0]
        w                                               = _np.log(x / chart.x_min) / _math.log(chart.x_max / chart.x_min)
        return w, coords[1:]

    def _time_factor(self, rate):
        t                                               = self.time_axis.times - self.time_axis.start
        return (1.0 + rate * t / self.time_axis.T).reshape((-1,) + (1,) * len(self.grid.shape))

    def _bump(self, j, n_bumps):
        w, periodic                                     = self._coordinates()
        centre                                          = (j + 0.5) / n_bumps
        spatial                                         = _np.exp(-((w - centre) / 0.15)**2)
        for a, y in enumerate(periodic):
            spatial                                     = spatial * (1.0 + 0.5 * _np.cos(y - 2 * _math.pi * (j + a) / max(n_bumps, 1)))
        return spatial[None, ...] * self._time_factor(0.5)

    def _mode(self, j):
        w, periodic                                     = self._coordinates()
        spatial                                         = _np.cos(_math.pi * (j % 3) * w)
        for a, y in enumerate(periodic):
            spatial                                     = spatial * _np.cos((1 + (j + a) % 3) * y)
        return spatial[None, ...] * self._time_factor(-0.5)

    def _random(self, rng):
        w, periodic                                     = self._coordinates()
        spatial                                         = _np.zeros(self.grid.shape)
        for _ in range(4):
            term                                        = _np.cos(_math.pi * rng.integers(0, 4) * w + rng.uniform(0, 2 * _math.pi))
            for y in periodic:
                term                                    = term * _np.cos(rng.integers(0, 3) * y + rng.uniform(0, 2 * _math.pi))
            spatial                                     = spatial + rng.normal() * term
        return spatial[None, ...] * self._time_factor(rng.uniform(-0.5, 0.5))

    def probes(self):
        '''
        :return: list of ``(name, SpaceTimeField)`` with unit measured ``alpha`` norm
        '''
        if self._probes is None:
            n_bumps                                     = self.count // 3
            n_modes                                     = self.count // 3
            rng                                         = _np.random.default_rng(self.seed)
            raw                                         = []
            for j in range(n_bumps):
                raw.append(("bump_" + str(j), self._bump(j, n_bumps)))
            for j in range(n_modes):
                raw.append(("mode_" + str(j), self._mode(j)))
            for j in range(self.count - n_bumps - n_modes):
                raw.append(("random_" + str(j), self._random(rng)))

            result                                      = []
            shape                                       = (len(self.time_axis),) + tuple(self.grid.shape)
            for name, values in raw:
                field                                   = SpaceTimeField(_np.broadcast_to(values, shape), self.grid,
                                                                         self.time_axis, label=name)
                norm                                    = self.estimator.k_alpha_norm(field, self.spec).total
                if norm > 0:
                    result.append((name, field * (1.0 / norm)))
            self._probes                                = result
        return self._probes
