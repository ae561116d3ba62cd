from phi_heat.spaces.time_axis                                      import TimeAxis
from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.spaces.norm_spec                                      import NormSpec, HolderReport
from phi_heat.spaces.pair_sampler                                   import PairSampler
from phi_heat.spaces.holder_estimator                               import HolderEstimator
