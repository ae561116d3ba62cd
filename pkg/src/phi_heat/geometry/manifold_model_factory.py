from phi_heat.geometry.fibered_boundary_chart                       import FiberedBoundaryChart
from phi_heat.geometry.phi_metric                                   import PhiMetric
from phi_heat.geometry.manifold_model                               import ManifoldModel
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics
from phi_heat.util.phi_heat_errors                                  import ParameterError


class ManifoldModelFactory():

    '''
    Factory class to create :class:`ManifoldModel` instances from a model identifier.
    '''
    # (b, f) of the built-in models
    DIMENSIONS                                          = {PhiHeatStatics.MODEL_A: (1, 0),
                                                           PhiHeatStatics.MODEL_B: (1, 1)}

    def __init__(self):
        pass

    def create(self, identifier, x_min=1/64, x_max=1.0):
        '''
        :param str identifier: ``"A"`` or ``"B"`` (a leading ``"Model"`` is tolerated)
        :param float x_min: truncation parameter of the chart
        :param float x_max: outer end of the collar
        :rtype: ManifoldModel
        '''
        key                                             = str(identifier).strip()
        if key.lower().startswith("model"):
            key                                         = key[len("model"):]
        key                                             = key.upper()
        if not key in self.DIMENSIONS.keys():
            raise ParameterError("Unknown model '" + str(identifier) + "'. Valid models are "
                                 + ", ".join(self.DIMENSIONS.keys()))

        b, f                                            = self.DIMENSIONS[key]
        chart                                           = FiberedBoundaryChart(b, f, x_min=x_min, x_max=x_max)
        return ManifoldModel(key, chart, PhiMetric(b, f), has_oracle=True)

    def create_general(self, b, f, x_min=1/64, x_max=1.0):
        '''
        Creates a model with trivial fibration of arbitrary dimensions. Such models have no heat-kernel oracle.
        '''
        chart                                           = FiberedBoundaryChart(b, f, x_min=x_min, x_max=x_max)
        return ManifoldModel("b" + str(b) + "f" + str(f), chart, PhiMetric(b, f), has_oracle=False)
