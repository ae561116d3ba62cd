from phi_heat.geometry.fibered_boundary_chart                       import FiberedBoundaryChart
from phi_heat.geometry.phi_metric                                   import PhiMetric
from phi_heat.geometry.manifold_model                               import ManifoldModel
from phi_heat.geometry.manifold_model_factory                       import ManifoldModelFactory
from phi_heat.geometry.phi_grid                                     import PhiGrid
