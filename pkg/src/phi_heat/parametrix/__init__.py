from phi_heat.parametrix.parametrix_config                          import ParametrixConfig
from phi_heat.parametrix.boundary_parametrix                        import BoundaryParametrix, BoundaryAction
from phi_heat.parametrix.doubled_grid                               import DoubledGrid
from phi_heat.parametrix.interior_parametrix                        import InteriorParametrix
from phi_heat.parametrix.parametrix                                 import Parametrix, ParametrixAction
from phi_heat.parametrix.probe_set                                  import ProbeSet
from phi_heat.parametrix.operator_norm_estimator                    import OperatorNormEstimator, NormEstimate
from phi_heat.parametrix.neumann_solver                             import NeumannSolver, ParametrixReport
from phi_heat.parametrix.contraction_budget                         import ContractionBudget
from phi_heat.parametrix.homogeneous_solver                         import HomogeneousSolver
from phi_heat.parametrix.time_gluer                                 import TimeGluer, GluedSolution
