from phi_heat.operators.discrete_operator                           import DiscreteOperator
from phi_heat.operators.laplacian_assembler                         import LaplacianAssembler
from phi_heat.operators.coefficient_field                           import CoefficientField
from phi_heat.operators.propagator                                  import Propagator
from phi_heat.operators.coefficient_propagator                      import CoefficientPropagator
from phi_heat.operators.heat_operator                               import HeatOperator
from phi_heat.operators.oracle_kernel                               import OracleKernel
from phi_heat.operators.oracle_comparison                           import OracleComparison
