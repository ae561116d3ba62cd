from phi_heat.semilinear.nonlinear_rhs                              import NonlinearRHS
from phi_heat.semilinear.lipschitz_auditor                          import LipschitzAuditor
from phi_heat.semilinear.picard_solver                              import PicardSolver, PicardState
from phi_heat.semilinear.explicit_reference_stepper                 import ExplicitReferenceStepper
