import pytest

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.geometry.manifold_model_factory                       import ManifoldModelFactory
from phi_heat.geometry.phi_grid                                     import PhiGrid
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.operators.coefficient_field                           import CoefficientField
from phi_heat.operators.laplacian_assembler                         import LaplacianAssembler
from phi_heat.parametrix.neumann_solver                             import NeumannSolver
from phi_heat.parametrix.parametrix                                 import Parametrix
from phi_heat.parametrix.parametrix_config                          import ParametrixConfig
from phi_heat.partition.bump_family                                 import BumpFamily
from phi_heat.partition.partition_config                            import PartitionConfig
from phi_heat.spaces.norm_spec                                      import NormSpec
from phi_heat.spaces.time_axis                                      import TimeAxis


# Collar scale used by every parametrix fixture; on a 32 node geometric grid from 1/64 it leaves
# three x nodes in the doubling seam
EPSILON                                                 = 1 / 8


@pytest.fixture(autouse=True, scope="session")
def quiet_application():
    PhiHeatApplication.install(PhiHeatApplication(PhiHeat_Logger(PhiHeat_Logger.LEVEL_WARNING)))


@pytest.fixture(scope="session")
def model_a():
    return ManifoldModelFactory().create("A")


@pytest.fixture(scope="session")
def model_b():
    return ManifoldModelFactory().create("B")


@pytest.fixture(scope="session")
def grid_a(model_a):
    return PhiGrid(model_a, 32, ny=16)


@pytest.fixture(scope="session")
def grid_b(model_b):
    return PhiGrid(model_b, 16, ny=16, nz=16)


@pytest.fixture(scope="session")
def laplacian_a(model_a, grid_a):
    return LaplacianAssembler().assemble_laplacian(model_a, grid_a)


@pytest.fixture(scope="session")
def laplacian_b(model_b, grid_b):
    return LaplacianAssembler().assemble_laplacian(model_b, grid_b)


@pytest.fixture(scope="session")
def short_axis():
    return TimeAxis(0.004, 8)


@pytest.fixture(scope="session")
def family_a(model_a, grid_a):
    return BumpFamily(grid_a, PartitionConfig.lattice(model_a, EPSILON, 0.5)).normalize()


@pytest.fixture(scope="session")
def parametrix_a(laplacian_a, family_a, short_axis):
    coefficient                                         = CoefficientField.constant(laplacian_a.grid, short_axis, 1.0)
    return Parametrix(laplacian_a, family_a, coefficient)


@pytest.fixture(scope="session")
def parametrix_settings(family_a, short_axis):
    return ParametrixConfig(family_a.config, short_axis.T, short_axis.nt, neumann_max=12, tol=1e-5,
                            norm_spec=NormSpec(0.5, pair_budget=1000))


@pytest.fixture
def neumann_a(parametrix_a, parametrix_settings):
    '''
    A Neumann solver whose proxy is set rather than measured. The proxy is small enough for the series to plan
    about half of its 12 terms at tolerance 1e-5.
    '''
    return NeumannSolver(parametrix_a, parametrix_settings, proxy=0.1)
