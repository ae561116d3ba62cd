import time                                                         as _time

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger


class Profiler():

    '''
    Context manager that times a named stage of a computation, logs its duration and records it with the
    :class:`PhiHeatApplication` so that run manifests can report wall time per stage.

    Example::

        with Profiler("assembly"):
            laplacian = LaplacianAssembler().assemble_laplacian(model, grid)

    :param str stage_name: name under which the duration is recorded
    :param int log_level: level at which the duration is logged
    '''
    def __init__(self, stage_name, log_level=PhiHeat_Logger.LEVEL_INFO):

        self.stage_name                                 = stage_name
        self.log_level                                  = log_level
        self.seconds                                    = None
        self._start                                     = None

    def __enter__(self):
        self._start                                     = _time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_value, exc_tb):
        self.seconds                                    = _time.perf_counter() - self._start
        app                                             = PhiHeatApplication.app()
        app.record_stage(self.stage_name, self.seconds)

        status                                          = "failed after" if exc_value is not None else "took"
        app.log("Stage '" + self.stage_name + "' " + status + " " + "{:.3f}".format(self.seconds) + " s",
                self.log_level, show_caller=False)

        # Propagate any exception
        return False
