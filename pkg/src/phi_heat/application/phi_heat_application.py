import threading                                                    as _threading

from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger


class PhiHeatApplication():

    '''
    Process-wide context for the ``phi_heat`` package. It owns the logger and the registry of stage timings
    that :class:`Profiler` feeds and that run manifests consume.

    Business logic never builds an application itself. It calls :meth:`app`, which creates the singleton
    on first use.

    :param PhiHeat_Logger logger: logger to use. If None, a logger at ``LEVEL_INFO`` is created.
    '''
    _singleton_app                                      = None
    _lock                                               = _threading.Lock()

    APP_NAME                                            = "PhiHeat"

    def __init__(self, logger=None):

        if logger is None:
            logger                                      = PhiHeat_Logger(activation_level=PhiHeat_Logger.LEVEL_INFO)

        self.app_name                                   = self.APP_NAME
        self.logger                                     = logger

        # Ordered list of (stage name, seconds)
        self._stage_timings                             = []

    @staticmethod
    def app():
        '''
        :return: the singleton application, creating it if needed
        :rtype: PhiHeatApplication
        '''
        if PhiHeatApplication._singleton_app is None:
            with PhiHeatApplication._lock:
                if PhiHeatApplication._singleton_app is None:
                    PhiHeatApplication._singleton_app   = PhiHeatApplication()
        return PhiHeatApplication._singleton_app

    @staticmethod
    def install(application):
        '''
        Replaces the singleton, e.g. so the CLI can install an application whose logger honors ``--log-level``.
        '''
        with PhiHeatApplication._lock:
            PhiHeatApplication._singleton_app           = application
        return application

    def log(self, message, log_level=PhiHeat_Logger.LEVEL_INFO, show_caller=True):
        self.logger.log(message, log_level, stack_level_increase=1, show_caller=show_caller)

    def record_stage(self, stage_name, seconds):
        self._stage_timings.append((stage_name, float(seconds)))

    def stage_timings(self):
        '''
        :return: accumulated seconds per stage name, in order of first appearance
        :rtype: dict
        '''
        result                                          = {}
        for name, seconds in self._stage_timings:
            result[name]                                = result.get(name, 0.0) + seconds
        return result

    def reset_stage_timings(self):
        self._stage_timings                             = []
