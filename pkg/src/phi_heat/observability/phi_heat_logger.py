import logging                                                      as _logging
import os                                                           as _os
import sys                                                          as _sys


class PhiHeat_Logger():

    '''
    Utility to control what messages get logged by the ``phi_heat`` package.

    Messages whose level is below the ``activation_level`` are dropped. Accepted messages are routed through the
    standard :mod:`logging` machinery under the ``phi_heat`` logger name, so that the host process decides on
    handlers and formats.

    :param int activation_level: one of the ``LEVEL_*`` constants of this class
    '''
    LEVEL_DEBUG                                         = _logging.DEBUG
    LEVEL_INFO                                          = _logging.INFO
    LEVEL_WARNING                                       = _logging.WARNING
    LEVEL_ERROR                                         = _logging.ERROR

    LOGGER_NAME                                         = "phi_heat"

    # Environment variable whose value, when found inside a message, is replaced by "$PHI_HEAT_OUT"
    OUTPUT_ROOT_VARIABLE                                = "PHI_HEAT_OUT"

    def __init__(self, activation_level):

        self.activation_level                           = activation_level
        self._logger                                    = _logging.getLogger(self.LOGGER_NAME)

    def log(self, message, log_level, stack_level_increase=0, show_caller=True):
        '''
        :param str message: text to log
        :param int log_level: level of the message, one of the ``LEVEL_*`` constants
        :param int stack_level_increase: number of additional stack frames to skip when identifying the caller.
            Wrappers around this method pass 1 so that the caller of the wrapper is reported.
        :param bool show_caller: if True, the message is prefixed by the name of the calling function
        '''
        if log_level < self.activation_level:
            return

        msg                                             = self.unclutter(str(message))
        if show_caller:
            try:
                caller                                  = _sys._getframe(1 + stack_level_increase).f_code.co_name
            except ValueError:
                caller                                  = "?"
            msg                                         = "[" + caller + "] " + msg

        self._logger.log(log_level, msg)

    def unclutter(self, message):
        '''
        Shortens long messages by replacing the root folder for run outputs with a reference to the environment
        variable that holds it.
        '''
        VAR_NAME                                        = self.OUTPUT_ROOT_VARIABLE
        if VAR_NAME in _os.environ.keys():
            VAR                                         = _os.environ[VAR_NAME]
            if len(VAR) > 0:
                message                                 = message.replace(VAR, "$" + VAR_NAME)

                # Try a variation in case VAR is "/c/..." but message has "C:/..."
                VAR2                                    = VAR.replace("/c/", "C:/")
                message                                 = message.replace(VAR2, "$" + VAR_NAME)

        return message
