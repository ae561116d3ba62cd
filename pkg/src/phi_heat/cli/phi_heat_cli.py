import argparse                                                     as _argparse
import logging                                                      as _logging
import sys                                                          as _sys
from pathlib                                                        import Path

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.cli.config_parser                                     import ConfigParser
from phi_heat.cli.experiment_runner                                 import ExperimentRunner
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.util.phi_heat_errors                                  import PhiHeatError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


LOG_LEVELS                                              = {"debug":     PhiHeat_Logger.LEVEL_DEBUG,
                                                           "info":      PhiHeat_Logger.LEVEL_INFO,
                                                           "warning":   PhiHeat_Logger.LEVEL_WARNING,
                                                           "error":     PhiHeat_Logger.LEVEL_ERROR}


def build_parser():
    parser                                              = _argparse.ArgumentParser(prog="phi-heat",
                                                            description="Numerical experiments with heat operators on "
                                                                        + "fibered-boundary model manifolds")
    parser.add_argument("subcommand", choices=PhiHeatStatics.SUBCOMMANDS)
    parser.add_argument("--config", default=None, help="line based 'key = value' configuration; defaults if omitted")
    parser.add_argument("--out", default="phi_heat_out", help="output directory")
    parser.add_argument("--seed", type=int, default=None, help="overrides the 'seed' key of the configuration")
    parser.add_argument("--xlsx", action="store_true", help="also write summary.xlsx")
    parser.add_argument("--log-level", choices=list(LOG_LEVELS.keys()), default="info")
    return parser


def main(argv=None):
    '''
    Entry point of the ``phi-heat`` console script.

    :return: 0 when every in-run check passed, 1 when a check or a stage failed, 2 on an invalid configuration
    '''
    args                                                = build_parser().parse_args(argv)
    level                                               = LOG_LEVELS[args.log_level]
    _logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(message)s")
    app                                                 = PhiHeatApplication.install(PhiHeatApplication(PhiHeat_Logger(level)))

    try:
        parser                                          = ConfigParser()
        config                                          = parser.parse_config("") if args.config is None \
                                                            else parser.parse_file(args.config)
        if args.seed is not None:
            config                                      = config.but(seed=args.seed)
    except PhiHeatError as ex:
        app.log("Invalid configuration: " + str(ex), PhiHeat_Logger.LEVEL_ERROR, show_caller=False)
        return 2

    manifest                                            = ExperimentRunner(config, Path(args.out), xlsx=args.xlsx,
                                                                           log_level=level).run(args.subcommand)
    return manifest.exit_code()


if __name__ == "__main__":
    _sys.exit(main())
