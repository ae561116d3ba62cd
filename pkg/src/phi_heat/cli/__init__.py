from phi_heat.cli.run_config                                        import RunConfig
from phi_heat.cli.config_parser                                     import ConfigParser
from phi_heat.cli.run_manifest                                      import RunManifest
from phi_heat.cli.experiment_runner                                 import ExperimentRunner
