import hashlib                                                      as _hashlib
from pathlib                                                        import Path

import git                                                          as _git
import yaml                                                         as _yaml

import phi_heat
from phi_heat.util.phi_heat_errors                                  import ParameterError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


class RunManifest():

    '''
    Record of one run: the configuration it used, the code version, wall time per stage, a sha256 checksum of
    every output file, and the outcome of every in-run check. It is saved as a flat YAML mapping whose keys are
    prefixed by their section (``config.``, ``stage.``, ``output.``, ``check.``).

    :param str subcommand: the subcommand that ran
    :param dict config: the configuration echo
    :param str out_dir: the run's output directory
    '''
    STATUS_OK                                           = "ok"
    STATUS_FAILED                                       = "failed"

    def __init__(self, subcommand, config, out_dir):

        self.subcommand                                 = subcommand
        self.config                                     = dict(config)
        self.out_dir                                    = Path(out_dir)
        self.code_version                               = self.detect_code_version()
        self.stage_seconds                              = {}
        self.outputs                                    = {}
        self.checks                                     = {}
        self.failed_stage                               = None
        self.error                                      = None

    @staticmethod
    def detect_code_version():
        '''
        :return: the HEAD commit when the package runs from a git checkout, else the package version
        '''
        try:
            repo                                        = _git.Repo(Path(phi_heat.__file__).parent, search_parent_directories=True)
            return "git:" + repo.head.commit.hexsha
        except (_git.InvalidGitRepositoryError, _git.NoSuchPathError, ValueError):
            return "phi_heat " + phi_heat.__version__

    @staticmethod
    def checksum(path):
        digest                                          = _hashlib.sha256()
        with open(path, "rb") as f:
            for block in iter(lambda: f.read(1 << 16), b""):
                digest.update(block)
        return digest.hexdigest()

    def add_output(self, path):
        '''
        Registers a file written by the run.

        :raises ParameterError: if the file does not exist or is empty
        '''
        p                                               = Path(path)
        if not p.exists() or p.stat().st_size == 0:
            raise ParameterError("Output '" + str(p) + "' is missing or empty")
        self.outputs[p.relative_to(self.out_dir).as_posix()] = self.checksum(p)

    def add_check(self, name, passed):
        self.checks[name]                               = bool(passed)

    def fail(self, stage, error):
        self.failed_stage                               = stage
        self.error                                      = str(error).split("\n")[0]

    @property
    def status(self):
        if self.failed_stage is not None or not all(self.checks.values()):
            return self.STATUS_FAILED
        return self.STATUS_OK

    def exit_code(self):
        return 0 if self.status == self.STATUS_OK else 1

    def to_dict(self):
        result                                          = {"subcommand":      self.subcommand,
                                                           "code_version":    self.code_version,
                                                           "status":          self.status,
                                                           "failed_stage":    self.failed_stage,
                                                           "error":           self.error}
        for key, value in self.config.items():
            result["config." + key]                     = value
        for stage, seconds in self.stage_seconds.items():
            result["stage." + stage]                    = round(float(seconds), 6)
        for name, digest in self.outputs.items():
            result["output." + name]                    = digest
        for name, passed in self.checks.items():
            result["check." + name]                     = passed
        return result

    def save(self):
        '''
        :return: path of the written manifest
        '''
        path                                            = self.out_dir / PhiHeatStatics.MANIFEST_FILE
        with open(path, "w") as f:
            _yaml.safe_dump(self.to_dict(), f, sort_keys=False, default_flow_style=False)
        return path

    @staticmethod
    def load(path):
        with open(path, "r") as f:
            return _yaml.safe_load(f)
