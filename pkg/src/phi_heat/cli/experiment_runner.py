from concurrent.futures                                             import ProcessPoolExecutor
from pathlib                                                        import Path

import numpy                                                        as _np
import pandas                                                       as _pd
import xlsxwriter                                                   as _xlsxwriter

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.cli.run_config                                        import RunConfig
from phi_heat.cli.run_manifest                                      import RunManifest
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.operators.laplacian_assembler                         import LaplacianAssembler
from phi_heat.operators.oracle_comparison                           import OracleComparison
from phi_heat.operators.propagator                                  import Propagator
from phi_heat.parametrix.contraction_budget                         import ContractionBudget
from phi_heat.parametrix.error_scaling                              import ErrorScaling
from phi_heat.parametrix.homogeneous_solver                         import HomogeneousSolver
from phi_heat.parametrix.neumann_solver                             import NeumannSolver, ParametrixReport
from phi_heat.parametrix.parametrix                                 import Parametrix
from phi_heat.parametrix.parametrix_config                          import ParametrixConfig
from phi_heat.parametrix.probe_set                                  import ProbeSet
from phi_heat.parametrix.time_gluer                                 import TimeGluer
from phi_heat.partition.bump_family                                 import BumpFamily
from phi_heat.partition.partition_auditor                           import PartitionAuditor
from phi_heat.partition.partition_config                            import PartitionConfig
from phi_heat.principle.maximum_principle                           import MaximumPrinciple
from phi_heat.semilinear.explicit_reference_stepper                 import ExplicitReferenceStepper
from phi_heat.semilinear.lipschitz_auditor                          import LipschitzAuditor
from phi_heat.semilinear.nonlinear_rhs                              import NonlinearRHS
from phi_heat.semilinear.picard_solver                              import PicardSolver
from phi_heat.spaces.holder_estimator                               import HolderEstimator
from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.util.phi_heat_errors                                  import ContractionBudgetError, NoConvergenceError, \
                                                                           PhiHeatError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics
from phi_heat.util.profiler                                         import Profiler
from phi_heat.util.report_writer                                    import ReportWriter


def run_cell(subcommand, values, out_dir, xlsx, log_level):
    '''
    Runs one sweep cell. Module level so that worker processes can unpickle it.

    :return: ``(exit code, manifest path)``
    '''
    PhiHeatApplication.install(PhiHeatApplication(PhiHeat_Logger(log_level)))
    runner                                              = ExperimentRunner(RunConfig(values), out_dir, xlsx=xlsx,
                                                                           log_level=log_level)
    manifest                                            = runner.run_single(subcommand)
    return manifest.exit_code(), str(runner.out_dir / PhiHeatStatics.MANIFEST_FILE)


class ExperimentRunner():

    '''
    Runs a subcommand on a configuration, writes its CSV reports and its manifest into the output directory, and
    records the outcome of every in-run check.

    Lists in the configuration that the subcommand does not sweep itself are expanded into cells, each run in
    its own sub-directory ``cell_NNN``, in a pool of ``workers`` processes. The top-level manifest then lists
    the cell manifests and passes when every cell passes.

    :param RunConfig config: the configuration
    :param str out_dir: output directory, created if needed
    :param bool xlsx: if True, also write every CSV of a run into ``summary.xlsx``
    '''
    # Lists that a subcommand consumes instead of expanding into cells
    CONSUMED_SWEEPS                                     = {PhiHeatStatics.CMD_AUDIT_PARTITION:  ("eps",),
                                                           PhiHeatStatics.CMD_AUDIT_PARAMETRIX: ("eps", "T")}

    ORACLE_SUP_ERR_BOUND                                = 0.02
    MASS_DRIFT_BOUND                                    = 0.01
    SCALING_SLOPE_SLACK                                 = 0.2
    CONVERGENCE_ORDER                                   = 2.0
    RESIDUAL_RATIO_SLACK                                = 0.1
    ZERO_DATA_BOUND                                     = 1e-8
    EXPLICIT_AGREEMENT_BOUND                            = 0.01
    OMORI_YAU_INDEX                                     = 10

    def __init__(self, config, out_dir, xlsx=False, log_level=PhiHeat_Logger.LEVEL_INFO):

        self.config                                     = config
        self.out_dir                                    = Path(out_dir)
        self.xlsx                                       = xlsx
        self.log_level                                  = log_level
        self.current_stage                              = None
        self.frames                                     = {}
        self.estimator                                  = HolderEstimator()

    def run(self, subcommand):
        '''
        :rtype: RunManifest
        '''
        S                                               = PhiHeatStatics
        if not subcommand in S.SUBCOMMANDS:
            raise PhiHeatError("Unknown subcommand '" + str(subcommand) + "'. Valid ones are " + ", ".join(S.SUBCOMMANDS))
        cells                                           = self.config.cells(self.CONSUMED_SWEEPS.get(subcommand, ()))
        if len(cells) == 1:
            return self.run_single(subcommand)

        self.out_dir.mkdir(parents=True, exist_ok=True)
        manifest                                        = RunManifest(subcommand, self.config.to_dict(), self.out_dir)
        jobs                                            = [(subcommand, cell.to_dict(), str(self.out_dir / ("cell_" + str(j).zfill(3))),
                                                            self.xlsx, self.log_level) for j, cell in enumerate(cells)]
        PhiHeatApplication.app().log("Running " + str(len(jobs)) + " cells with " + str(self.config["workers"])
                                     + " workers", PhiHeat_Logger.LEVEL_INFO)
        if self.config["workers"] > 1:
            with ProcessPoolExecutor(max_workers=self.config["workers"]) as executor:
                results                                 = list(executor.map(run_cell, *zip(*jobs)))
        else:
            results                                     = [run_cell(*job) for job in jobs]
            PhiHeatApplication.install(PhiHeatApplication(PhiHeat_Logger(self.log_level)))

        for (code, path), job in zip(results, jobs):
            manifest.add_output(path)
            manifest.add_check(Path(job[2]).name, code == 0)
        manifest.save()
        return manifest

    def run_single(self, subcommand):
        S                                               = PhiHeatStatics
        handlers                                        = {S.CMD_SOLVE:             self.solve,
                                                           S.CMD_ORACLE_CHECK:      self.oracle_check,
                                                           S.CMD_NORMS:             self.norms,
                                                           S.CMD_AUDIT_PARTITION:   self.audit_partition,
                                                           S.CMD_AUDIT_PARAMETRIX:  self.audit_parametrix,
                                                           S.CMD_MAXPRINCIPLE:      self.maxprinciple,
                                                           S.CMD_SEMILINEAR:        self.semilinear}
        self.out_dir.mkdir(parents=True, exist_ok=True)
        app                                             = PhiHeatApplication.app()
        app.reset_stage_timings()
        manifest                                        = RunManifest(subcommand, self.config.to_dict(), self.out_dir)
        try:
            handlers[subcommand](manifest)
            if self.xlsx and len(self.frames) > 0:
                with self.stage("workbook"):
                    self.write_workbook(manifest)
        except PhiHeatError as ex:
            manifest.fail(self.current_stage, ex)
            app.log("Stage '" + str(self.current_stage) + "' failed: " + str(ex), PhiHeat_Logger.LEVEL_ERROR)
        manifest.stage_seconds                          = app.stage_timings()
        path                                            = manifest.save()
        app.log("Run '" + subcommand + "' " + manifest.status + ", manifest in " + str(path), PhiHeat_Logger.LEVEL_INFO)
        return manifest

    def stage(self, name):
        self.current_stage                              = name
        return Profiler(name)

    def write_csv(self, frame, name, manifest):
        path                                            = self.out_dir / name
        frame.to_csv(path, index=False)
        manifest.add_output(path)
        self.frames[name]                               = frame

    def write_workbook(self, manifest):
        path                                            = self.out_dir / PhiHeatStatics.SUMMARY_WORKBOOK
        workbook                                        = _xlsxwriter.Workbook(str(path))
        writer                                          = ReportWriter()
        for name, frame in self.frames.items():
            worksheet                                   = workbook.add_worksheet(Path(name).stem[:31])
            writer.populate_excel_worksheet(frame, workbook, worksheet)
        workbook.close()
        manifest.add_output(path)

    # Shared building blocks
    #
    def assemble(self, config):
        with self.stage("assembly"):
            model                                       = config.model()
            grid                                        = config.grid(model)
            laplacian                                   = LaplacianAssembler().assemble_laplacian(model, grid)
        return model, grid, laplacian

    def neumann_solver(self, config, laplacian, coefficient, epsilon):
        grid                                            = laplacian.grid
        axis                                            = coefficient.time_axis
        partition                                       = PartitionConfig.lattice(grid.model, epsilon, config["vartheta"])
        family                                          = BumpFamily(grid, partition)
        parametrix                                      = Parametrix(laplacian, family, coefficient, config["theta"])
        settings                                        = ParametrixConfig(partition, axis.T, axis.nt, delta=config["delta"],
                                                                           neumann_max=config["neumann_max"],
                                                                           probe_count=config["probe_count"],
                                                                           tol=config["tol"], theta=config["theta"],
                                                                           norm_spec=config.norm_spec())
        return NeumannSolver(parametrix, settings)

    def measured_solver(self, config, laplacian, axis, epsilon):
        coefficient                                     = config.coefficient(laplacian.grid, axis)
        with self.stage("parametrix"):
            solver                                      = self.neumann_solver(config, laplacian, coefficient, epsilon)
        with self.stage("norm_estimation"):
            solver.measure()
        return solver

    # Subcommands
    #
    def solve(self, manifest):
        S                                               = PhiHeatStatics
        config                                          = self.config
        model, grid, laplacian                          = self.assemble(config)
        axis                                            = config.time_axis()
        source                                          = config.field("rhs_expr", grid, axis)
        u0                                              = config.field("u0_expr", grid, axis).at(0)
        solver                                          = self.measured_solver(config, laplacian, axis, config["eps"])
        homogeneous                                     = HomogeneousSolver(solver)
        initial                                         = u0 if _np.any(u0) else None

        with self.stage("neumann_solve"):
            lam                                         = config["glue_lambda"]
            if lam is None:
                u, reports                              = homogeneous.solve(source, initial)
            else:
                nl                                      = axis.steps_for(lam)
                n0                                      = (axis.nt + nl + 1) // 2
                first, reports                          = homogeneous.window(0, n0).solve(source.window(0, n0), initial)
                glued                                   = TimeGluer(homogeneous).extend_in_time(source, first, lam, horizon=axis.T)
                u                                       = glued.field

        with self.stage("output"):
            self.write_csv(self.solution_frame(u), S.SOLUTION_CSV, manifest)
            history                                     = reports[0].residual_history
            self.write_csv(_pd.DataFrame({S.TERM_COL: range(len(history)), S.RESIDUAL_COL: history}),
                           S.RESIDUALS_CSV, manifest)
        manifest.add_check("neumann_converged", all(r.converged for r in reports))
        manifest.add_check("initial_value_exact", float(_np.max(_np.abs(u.at(0) - u0))) <= 1e-12 * max(1.0, float(_np.max(_np.abs(u0)))))

    def solution_frame(self, u):
        '''
        :return: the final time slice of ``u``, one row per grid node
        '''
        S                                               = PhiHeatStatics
        points                                          = u.grid.points()
        columns                                         = {S.T_COL: _np.full(len(points), u.time_axis.times[-1])}
        for name, j in zip(RunConfig.FIELD_VARIABLES, range(points.shape[1])):
            columns[name]                               = points[:, j]
        columns[S.U_COL]                                = u.at(len(u.time_axis) - 1).ravel()
        return _pd.DataFrame(columns)

    def oracle_check(self, manifest):
        S                                               = PhiHeatStatics
        config                                          = self.config
        model, grid, laplacian                          = self.assemble(config)
        axis                                            = config.time_axis()
        comparison                                      = OracleComparison(laplacian, config["theta"])
        with self.stage("oracle"):
            frame                                       = comparison.compare(axis.T, axis.nt, t0=config["oracle_t0"],
                                                                             r0=config["oracle_r0"])
        with self.stage("mass"):
            u0, _                                       = comparison.blob(config["oracle_t0"], comparison.centre(config["oracle_r0"]))
            prop                                        = Propagator(laplacian, 1.0, axis.h, config["theta"])
            mass                                        = OracleComparison.mass_report(prop, u0, axis.T)
        self.write_csv(frame, S.ORACLE_CSV, manifest)
        self.write_csv(mass, S.MASS_CSV, manifest)
        manifest.add_check("oracle_sup_err", float(frame[S.SUP_ERR_COL].max()) <= self.ORACLE_SUP_ERR_BOUND)
        manifest.add_check("mass_drift", float(mass[S.DRIFT_COL].abs().max()) <= self.MASS_DRIFT_BOUND)
        if config["oracle_levels"] < 2:
            return

        with self.stage("refinement"):
            refinement                                  = comparison.refinement(axis.T, axis.nt, config["oracle_levels"],
                                                                                t0=config["oracle_t0"], r0=config["oracle_r0"])
        self.write_csv(refinement, S.ORACLE_REFINEMENT_CSV, manifest)
        order                                           = OracleComparison.convergence_order(refinement)
        PhiHeatApplication.app().log("Oracle error decays with order " + "{:.3f}".format(order) + " over "
                                     + str(len(refinement)) + " grids", PhiHeat_Logger.LEVEL_INFO)
        manifest.add_check("oracle_convergence_order", bool(abs(order - self.CONVERGENCE_ORDER) <= self.SCALING_SLOPE_SLACK))

    def norms(self, manifest):
        S                                               = PhiHeatStatics
        config                                          = self.config
        model, grid, laplacian                          = self.assemble(config)
        axis                                            = config.time_axis()
        fields                                          = [config.field(key, grid, axis) for key in ["u0_expr", "rhs_expr", "a_expr"]]
        prop                                            = Propagator(laplacian, 1.0, axis.h, config["theta"])
        heat                                            = prop.trajectory(fields[0].at(0), axis.nt)
        fields.append(SpaceTimeField(heat.reshape((len(axis),) + tuple(grid.shape)), grid, axis, label="heat(u0_expr)"))

        rows                                            = []
        ks                                              = [0, 1, 2] if len(axis) >= 3 else [0, 1]
        with self.stage("norms"):
            for field in fields:
                for k in ks:
                    report                              = self.estimator.k_alpha_norm(field, config.norm_spec(k=k))
                    rows.append({S.FIELD_ID_COL:        field.label,
                                 S.K_COL:               k,
                                 S.ALPHA_COL:           config["alpha"],
                                 S.GAMMA_COL:           config["gamma"],
                                 S.SUP_NORM_COL:        report.sup_norm,
                                 S.SEMINORM_COL:        report.alpha_seminorm,
                                 S.TOTAL_COL:           report.total,
                                 S.ARGMAX_PAIR_COL:     report.argmax_pair_text()})
        frame                                           = _pd.DataFrame(rows)
        self.write_csv(frame, S.NORMS_CSV, manifest)
        manifest.add_check("norms_finite", bool(_np.all(_np.isfinite(frame[S.TOTAL_COL]))))

    def audit_partition(self, manifest):
        S                                               = PhiHeatStatics
        config                                          = self.config
        model                                           = config.model()
        grid                                            = config.grid(model)
        auditor                                         = PartitionAuditor(self.estimator)
        reports                                         = []
        with self.stage("partition_audit"):
            for eps in config.scalars("eps"):
                family                                  = BumpFamily(grid, PartitionConfig.lattice(model, eps, config["vartheta"]))
                report                                  = auditor.measure(family, config.norm_spec())
                reports.append(report)
                for name, message, witness in report.failures:
                    PhiHeatApplication.app().log("eps=" + str(eps) + ": " + name + " failed: " + message + " at "
                                                 + str(witness), PhiHeat_Logger.LEVEL_WARNING)
                manifest.add_check("partition_eps_" + str(eps), report.passed())
        self.write_csv(_pd.DataFrame([r.to_row() for r in reports]), S.PARTITION_CSV, manifest)
        if len(reports) >= 3:
            law                                         = PartitionAuditor.scaling_law(reports, config["alpha"])
            PhiHeatApplication.app().log("Seminorm scaling slope " + "{:.3f}".format(law["slope"]) + ", expected "
                                         + str(law["expected_slope"]), PhiHeat_Logger.LEVEL_INFO)
            manifest.add_check("seminorm_scaling", abs(law["slope"] - law["expected_slope"]) <= self.SCALING_SLOPE_SLACK)

    def audit_parametrix(self, manifest):
        S                                               = PhiHeatStatics
        config                                          = self.config
        model, grid, laplacian                          = self.assemble(config)

        rows                                            = []
        for eps in config.scalars("eps"):
            for T in config.scalars("T"):
                axis                                    = config.time_axis(T)
                solver                                  = self.measured_solver(config, laplacian, axis, eps)
                refusal                                 = ""
                try:
                    with self.stage("neumann_solve"):
                        _, report                       = solver.neumann_solve(self.audit_source(config, solver))
                except (ContractionBudgetError, NoConvergenceError) as ex:
                    # Refused cells stay in the phase table
                    history                             = getattr(ex, "history", [])
                    report                              = ParametrixReport(eps, axis.T, solver.proxies, history, False, 0.0,
                                                                           consistency_err=solver.consistency_err)
                    refusal                             = type(ex).__name__
                    PhiHeatApplication.app().log("Cell eps=" + str(eps) + ", T=" + str(T) + " refused: "
                                                 + str(ex).split("\n")[0], PhiHeat_Logger.LEVEL_WARNING)
                row                                     = report.to_row(mask_timings=config["mask_timings"])
                row[S.CONSISTENCY_COL]                  = report.consistency_err
                row[S.REFUSAL_COL]                      = refusal
                rows.append(row)
        phase                                           = _pd.DataFrame(rows)
        self.write_csv(phase, S.PHASE_CSV, manifest)

        scaling_law                                     = ErrorScaling(config["alpha"])
        scaling                                         = scaling_law.fit(phase)
        self.write_csv(scaling, S.ERROR_SCALING_CSV, manifest)
        for name, passed in scaling_law.checks(scaling).items():
            manifest.add_check(name, passed)

        def measure(eps, T):
            return self.measured_solver(config, laplacian, config.time_axis(T), eps).proxy

        # Budgets the capped series cannot meet are tightened
        delta                                           = min(config["delta"], NeumannSolver.largest_proxy(config["tol"], config["neumann_max"]))
        budget                                          = ContractionBudget(measure, delta)
        eps0, T0                                        = config.scalars("eps")[0], config.scalars("T")[0]
        try:
            with self.stage("budget_search"):
                eps, T, proxy                           = budget.search(eps0, T0)
        except ContractionBudgetError as ex:
            self.write_csv(budget.history_frame(), S.BUDGET_CSV, manifest)
            PhiHeatApplication.app().log(str(ex), PhiHeat_Logger.LEVEL_WARNING)
            manifest.add_check("budget_found", False)
            return
        self.write_csv(budget.history_frame(), S.BUDGET_CSV, manifest)
        manifest.add_check("budget_found", True)

        solver                                          = self.measured_solver(config, laplacian, config.time_axis(T), eps)
        with self.stage("neumann_solve"):
            _, report                                   = solver.neumann_solve(self.audit_source(config, solver))
        history                                         = report.residual_history
        self.write_csv(_pd.DataFrame({S.TERM_COL: range(len(history)), S.RESIDUAL_COL: history}), S.RESIDUALS_CSV, manifest)
        manifest.add_check("neumann_converged", report.converged)
        floor                                           = config["tol"]
        ratios                                          = [history[k + 1] / history[k] for k in range(len(history) - 1)
                                                           if history[k] > floor]
        manifest.add_check("residual_ratio", all(r <= proxy + self.RESIDUAL_RATIO_SLACK for r in ratios))

    def audit_source(self, config, solver):
        '''
        :return: the datum ``rhs_expr``, or the first probe of the cell when that datum vanishes
        '''
        parametrix                                      = solver.parametrix
        source                                          = config.field("rhs_expr", parametrix.grid, parametrix.time_axis)
        if _np.any(source.values):
            return source
        probes                                          = ProbeSet(parametrix.grid, parametrix.time_axis, solver.config.probe_count,
                                                                   solver.config.norm_spec, seed=config["seed"]).probes()
        return probes[0][1]

    def maxprinciple(self, manifest):
        S                                               = PhiHeatStatics
        config                                          = self.config
        model, grid, laplacian                          = self.assemble(config)
        axis                                            = config.time_axis()
        u0                                              = config.field("u0_expr", grid, axis).at(0)
        solver                                          = self.measured_solver(config, laplacian, axis, config["eps"])
        homogeneous                                     = HomogeneousSolver(solver)
        principle                                       = MaximumPrinciple()

        with self.stage("homogeneous_solve"):
            u, report                                   = homogeneous.homogeneous_solve(u0)
            again, _                                    = homogeneous.homogeneous_solve(u0)
            zero, _                                     = homogeneous.solve(SpaceTimeField.zeros(grid, axis))
        tol                                             = max(1e-10, 10 * report.residual_final)
        with self.stage("monitor"):
            frame, trace                                = principle.report(u, self.OMORI_YAU_INDEX, laplacian, tol=tol)
        self.write_csv(frame, S.MAXPRINCIPLE_CSV, manifest)

        size                                            = max(1.0, float(_np.max(_np.abs(u.values))))
        manifest.add_check("sup_non_increasing", trace.sup_non_increasing())
        manifest.add_check("inf_non_decreasing", trace.inf_non_decreasing())
        manifest.add_check("zero_data", float(_np.max(_np.abs(zero.values))) <= self.ZERO_DATA_BOUND)
        manifest.add_check("uniqueness", principle.uniqueness_gap(u, again) <= 2 * config["tol"] * size)

    def semilinear(self, manifest):
        S                                               = PhiHeatStatics
        config                                          = self.config
        model, grid, laplacian                          = self.assemble(config)
        axis                                            = config.time_axis()
        source                                          = config.field("rhs_expr", grid, axis)
        rhs                                             = NonlinearRHS.from_expressions(config["F1_expr"], config["F2_expr"],
                                                                                        source=source)
        solver                                          = self.measured_solver(config, laplacian, axis, config["eps"])
        picard                                          = PicardSolver(solver, rhs, estimator=self.estimator)

        with self.stage("picard"):
            state                                       = picard.picard_solve(config["T_prime"], config["tol"], config["max_iter"])
        self.write_csv(state.to_frame(), S.PICARD_CSV, manifest)
        manifest.add_check("picard_converged", state.converged)
        factor                                          = state.contraction_factor()
        if _np.isfinite(factor):
            manifest.add_check("contraction", factor < 1)

        n                                               = len(state.u.time_axis) - 1
        with self.stage("uniqueness"):
            start, _                                    = solver.neumann_solve(rhs.evaluate(SpaceTimeField.zeros(grid, axis)))
            other                                       = picard.picard_solve(state.T_prime, config["tol"], config["max_iter"],
                                                                              initial=start)
        if other.T_prime == state.T_prime:
            size                                        = max(1.0, float(_np.max(_np.abs(state.u.values))))
            floor                                       = max(config["tol"], PicardSolver.SOLVE_NOISE_FACTOR * state.reports[-1].residual_final)
            gap                                         = MaximumPrinciple().uniqueness_gap(state.u, other.u)
            manifest.add_check("uniqueness", gap <= 2 * floor * size)

        with self.stage("explicit_reference"):
            coefficient                                 = config.coefficient(grid, axis).window(0, n)
            reference                                   = ExplicitReferenceStepper(laplacian, coefficient, rhs.window(0, n)).solve()
        scale                                           = max(float(_np.max(_np.abs(reference.values))), 1e-300)
        agreement                                       = float(_np.max(_np.abs(reference.values - state.u.values))) / scale
        PhiHeatApplication.app().log("Picard solution vs explicit reference: relative sup difference "
                                     + "{:.3e}".format(agreement), PhiHeat_Logger.LEVEL_INFO)
        if _np.any(reference.values):
            manifest.add_check("explicit_reference", agreement <= self.EXPLICIT_AGREEMENT_BOUND)

        with self.stage("lipschitz_audit"):
            samples                                     = [state.u * 0.0, state.u, state.u * 0.5, state.u * -0.5]
            frame                                       = LipschitzAuditor(self.estimator).lipschitz_audit(rhs, samples, config.norm_spec())
        self.write_csv(frame, S.LIPSCHITZ_CSV, manifest)
