import abc


class PhiHeatStatics(abc.ABC):

    '''
    Represents a static enum collection of names shared across the ``phi_heat`` package: report columns,
    output file names, subcommand names and error-operator labels.
    '''
    def __init__(self):
        pass

    # Model identifiers
    #
    MODEL_A                                             = "A"
    MODEL_B                                             = "B"

    # Labels of error operators
    #
    R1                                                  = "R1"
    R2                                                  = "R2"
    R3                                                  = "R3"
    R_TOTAL                                             = "R_total"
    ERROR_LABELS                                        = [R1, R2, R3, R_TOTAL]

    # Subcommands
    #
    CMD_SOLVE                                           = "solve"
    CMD_ORACLE_CHECK                                    = "oracle-check"
    CMD_NORMS                                           = "norms"
    CMD_AUDIT_PARTITION                                 = "audit-partition"
    CMD_AUDIT_PARAMETRIX                                = "audit-parametrix"
    CMD_MAXPRINCIPLE                                    = "maxprinciple"
    CMD_SEMILINEAR                                      = "semilinear"
    SUBCOMMANDS                                         = [CMD_SOLVE, CMD_ORACLE_CHECK, CMD_NORMS, CMD_AUDIT_PARTITION,
                                                           CMD_AUDIT_PARAMETRIX, CMD_MAXPRINCIPLE, CMD_SEMILINEAR]

    # Output files
    #
    MANIFEST_FILE                                       = "manifest.yaml"
    SUMMARY_WORKBOOK                                    = "summary.xlsx"
    SOLUTION_CSV                                        = "solution.csv"
    RESIDUALS_CSV                                       = "residuals.csv"
    ORACLE_CSV                                          = "oracle.csv"
    MASS_CSV                                            = "mass.csv"
    ORACLE_REFINEMENT_CSV                               = "oracle_refinement.csv"
    NORMS_CSV                                           = "norms.csv"
    PARTITION_CSV                                       = "partition.csv"
    PHASE_CSV                                           = "phase.csv"
    BUDGET_CSV                                          = "budget.csv"
    ERROR_SCALING_CSV                                   = "error_scaling.csv"
    MAXPRINCIPLE_CSV                                    = "maxprinciple.csv"
    PICARD_CSV                                          = "picard.csv"
    LIPSCHITZ_CSV                                       = "lipschitz.csv"

    # Columns of oracle.csv
    #
    T_COL                                               = "t"
    SUP_ERR_COL                                         = "sup_err"
    L2_ERR_COL                                          = "l2_err"
    MASS_COL                                            = "mass"

    # Columns of oracle_refinement.csv, next to sup_err and l2_err
    #
    LEVEL_COL                                           = "level"
    NX_COL                                              = "nx"
    SPACING_COL                                         = "h"
    STEPS_COL                                           = "nt"

    # Extra columns of mass.csv
    #
    DRIFT_COL                                           = "drift"
    LAYER_MASS_COL                                      = "truncation_layer_mass"

    # Columns of norms.csv
    #
    FIELD_ID_COL                                        = "field_id"
    K_COL                                               = "k"
    ALPHA_COL                                           = "alpha"
    GAMMA_COL                                           = "gamma"
    SUP_NORM_COL                                        = "sup_norm"
    SEMINORM_COL                                        = "seminorm"
    TOTAL_COL                                           = "total"
    ARGMAX_PAIR_COL                                     = "argmax_pair"

    # Columns of partition.csv
    #
    EPSILON_COL                                         = "epsilon"
    ANCHOR_COUNT_COL                                    = "anchor_count"
    MAX_OVERLAP_COL                                     = "max_overlap"
    DIAM_MAX_COL                                        = "diam_max"
    DIAM_BOUND_COL                                      = "diam_bound"
    SEMINORM_EPS_COL                                    = "seminorm_times_eps_alpha"
    PROPERTY_I_COL                                      = "property_I_ok"
    SUM_TO_ONE_COL                                      = "sum_to_one_max_err"
    K2_NORM_COL                                         = "k2_norm"

    # Columns of phase.csv
    #
    EPS_COL                                             = "eps"
    WINDOW_COL                                          = "T"
    R1_PROXY_COL                                        = "r1_proxy"
    R2_PROXY_COL                                        = "r2_proxy"
    R3_PROXY_COL                                        = "r3_proxy"
    R_TOTAL_PROXY_COL                                   = "r_total_proxy"
    CONVERGED_COL                                       = "converged"
    NEUMANN_TERMS_COL                                   = "neumann_terms"
    RESIDUAL_FINAL_COL                                  = "residual_final"
    SECONDS_COL                                         = "seconds"
    CONSISTENCY_COL                                     = "consistency_err"
    REFUSAL_COL                                         = "refusal"

    PROXY_COLUMNS                                       = {R1: R1_PROXY_COL, R2: R2_PROXY_COL,
                                                           R3: R3_PROXY_COL, R_TOTAL: R_TOTAL_PROXY_COL}

    # Columns of error_scaling.csv, next to eps
    #
    CELLS_COL                                           = "cells"
    R1_SLOPE_COL                                        = "r1_slope"
    R1_EXPECTED_SLOPE_COL                               = "r1_expected_slope"
    R2_SHRINK_COL                                       = "r2_worst_shrink"
    R3_SHRINK_COL                                       = "r3_worst_shrink"

    # Extra column of budget.csv, next to eps, T and r_total_proxy
    #
    ACCEPTED_COL                                        = "accepted"

    # Columns of residuals.csv
    #
    TERM_COL                                            = "k"
    RESIDUAL_COL                                        = "residual"

    # Columns of maxprinciple.csv
    #
    U_SUP_COL                                           = "u_sup"
    U_INF_COL                                           = "u_inf"
    SUP_FLAG_COL                                        = "sup_flag"
    INF_FLAG_COL                                        = "inf_flag"
    ARGMAX_X_COL                                        = "argmax_x"
    DEFICIT_VALUE_COL                                   = "deficit_value"
    DEFICIT_LAPLACIAN_COL                               = "deficit_laplacian"

    # Columns of picard.csv
    #
    ITERATE_COL                                         = "n"
    GAP_COL                                             = "gap"
    T_PRIME_COL                                         = "T_prime_current"

    # Columns of lipschitz.csv
    #
    PART_COL                                            = "part"
    STYLE_COL                                           = "style"
    NORM_COL                                            = "norm"
    C_MU_COL                                            = "c_mu"

    # Coordinate columns of solution.csv
    #
    U_COL                                               = "u"
