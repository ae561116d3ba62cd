import math                                                         as _math

import numpy                                                        as _np
import pytest

from phi_heat.partition.bump_family                                 import BumpFamily
from phi_heat.partition.partition_auditor                           import PartitionAuditor, PartitionAuditReport
from phi_heat.partition.partition_config                            import PartitionConfig
from phi_heat.partition.profile                                     import Profile
from phi_heat.spaces.norm_spec                                      import NormSpec
from phi_heat.util.phi_heat_errors                                  import AuditFailure, ConfigurationError, DomainError, \
                                                                           ParameterError


@pytest.mark.parametrize("s, expected", [(0.0, 1.0), (0.5, 1.0), (0.75, 0.5), (1.0, 0.0), (3.0, 0.0)])
def test_profile_values(s, expected):
    assert Profile().sigma(s) == pytest.approx(expected, abs=1e-15)


def test_profile_is_monotone_and_bounded():
    values                                              = Profile().evaluate(_np.linspace(0, 2, 2001))
    assert _np.all(_np.diff(values) <= 0)
    assert _np.all((values >= 0) & (values <= 1))


def test_profile_rejects_negative_arguments():
    with pytest.raises(DomainError):
        Profile().sigma(-0.1)


def test_profile_derivatives():
    profile                                             = Profile()
    s, h                                                = 0.7, 1e-6
    slope                                               = (profile.evaluate(s + h) - profile.evaluate(s - h)) / (2 * h)
    assert float(profile.derivative(s)) == pytest.approx(float(slope), rel=1e-6)
    curvature                                           = (profile.derivative(s + h) - profile.derivative(s - h)) / (2 * h)
    assert float(profile.derivative(s, order=2)) == pytest.approx(float(curvature), rel=1e-5)
    assert float(profile.derivative(0.25)) == 0.0
    assert float(profile.derivative(1.5, order=2)) == 0.0
    with pytest.raises(DomainError):
        profile.derivative(0.7, order=3)


def test_lattice_sizes(model_a, model_b):
    n                                                   = _math.ceil(2 * _math.pi / 0.5)
    assert PartitionConfig.lattice(model_a, 0.125, 0.5).anchor_count == n
    config                                              = PartitionConfig.lattice(model_b, 0.125, 0.5)
    assert config.anchor_count == n**2
    assert _np.all(config.anchors[:, 0] == 0)


def test_partition_config_validation():
    with pytest.raises(ParameterError):
        PartitionConfig(1.5, 0.5, [[0.0, 0.0]])
    with pytest.raises(ParameterError):
        PartitionConfig(0.125, 0.5, [[0.1, 0.0]])
    with pytest.raises(ParameterError):
        PartitionConfig(0.125, 0.5, _np.zeros((0, 2)))


def test_sum_of_bumps_is_the_radial_cutoff(family_a, grid_a):
    x                                                   = grid_a.coordinates()[0]
    eps                                                 = family_a.epsilon
    total                                               = family_a.phi_total()
    assert _np.max(_np.abs(total[x <= eps / 2] - 1.0)) <= 1e-12
    assert _np.all(total[x >= eps] == 0.0)
    assert _np.allclose(total, Profile().evaluate(x / eps), atol=1e-12)


def test_psi_hat_is_one_on_the_support_of_phi_hat(family_a):
    for q in range(family_a.anchor_count):
        phi_hat, psi_hat                                = family_a.raw_bumps(q)
        assert _np.all(psi_hat[phi_hat > 0] == 1.0)


def test_normalized_pair(family_a):
    phi, psi                                            = family_a.normalized_pair(0)
    assert _np.all(phi >= 0) and _np.all(psi >= 0)
    assert family_a.max_overlap() >= 1


def test_single_anchor_leaves_the_collar_uncovered(grid_a):
    family                                              = BumpFamily(grid_a, PartitionConfig(0.125, 0.5, [[0.0, 0.0]]))
    with pytest.raises(ConfigurationError):
        family.normalize()


def test_anchor_dimension_must_match_the_model(grid_b):
    with pytest.raises(ParameterError):
        BumpFamily(grid_b, PartitionConfig(0.125, 0.5, [[0.0, 0.0]]))


def test_diameter_bound_for_trivial_fibers():
    eps                                                 = 0.1
    assert PartitionAuditor.diameter_bound(1, 0, eps) == pytest.approx(PartitionAuditor.nominal_constant(1, 0) * eps)


def test_audit_passes_on_the_lattice_family(family_a):
    report                                              = PartitionAuditor().audit(family_a, NormSpec(0.5, pair_budget=1000))
    assert report.passed()
    assert report.property_I_ok
    assert report.sum_to_one_max_err <= 1e-12
    assert 0 < report.diam_max <= report.diam_bound
    assert _np.isfinite(report.k2_norm)
    row                                                 = report.to_row()
    assert row["anchor_count"] == family_a.anchor_count


def test_audit_raises_with_a_witness(family_a):
    class FailingAuditor(PartitionAuditor):
        def measure(self, family, spec):
            report                                      = super().measure(family, spec)
            report.failures.append(("property_IV", "forced", (1.0, 0.5)))
            return report

    with pytest.raises(AuditFailure) as info:
        FailingAuditor().audit(family_a, NormSpec(0.5, pair_budget=1000))
    assert info.value.witness == (1.0, 0.5)


def test_scaling_law_recovers_the_exponent():
    alpha                                               = 0.5
    reports                                             = []
    for eps in [0.25, 0.125, 0.0625]:
        report                                          = PartitionAuditReport()
        report.epsilon                                  = eps
        report.seminorm                                 = 3.0 * eps**-alpha
        report.seminorm_times_eps_alpha                 = report.seminorm * eps**alpha
        reports.append(report)
    law                                                 = PartitionAuditor.scaling_law(reports, alpha)
    assert law["slope"] == pytest.approx(-alpha)
    assert law["expected_slope"] == -alpha
    assert law["spread"] == pytest.approx(1.0)
