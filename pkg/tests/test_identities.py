import math
import random

import pytest

from thetaq import (
    DomainError,
    IDENTITY_IDS,
    SamplePlan,
    UnsupportedFormal,
    certificate_text,
    classical_residuals,
    constancy_probe,
    formal_certify,
    formal_relations,
    identity_info,
    make_param,
    numeric_residual,
    qsquared_param,
    qtrig_theta,
    report_as_dict,
    run_suite,
    series_equal,
    thm2_sides,
    verify_numeric,
)

PLAN = SamplePlan(seed=42, count=60)


def test_registry_contents():
    expected = {
        "quasi_period_1", "quasi_period_2", "quasi_period_3", "quasi_period_4",
        "half_period_1", "half_period_2", "half_period_3", "half_period_4",
        "duplication_12", "duplication_23",
        "triple_product_1", "triple_product_2", "triple_product_3",
        "triple_product_4",
        "thm2", "thm1_tan", "thm1_cot", "cor_cot", "cor_tan",
        "cosq_shift", "f_constancy",
        "classical_limit_tan", "classical_limit_cot",
    }
    assert set(IDENTITY_IDS) == expected
    with pytest.raises(DomainError):
        identity_info("thm3")


def test_thm2_normalization_point():
    # x = y = pi/4 is the point pinning the constant to 1
    res = numeric_residual("thm2", math.pi / 4, math.pi / 4, 1.1j)
    assert res <= 1e-13


def test_thm2_degenerate_point():
    # x = 0 reduces one side to the vanishing combination
    res = numeric_residual("thm2", 0.0, 0.77, 0.3 + 1.1j)
    assert res <= 1e-12


def test_thm1_tan_equal_arguments():
    for tau in (1.1j, 0.5 + 0.9j):
        res = numeric_residual("thm1_tan", 0.62, 0.62, tau)
        assert res <= 1e-11


def test_thm1_cot_follows_from_thm1_tan_by_division():
    rng = random.Random(17)
    p = make_param(1.1j)
    p2 = qsquared_param(p)
    for _ in range(25):
        x = complex(rng.uniform(0.3, 1.1), rng.uniform(-0.2, 0.2))
        y = complex(rng.uniform(0.3, 1.1), rng.uniform(-0.2, 0.2))
        z = math.pi - x - y
        ss = qtrig_theta("ssn_q", x - y, p)
        cc = qtrig_theta("ccs_q", x - y, p)
        tx = qtrig_theta("tan_q", x, p2)
        ty = qtrig_theta("tan_q", y, p2)
        tz = qtrig_theta("tan_q", z, p)
        cx = qtrig_theta("cot_q", x, p2)
        cy = qtrig_theta("cot_q", y, p2)
        cz = qtrig_theta("cot_q", z, p)
        prod = tx * ty * tz
        if abs(prod) < 1e-6:
            continue
        raw_tan = abs((cc * tx + cc * ty + ss * tz) - ss * prod)
        raw_cot = abs((ss * cx * cy + cc * cy * cz + cc * cz * cx) - ss)
        assert raw_cot <= raw_tan / abs(prod) + 1e-12


def test_probe_examples():
    assert abs(constancy_probe(math.pi / 4, math.pi / 4, 1.2j) - 1) <= 1e-12
    rng = random.Random(8)
    values = []
    for _ in range(50):
        x = complex(rng.uniform(0.2, 2.2), rng.uniform(0.0, 1.0))
        values.append(constancy_probe(x, 0.7, 1.2j))
    mean = sum(values) / len(values)
    var = sum(abs(v - mean) ** 2 for v in values) / (len(values) - 1)
    assert abs(mean - 1) <= 1e-10
    assert math.sqrt(var) <= 1e-10
    # periodicity of the quotient
    x = 0.83 + 0.2j
    a = constancy_probe(x, 0.7, 1.2j)
    b = constancy_probe(x + math.pi, 0.7, 1.2j)
    assert abs(a - b) <= 1e-11


def test_verify_numeric_passes_registry():
    for name in ("quasi_period_2", "half_period_3", "duplication_23",
                 "triple_product_1", "thm2", "thm1_tan", "thm1_cot",
                 "cor_cot", "cor_tan", "cosq_shift"):
        report = verify_numeric(name, PLAN)
        assert report.passed, (name, report.failures[:2])
        assert report.samples == PLAN.count
        assert report.max_abs_residual <= 1e-10


def test_verify_numeric_is_deterministic():
    a = report_as_dict(verify_numeric("thm1_tan", PLAN))
    b = report_as_dict(verify_numeric("thm1_tan", PLAN))
    assert a == b
    c = report_as_dict(verify_numeric("thm1_tan", SamplePlan(seed=43, count=60)))
    assert c["params"] != a["params"] or c["max_abs_residual"] != a["max_abs_residual"]


def test_verify_numeric_tolerance_floor():
    report = verify_numeric("thm1_tan", SamplePlan(seed=1, count=10),
                            tolerance=1e-18)
    assert not report.passed
    assert report.failures and "residual" in report.failures[0]


def test_convergence_failure_is_recorded_not_raised():
    plan = SamplePlan(seed=3, count=5, tau_set=(1e-5j,))
    report = verify_numeric("thm2", plan)
    assert not report.passed
    assert any("error" in f for f in report.failures)
    reports = run_suite(plan)
    assert len(reports) == len(run_suite(SamplePlan(seed=3, count=5)))


def test_formal_certify_registry():
    for name, order in (("thm2", 12), ("duplication_12", 20),
                        ("duplication_23", 20), ("triple_product_2", 12),
                        ("quasi_period_4", 12), ("half_period_1", 12)):
        report = formal_certify(name, order)
        assert report.passed, (name, report.failures)
        assert report.certified_order >= order


def test_thm2_prefactors_are_one_full_power():
    lhs, rhs = thm2_sides(12)
    assert lhs.quarter_prefactor == 4
    assert rhs.quarter_prefactor == 4
    assert series_equal(lhs, rhs).equal


def test_flipped_sign_fails_with_lowest_grade_mismatch():
    lhs, rhs = thm2_sides(12, flip_sign=True)
    match = series_equal(lhs, rhs)
    assert not match.equal
    # nothing below the shared prefactor exists, so the first mismatch sits
    # at the very first grade, one full power of q
    assert match.mismatch.quarter_grade == 4


def test_unsupported_formal():
    for name in ("thm1_tan", "thm1_cot", "cor_cot", "cor_tan",
                 "cosq_shift", "f_constancy", "classical_limit_tan"):
        with pytest.raises(UnsupportedFormal):
            formal_relations(name, 8)
        with pytest.raises(UnsupportedFormal):
            formal_certify(name, 8)


def test_certificate_text_structure():
    report, text = certificate_text("duplication_23", 6)
    assert report.passed
    assert "status: pass" in text
    assert "lhs (prefactor q^(1/2))" in text and "rhs (prefactor q^(1/2))" in text
    assert "q^(1/2)    u          2" in text    # leading coefficient of each side
    report2, text2 = certificate_text("duplication_23", 6)
    assert text == text2  # byte-stable


def test_classical_residuals_strictly_decreasing():
    for which in ("tan", "cot"):
        r = classical_residuals(which)
        assert r[0] > r[1] > r[2]
        assert r[2] < 1e-2
        assert r[0] > 0


def test_run_suite_all_pass():
    plan = SamplePlan(seed=11, count=40)
    reports = run_suite(plan)
    modes = {(r.id, r.mode) for r in reports}
    for name in IDENTITY_IDS:
        info = identity_info(name)
        for mode in info.modes:
            assert (name, mode) in modes
    bad = [(r.id, r.mode, r.failures[:1]) for r in reports if not r.passed]
    assert not bad, bad


def test_numeric_residual_validation():
    with pytest.raises(DomainError):
        numeric_residual("thm1_tan", 0.5, None, 1.1j)   # needs y
    with pytest.raises(DomainError):
        numeric_residual("classical_limit_tan", 0.5, None, 1.1j)
