import math
import random

import mpmath as mp
import pytest

from thetaq import (
    DomainError,
    PoleError,
    make_param,
    param_from_nome,
    qsquared_param,
    qtrig_crosscheck,
    qtrig_product,
    qtrig_product_any,
    qtrig_theta,
    tau_prime,
    theta_null,
)

TAUS = (1.1j, 0.3 + 1.1j, 1.3j)


def test_tan_q_at_quarter_pi_is_one():
    for tau in TAUS:
        v = qtrig_theta("tan_q", math.pi / 4, make_param(tau))
        assert abs(v - 1) <= 1e-12


def test_tan_q_zero_and_cot_q_pole():
    p = make_param(1.3j)
    assert abs(qtrig_theta("tan_q", 0.0, p)) < 1e-14
    with pytest.raises(PoleError):
        qtrig_theta("cot_q", 0.0, p)
    with pytest.raises(PoleError):
        qtrig_theta("tan_q", math.pi / 2, param_from_nome(0.4))


def test_ssn_at_zero_is_theta_constant_ratio():
    # tau = i is self-dual, so tau' = i and the constants are the frozen ones
    p = make_param(1j)
    got = qtrig_theta("ssn_q", 0.0, p)
    pp = tau_prime(p)
    want = theta_null(4, pp) / theta_null(3, pp)
    assert abs(got - want) < 1e-14
    assert abs(got - 0.9135791381561168 / 1.086434811213308) < 1e-13


def test_sin_cos_normalization():
    for tau in TAUS:
        p = make_param(tau)
        assert abs(qtrig_theta("cos_q", 0.0, p) - 1) < 1e-14
        assert abs(qtrig_theta("ccs_q", 0.0, p) - 1) < 1e-14
        assert abs(qtrig_theta("sin_q", 0.0, p)) < 1e-14


def test_cos_q_is_shifted_sin_q():
    rng = random.Random(9)
    for q in (0.3, 0.5, 0.8):
        p = param_from_nome(q)
        for _ in range(20):
            z = rng.uniform(0.0, math.pi / 2)
            c = qtrig_theta("cos_q", z, p)
            for s in (qtrig_theta("sin_q", math.pi / 2 - z, p),
                      qtrig_theta("sin_q", math.pi / 2 + z, p)):
                assert abs(c - s) <= 1e-12 * max(1.0, abs(c))


def test_tan_cot_are_reciprocal():
    rng = random.Random(10)
    for _ in range(40):
        tau = complex(rng.uniform(-0.4, 0.4), rng.uniform(0.8, 1.6))
        z = complex(rng.uniform(0.2, 1.3), rng.uniform(-0.3, 0.3))
        p = make_param(tau)
        t = qtrig_theta("tan_q", z, p)
        c = qtrig_theta("cot_q", z, p)
        assert abs(t * c - 1) <= 1e-12


def test_ssn_ccs_quotient_definitions():
    # ssn_q * sin_q = sin_{q^2} and ccs_q * cos_q = cos_{q^2}
    rng = random.Random(12)
    for _ in range(30):
        tau = complex(rng.uniform(-0.3, 0.3), rng.uniform(0.8, 1.5))
        z = complex(rng.uniform(0.1, 1.3), rng.uniform(-0.25, 0.25))
        p = make_param(tau)
        p2 = qsquared_param(p)
        lhs = qtrig_theta("ssn_q", z, p) * qtrig_theta("sin_q", z, p)
        rhs = qtrig_theta("sin_q", z, p2)
        assert abs(lhs - rhs) <= 1e-11 * max(1.0, abs(rhs))
        lhs = qtrig_theta("ccs_q", z, p) * qtrig_theta("cos_q", z, p)
        rhs = qtrig_theta("cos_q", z, p2)
        assert abs(lhs - rhs) <= 1e-11 * max(1.0, abs(rhs))


def test_product_path_basics():
    assert abs(qtrig_product("sin_q", 0.0, 0.5)) < 1e-14
    assert abs(qtrig_product("cos_q", 0.0, 0.5) - 1) < 1e-14
    # sin_q(pi/2) = cos_q(0) = 1
    assert abs(qtrig_product("sin_q", 0.5, 0.5) - 1) < 1e-13
    for q in (0.3, 0.7):
        assert abs(qtrig_product("tan_q", 0.25, q) - 1) <= 1e-12
    with pytest.raises(DomainError):
        qtrig_product("sin_q", 0.3, 1.1)
    with pytest.raises(DomainError):
        qtrig_product("ssn_q", 0.3, 0.5)
    with pytest.raises(PoleError):
        qtrig_product("cot_q", 0.0, 0.5)


def test_crosscheck_every_kind():
    rng = random.Random(21)
    kinds = ("sin_q", "cos_q", "tan_q", "cot_q", "ssn_q", "ccs_q")
    for kind in kinds:
        for _ in range(25):
            tau = rng.choice(TAUS)
            z = complex(rng.uniform(0.15, 1.35), rng.uniform(-0.2, 0.2))
            p = make_param(tau)
            diff = qtrig_crosscheck(kind, z, p)
            scale = max(1.0, abs(qtrig_theta(kind, z, p)))
            assert diff <= 1e-11 * scale, (kind, z, tau, diff)


def test_crosscheck_examples():
    assert qtrig_crosscheck("sin_q", 0.7, make_param(1.1j)) <= 1e-11
    assert qtrig_crosscheck("tan_q", math.pi / 4, make_param(1.1j)) <= 1e-12
    # both cos_q paths equal 1 at z = 0
    p = make_param(1.1j)
    assert abs(qtrig_theta("cos_q", 0.0, p) - 1) < 1e-14
    assert abs(qtrig_product_any("cos_q", 0.0, p.q) - 1) < 1e-14


def test_unknown_kind_rejected():
    with pytest.raises(DomainError):
        qtrig_theta("sec_q", 0.3, make_param(1j))


def _mp_tan_q_real(z, qprime, terms=8):
    num = mp.mpf(0)
    den = mp.mpf(0)
    for k in range(terms):
        w = qprime ** (k * (k + 1))
        s = -1 if k % 2 else 1
        num += s * w * mp.sin((2 * k + 1) * z)
        den += w * mp.cos((2 * k + 1) * z)
    return num / den


def test_classical_limit_of_tan_q():
    # |tan_q(0.6) - tan(0.6)| shrinks superexponentially along q -> 1; the
    # gap sits far below double rounding, so measure it in high precision.
    gaps = []
    for qv in (0.9, 0.99, 0.999):
        lnq = -math.log(qv)
        digits = int(2 * math.pi ** 2 / lnq / math.log(10)) + 60
        with mp.workdps(digits):
            qprime = mp.exp(-mp.pi ** 2 / mp.log(1 / mp.mpf(qv)))
            gaps.append(abs(_mp_tan_q_real(mp.mpf("0.6"), qprime) - mp.tan(mp.mpf("0.6"))))
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-2
    # and in doubles the two values are simply indistinguishable
    p = param_from_nome(0.9)
    assert abs(qtrig_theta("tan_q", 0.6, p) - math.tan(0.6)) < 1e-13
