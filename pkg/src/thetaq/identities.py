"""Registry of the verified identities, numeric and formal checkers.

Each identity can be verified in one or both of two modes:

* numeric -- seeded random sampling of |LHS - RHS| normalized by
  max(1, |LHS|, |RHS|), with samples near poles resampled;
* formal  -- both sides rebuilt as exact GradedSeries and compared
  coefficient by coefficient (only identities free of division).

The classical-limit checks are the one exception to plain double
precision: the deviation of the q-deformed tangent from the ordinary one
shrinks superexponentially as q -> 1 and falls below the double rounding
floor well before q = 0.9, so those residuals are computed with mpmath at
an adaptive working precision that actually resolves them.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from typing import Optional

import mpmath as mp

from .errors import (
    ConvergenceError,
    DomainError,
    PoleError,
    ThetaQError,
    UnsupportedFormal,
)
from .formal import (
    Gaussian,
    GradedSeries,
    LaurentPoly,
    geometric_factors,
    grade_str,
    monomial_str,
    pochhammer_product,
    series_equal,
    shift_argument,
    shift_margin,
    theta_series,
)
from .params import DEFAULT_POLICY, ModularParam, TruncationPolicy, make_param
from .qtrig import qsquared_param, qtrig_theta
from .theta import (
    HALF_PERIOD_HAS_I,
    HALF_PERIOD_MAP,
    PI_SHIFT_SIGN,
    PI_TAU_SHIFT_SIGN,
    half_period_shift,
    theta_eval,
)

# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityInfo:
    name: str
    modes: tuple
    nvars: int            # sampled complex variables (0 = fixed-point check)
    constraint: Optional[str]
    tolerance: float
    description: str


def _info(name, modes, nvars, constraint, tolerance, description):
    return IdentityInfo(name, modes, nvars, constraint, tolerance, description)


REGISTRY: dict = {}
for _k in (1, 2, 3, 4):
    REGISTRY["quasi_period_%d" % _k] = _info(
        "quasi_period_%d" % _k, ("numeric", "formal"), 1, None, 1e-10,
        "theta%d shift laws for z+pi and z+pi*tau" % _k)
for _k in (1, 2, 3, 4):
    REGISTRY["half_period_%d" % _k] = _info(
        "half_period_%d" % _k, ("numeric", "formal"), 1, None, 1e-10,
        "theta%d(z+pi*tau/2) = mult * theta%d(z)" % (_k, HALF_PERIOD_MAP[_k]))
REGISTRY["duplication_12"] = _info(
    "duplication_12", ("numeric", "formal"), 1, None, 1e-10,
    "2 theta1(z|2tau) theta4(z|2tau) = theta2(0|tau) theta1(z|tau)")
REGISTRY["duplication_23"] = _info(
    "duplication_23", ("numeric", "formal"), 1, None, 1e-10,
    "2 theta2(z|2tau) theta3(z|2tau) = theta2(0|tau) theta2(z|tau)")
for _k in (1, 2, 3, 4):
    REGISTRY["triple_product_%d" % _k] = _info(
        "triple_product_%d" % _k, ("numeric", "formal"), 1, None, 1e-10,
        "theta%d series form equals its infinite product form" % _k)
REGISTRY["thm2"] = _info(
    "thm2", ("numeric", "formal"), 2, None, 1e-10,
    "four-factor theta identity linking nome q and q^2 in x, y")
REGISTRY["thm1_tan"] = _info(
    "thm1_tan", ("numeric",), 2, "pi", 1e-10,
    "q-tangent sum identity under x+y+z = pi")
REGISTRY["thm1_cot"] = _info(
    "thm1_cot", ("numeric",), 2, "pi", 1e-10,
    "q-cotangent pair identity under x+y+z = pi")
REGISTRY["cor_cot"] = _info(
    "cor_cot", ("numeric",), 2, "half_pi", 1e-10,
    "q-cotangent sum identity under x+y+z = pi/2")
REGISTRY["cor_tan"] = _info(
    "cor_tan", ("numeric",), 2, "half_pi", 1e-10,
    "q-tangent pair identity under x+y+z = pi/2")
REGISTRY["cosq_shift"] = _info(
    "cosq_shift", ("numeric",), 1, None, 1e-10,
    "cos_q z = sin_q(pi/2 - z) = sin_q(pi/2 + z)")
REGISTRY["f_constancy"] = _info(
    "f_constancy", ("numeric",), 1, None, 1e-10,
    "the elliptic quotient behind thm2 is identically 1")
REGISTRY["classical_limit_tan"] = _info(
    "classical_limit_tan", ("numeric",), 0, None, 1e-2,
    "tan-sum residual shrinks strictly along q = 0.9, 0.99, 0.999")
REGISTRY["classical_limit_cot"] = _info(
    "classical_limit_cot", ("numeric",), 0, None, 1e-2,
    "cot-pair residual shrinks strictly along q = 0.9, 0.99, 0.999")

IDENTITY_IDS = tuple(REGISTRY)

FORMAL_DEFAULT_ORDER = {"duplication_12": 20, "duplication_23": 20}
DEFAULT_FORMAL_ORDER = 12


def identity_info(identity: str) -> IdentityInfo:
    try:
        return REGISTRY[identity]
    except KeyError:
        raise DomainError("unknown identity %r (choose from %s)"
                          % (identity, ", ".join(IDENTITY_IDS))) from None


# ---------------------------------------------------------------------------
# sampling plan and reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SamplePlan:
    """Seeded sampling domain for the numeric checks."""

    seed: int = 42
    count: int = 500
    x_box: tuple = (0.25 - 0.3j, 1.15 + 0.3j)
    y_box: tuple = (0.25 - 0.3j, 1.15 + 0.3j)
    tau_set: tuple = (1.1j, 0.3 + 1.1j, 0.5 + 0.9j)

    def __post_init__(self):
        if self.count < 1:
            raise DomainError("sample count must be >= 1")
        for tau in self.tau_set:
            if not complex(tau).imag > 0:
                raise DomainError("all tau must lie in the upper half-plane")


DEFAULT_PLAN = SamplePlan()

# The constancy probe holds y and tau fixed while x walks a box chosen to
# stay clear of the four zeros of the denominator.
PROBE_Y = 0.7
PROBE_TAU = 1.2j
PROBE_BOX = (0.2 + 0.0j, 2.2 + 1.0j)
PROBE_COUNT = 50

CLASSICAL_Q = (0.9, 0.99, 0.999)
CLASSICAL_X = 0.7
CLASSICAL_Y = 1.1


@dataclass
class IdentityReport:
    """Outcome of one identity verification run."""

    id: str
    mode: str
    status: str
    samples: int = 0
    max_abs_residual: float = 0.0
    certified_order: int = 0
    params: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def report_as_dict(report: IdentityReport) -> dict:
    return {
        "id": report.id,
        "mode": report.mode,
        "params": report.params,
        "samples": report.samples,
        "max_abs_residual": report.max_abs_residual,
        "certified_order": report.certified_order,
        "status": report.status,
        "failures": report.failures,
    }


# ---------------------------------------------------------------------------
# numeric side
# ---------------------------------------------------------------------------


def _pairs_quasi(kind: int, z: complex, p: ModularParam, policy) -> list:
    base = theta_eval(kind, z, p, policy)
    with_pi = theta_eval(kind, z + math.pi, p, policy)
    mult = PI_TAU_SHIFT_SIGN[kind] / p.q * cmath.exp(-2j * z)
    with_tau = theta_eval(kind, z + math.pi * p.tau, p, policy)
    return [(with_pi, PI_SHIFT_SIGN[kind] * base), (with_tau, mult * base)]


def _pairs_half(kind: int, z: complex, p: ModularParam, policy) -> list:
    shifted = theta_eval(kind, z + math.pi * p.tau / 2, p, policy)
    rule = half_period_shift(kind, z, p)
    return [(shifted, rule.multiplier * theta_eval(rule.new_kind, z, p, policy))]


def _pairs_duplication(row: str, z: complex, p: ModularParam, policy) -> list:
    p2 = qsquared_param(p)
    null2 = theta_eval(2, 0.0, p, policy)
    if row == "12":
        lhs = 2 * theta_eval(1, z, p2, policy) * theta_eval(4, z, p2, policy)
        rhs = null2 * theta_eval(1, z, p, policy)
    else:
        lhs = 2 * theta_eval(2, z, p2, policy) * theta_eval(3, z, p2, policy)
        rhs = null2 * theta_eval(2, z, p, policy)
    return [(lhs, rhs)]


def _pairs_triple(kind: int, z: complex, p: ModularParam, policy) -> list:
    return [(theta_eval(kind, z, p, policy, "series"),
             theta_eval(kind, z, p, policy, "product"))]


def _pairs_thm2(x: complex, y: complex, p: ModularParam, policy) -> list:
    p2 = qsquared_param(p)

    def t(kind, z, pp):
        return theta_eval(kind, z, pp, policy)

    lhs = t(2, x + y, p2) * t(3, x - y, p2) * (
        t(1, x, p) * t(2, y, p) + t(1, y, p) * t(2, x, p))
    rhs = t(1, x + y, p2) * t(4, x - y, p2) * (
        t(2, x, p) * t(2, y, p) - t(1, x, p) * t(1, y, p))
    return [(lhs, rhs)]


def _pairs_thm1_tan(x, y, p, policy) -> list:
    z = math.pi - x - y
    p2 = qsquared_param(p)
    ss = qtrig_theta("ssn_q", x - y, p, policy)
    cc = qtrig_theta("ccs_q", x - y, p, policy)
    tx = qtrig_theta("tan_q", x, p2, policy)
    ty = qtrig_theta("tan_q", y, p2, policy)
    tz = qtrig_theta("tan_q", z, p, policy)
    return [(cc * tx + cc * ty + ss * tz, ss * tx * ty * tz)]


def _pairs_thm1_cot(x, y, p, policy) -> list:
    z = math.pi - x - y
    p2 = qsquared_param(p)
    ss = qtrig_theta("ssn_q", x - y, p, policy)
    cc = qtrig_theta("ccs_q", x - y, p, policy)
    cx = qtrig_theta("cot_q", x, p2, policy)
    cy = qtrig_theta("cot_q", y, p2, policy)
    cz = qtrig_theta("cot_q", z, p, policy)
    return [(ss * cx * cy + cc * cy * cz + cc * cz * cx, ss)]


def _pairs_cor_cot(x, y, p, policy) -> list:
    z = math.pi / 2 - x - y
    p2 = qsquared_param(p)
    ss = qtrig_theta("ssn_q", x - y, p, policy)
    cc = qtrig_theta("ccs_q", x - y, p, policy)
    cx = qtrig_theta("cot_q", x, p2, policy)
    cy = qtrig_theta("cot_q", y, p2, policy)
    cz = qtrig_theta("cot_q", z, p, policy)
    return [(cc * cx + cc * cy + ss * cz, ss * cx * cy * cz)]


def _pairs_cor_tan(x, y, p, policy) -> list:
    # Substituting (pi/2 - x, pi/2 - y, pi/2 - z) into the cotangent pair
    # identity turns every cot into a tan and leaves ssn_q(x-y) on the
    # right-hand side.
    z = math.pi / 2 - x - y
    p2 = qsquared_param(p)
    ss = qtrig_theta("ssn_q", x - y, p, policy)
    cc = qtrig_theta("ccs_q", x - y, p, policy)
    tx = qtrig_theta("tan_q", x, p2, policy)
    ty = qtrig_theta("tan_q", y, p2, policy)
    tz = qtrig_theta("tan_q", z, p, policy)
    return [(ss * tx * ty + cc * ty * tz + cc * tz * tx, ss)]


def _pairs_cosq_shift(z, p, policy) -> list:
    c = qtrig_theta("cos_q", z, p, policy)
    return [(c, qtrig_theta("sin_q", math.pi / 2 - z, p, policy)),
            (c, qtrig_theta("sin_q", math.pi / 2 + z, p, policy))]


def constancy_probe(x: complex, y: complex, tau: complex,
                    policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """The quotient whose constancy (== 1) underlies the thm2 identity.

    Numerator and denominator are the two four-factor combinations from the
    identity; x must stay away from the zeros of the denominator.
    """
    p = make_param(tau)
    p2 = qsquared_param(p)

    def t(kind, z, pp):
        return theta_eval(kind, z, pp, policy)

    num = (t(1, x + y, p2) * t(4, x - y, p2) * t(2, x, p) * t(2, y, p)
           - t(2, x + y, p2) * t(3, x - y, p2)
           * (t(1, x, p) * t(2, y, p) + t(1, y, p) * t(2, x, p)))
    den = t(1, x + y, p2) * t(4, x - y, p2) * t(1, x, p) * t(1, y, p)
    if abs(den) < 1e-10 * max(1.0, abs(num)):
        raise PoleError("probe denominator ~ 0 at x = %r" % (x,))
    return num / den


_PAIR_FUNCS: dict = {}
for _k in (1, 2, 3, 4):
    _PAIR_FUNCS["quasi_period_%d" % _k] = (
        lambda x, y, p, policy, _k=_k: _pairs_quasi(_k, x, p, policy))
    _PAIR_FUNCS["half_period_%d" % _k] = (
        lambda x, y, p, policy, _k=_k: _pairs_half(_k, x, p, policy))
    _PAIR_FUNCS["triple_product_%d" % _k] = (
        lambda x, y, p, policy, _k=_k: _pairs_triple(_k, x, p, policy))
_PAIR_FUNCS["duplication_12"] = lambda x, y, p, policy: _pairs_duplication("12", x, p, policy)
_PAIR_FUNCS["duplication_23"] = lambda x, y, p, policy: _pairs_duplication("23", x, p, policy)
_PAIR_FUNCS["thm2"] = lambda x, y, p, policy: _pairs_thm2(x, y, p, policy)
_PAIR_FUNCS["thm1_tan"] = lambda x, y, p, policy: _pairs_thm1_tan(x, y, p, policy)
_PAIR_FUNCS["thm1_cot"] = lambda x, y, p, policy: _pairs_thm1_cot(x, y, p, policy)
_PAIR_FUNCS["cor_cot"] = lambda x, y, p, policy: _pairs_cor_cot(x, y, p, policy)
_PAIR_FUNCS["cor_tan"] = lambda x, y, p, policy: _pairs_cor_tan(x, y, p, policy)
_PAIR_FUNCS["cosq_shift"] = lambda x, y, p, policy: _pairs_cosq_shift(x, p, policy)
_PAIR_FUNCS["f_constancy"] = (
    lambda x, y, p, policy: [(constancy_probe(x, PROBE_Y, p.tau, policy), 1.0 + 0j)])


def _normalized(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def numeric_residual(identity: str, x: complex, y: Optional[complex] = None,
                     tau: complex = 1.1j,
                     policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Normalized residual of one identity at one sample point.

    For constrained identities the third argument is derived from x and y;
    single-variable identities read their variable from x.  Propagates
    PoleError so callers can resample.
    """
    info = identity_info(identity)
    if identity.startswith("classical_limit"):
        raise DomainError("classical limit checks run over a q sequence; "
                          "use verify_numeric")
    if info.nvars == 2 and y is None:
        raise DomainError("identity %s needs both x and y" % identity)
    p = make_param(tau)
    pairs = _PAIR_FUNCS[identity](complex(x), None if y is None else complex(y),
                                  p, policy)
    return max(_normalized(lhs, rhs) for lhs, rhs in pairs)


# ---------------------------------------------------------------------------
# classical limits (adaptive precision)
# ---------------------------------------------------------------------------


def _mp_tan_q(z, qprime, terms: int = 8):
    """tan_q via the prefactor-free theta quotient at real nome' qprime."""
    num = mp.mpf(0)
    den = mp.mpf(0)
    for k in range(terms):
        w = qprime ** (k * (k + 1))
        s = -1 if k % 2 else 1
        num += s * w * mp.sin((2 * k + 1) * z)
        den += w * mp.cos((2 * k + 1) * z)
    return num / den


def classical_residuals(which: str, qs=CLASSICAL_Q) -> list:
    """Residuals of the classical tan/cot identities evaluated with the
    q-analogues at real nome values, as mpmath floats.

    Precision is chosen per q so the superexponentially small deviation
    (scale exp(-2*pi^2 / |ln q|)) is actually resolved.
    """
    if which not in ("tan", "cot"):
        raise DomainError("which must be 'tan' or 'cot'")
    out = []
    for qv in qs:
        lnq = -math.log(qv)
        digits = int(2 * math.pi ** 2 / lnq / math.log(10)) + 80
        with mp.workdps(digits):
            qprime = mp.exp(-mp.pi ** 2 / mp.log(mp.mpf(1) / qv))
            x = mp.mpf(CLASSICAL_X)
            y = mp.mpf(CLASSICAL_Y)
            z = mp.pi - x - y
            tx = _mp_tan_q(x, qprime)
            ty = _mp_tan_q(y, qprime)
            tz = _mp_tan_q(z, qprime)
            if which == "tan":
                lhs = tx + ty + tz
                rhs = tx * ty * tz
            else:
                cx, cy, cz = 1 / tx, 1 / ty, 1 / tz
                lhs = cx * cy + cy * cz + cz * cx
                rhs = mp.mpf(1)
            res = abs(lhs - rhs) / max(mp.mpf(1), abs(lhs), abs(rhs))
        out.append(res)
    return out


# ---------------------------------------------------------------------------
# verification drivers
# ---------------------------------------------------------------------------


def _draw(rng: random.Random, box) -> complex:
    lo, hi = complex(box[0]), complex(box[1])
    return complex(rng.uniform(lo.real, hi.real), rng.uniform(lo.imag, hi.imag))


def _verify_classical(identity: str, tolerance: float) -> IdentityReport:
    which = "tan" if identity.endswith("tan") else "cot"
    residuals = classical_residuals(which)
    decreasing = all(residuals[i] > residuals[i + 1]
                     for i in range(len(residuals) - 1))
    final_ok = residuals[-1] <= tolerance
    status = "pass" if (decreasing and final_ok) else "fail"
    report = IdentityReport(
        id=identity, mode="numeric", status=status, samples=len(residuals),
        max_abs_residual=float(residuals[-1]),
        params={"q_values": list(CLASSICAL_Q),
                "residuals": [mp.nstr(r, 6) for r in residuals],
                "x": CLASSICAL_X, "y": CLASSICAL_Y,
                "tolerance": tolerance})
    if status == "fail":
        report.failures.append({"error": "residuals not strictly decreasing"
                                if not decreasing else "final residual above tolerance",
                                "residuals": [mp.nstr(r, 6) for r in residuals]})
    return report


def _verify_probe(plan: SamplePlan, tolerance: float,
                  policy: TruncationPolicy) -> IdentityReport:
    rng = random.Random("%d:f_constancy" % plan.seed)
    count = min(plan.count, PROBE_COUNT)
    values = []
    failures = []
    attempts = 0
    while len(values) < count and attempts < 10 * count:
        attempts += 1
        x = _draw(rng, PROBE_BOX)
        try:
            values.append(constancy_probe(x, PROBE_Y, PROBE_TAU, policy))
        except PoleError:
            continue
        except ConvergenceError as exc:
            failures.append({"x": [x.real, x.imag], "error": str(exc)})
            break
    n = len(values)
    if n == 0:
        return IdentityReport(id="f_constancy", mode="numeric", status="fail",
                              failures=failures or [{"error": "no valid samples"}])
    mean = sum(values) / n
    if n > 1:
        var = sum(abs(v - mean) ** 2 for v in values) / (n - 1)
    else:
        var = 0.0
    std = math.sqrt(var)
    max_dev = max(abs(v - 1) for v in values)
    status = "pass" if (abs(mean - 1) <= tolerance and std <= tolerance
                        and not failures) else "fail"
    return IdentityReport(
        id="f_constancy", mode="numeric", status=status, samples=n,
        max_abs_residual=max_dev,
        params={"mean_offset": abs(mean - 1), "std": std,
                "y": PROBE_Y, "tau": [PROBE_TAU.real, PROBE_TAU.imag],
                "tolerance": tolerance},
        failures=failures)


def verify_numeric(identity: str, plan: SamplePlan = DEFAULT_PLAN,
                   tolerance: Optional[float] = None,
                   policy: TruncationPolicy = DEFAULT_POLICY) -> IdentityReport:
    """Run the numeric check of one identity over a sampling plan.

    Deterministic for a given plan seed.  Samples that land on a pole are
    resampled (up to ten times the requested count); convergence failures
    are recorded and fail the identity without raising.
    """
    info = identity_info(identity)
    if "numeric" not in info.modes:
        raise DomainError("identity %s has no numeric mode" % identity)
    if tolerance is None:
        tolerance = info.tolerance
    if identity.startswith("classical_limit"):
        return _verify_classical(identity, tolerance)
    if identity == "f_constancy":
        return _verify_probe(plan, tolerance, policy)

    rng = random.Random("%d:%s" % (plan.seed, identity))
    taus = [complex(t) for t in plan.tau_set]
    max_res = 0.0
    worst = None
    failures = []
    done = 0
    attempts = 0
    while done < plan.count and attempts < 10 * plan.count:
        attempts += 1
        tau = taus[done % len(taus)]
        x = _draw(rng, plan.x_box)
        y = _draw(rng, plan.y_box) if info.nvars == 2 else None
        try:
            res = numeric_residual(identity, x, y, tau, policy)
        except PoleError:
            continue
        except (ConvergenceError, DomainError) as exc:
            failures.append({"tau": [tau.real, tau.imag], "error": str(exc)})
            break
        done += 1
        if res > max_res:
            max_res = res
            worst = (x, y, tau)
        if res > tolerance:
            failures.append({
                "x": [x.real, x.imag],
                "y": None if y is None else [y.real, y.imag],
                "tau": [tau.real, tau.imag],
                "residual": res,
            })
    status = "pass" if (done == plan.count and not failures) else "fail"
    params = {"seed": plan.seed, "tolerance": tolerance,
              "tau_set": [[t.real, t.imag] for t in taus]}
    if worst is not None:
        params["worst_sample"] = {
            "x": [worst[0].real, worst[0].imag],
            "y": None if worst[1] is None else [worst[1].real, worst[1].imag],
            "tau": [worst[2].real, worst[2].imag],
        }
    return IdentityReport(id=identity, mode="numeric", status=status,
                          samples=done, max_abs_residual=max_res,
                          params=params, failures=failures)


# ---------------------------------------------------------------------------
# formal side
# ---------------------------------------------------------------------------


def _theta_u(kind: int, scale: int, order: int) -> GradedSeries:
    return theta_series(kind, scale, (1, 0), order)


def _triple_product_sides(kind: int, order: int):
    series = _theta_u(kind, 1, order)
    if kind == 1:
        head = GradedSeries.from_poly(
            LaurentPoly({(1, 0): Gaussian(0, -1), (-1, 0): Gaussian(0, 1)}),
            1, order)
        factors = (geometric_factors(-1, 2, 2, None, order)
                   + geometric_factors(-1, 2, 2, (2, 0), order)
                   + geometric_factors(-1, 2, 2, (-2, 0), order))
    elif kind == 2:
        head = GradedSeries.from_poly(
            LaurentPoly({(1, 0): Gaussian(1), (-1, 0): Gaussian(1)}), 1, order)
        factors = (geometric_factors(-1, 2, 2, None, order)
                   + geometric_factors(1, 2, 2, (2, 0), order)
                   + geometric_factors(1, 2, 2, (-2, 0), order))
    elif kind == 3:
        head = GradedSeries.one(order)
        factors = (geometric_factors(-1, 2, 2, None, order)
                   + geometric_factors(1, 1, 2, (2, 0), order)
                   + geometric_factors(1, 1, 2, (-2, 0), order))
    else:
        head = GradedSeries.one(order)
        factors = (geometric_factors(-1, 2, 2, None, order)
                   + geometric_factors(-1, 1, 2, (2, 0), order)
                   + geometric_factors(-1, 1, 2, (-2, 0), order))
    return series, head * pochhammer_product(factors, order)


def thm2_sides(order: int, flip_sign: bool = False):
    """Both sides of the two-variable theta identity as exact series.

    x+y and x-y are encoded as the monomials u*v and u*v^-1.  flip_sign
    deliberately corrupts the right-hand side (minus to plus) to exercise
    the failure path of the certifier.
    """
    t = theta_series
    lhs = (t(2, 2, (1, 1), order) * t(3, 2, (1, -1), order)
           * (t(1, 1, (1, 0), order) * t(2, 1, (0, 1), order)
              + t(1, 1, (0, 1), order) * t(2, 1, (1, 0), order)))
    cross = t(1, 1, (1, 0), order) * t(1, 1, (0, 1), order)
    prod = t(2, 1, (1, 0), order) * t(2, 1, (0, 1), order)
    inner = (prod + cross) if flip_sign else (prod - cross)
    rhs = t(1, 2, (1, 1), order) * t(4, 2, (1, -1), order) * inner
    return lhs, rhs


def formal_relations(identity: str, order: int) -> list:
    """(label, lhs, rhs) triples of exact series for a certifiable identity."""
    info = identity_info(identity)
    if "formal" not in info.modes:
        raise UnsupportedFormal(
            "identity %s needs division and has no formal mode" % identity)
    if order < 0:
        raise DomainError("order must be >= 0")

    if identity.startswith("quasi_period_"):
        kind = int(identity[-1])
        plain = _theta_u(kind, 1, order)
        lhs_pi = shift_argument(plain, "plus_pi", "u")
        rhs_pi = plain if PI_SHIFT_SIGN[kind] == 1 else -plain
        wide = _theta_u(kind, 1, order + shift_margin(order))
        lhs_tau = shift_argument(wide, "plus_pi_tau", "u")
        mono = GradedSeries.from_poly(LaurentPoly.monomial(-2, 0), -4, order + 2)
        rhs_tau = (mono * _theta_u(kind, 1, order + 2)).scale(PI_TAU_SHIFT_SIGN[kind])
        return [("theta%d(z+pi)" % kind, lhs_pi, rhs_pi),
                ("theta%d(z+pi*tau)" % kind, lhs_tau, rhs_tau)]

    if identity.startswith("half_period_"):
        kind = int(identity[-1])
        wide = _theta_u(kind, 1, order + shift_margin(order))
        lhs = shift_argument(wide, "plus_half_pi_tau", "u")
        coeff = Gaussian(0, 1) if HALF_PERIOD_HAS_I[kind] else Gaussian(1)
        mult = GradedSeries.from_poly(
            LaurentPoly.monomial(-1, 0, coeff=coeff), -1, order + 1)
        rhs = mult * _theta_u(HALF_PERIOD_MAP[kind], 1, order + 1)
        return [("theta%d(z+pi*tau/2)" % kind, lhs, rhs)]

    if identity == "duplication_12":
        lhs = (_theta_u(1, 2, order) * _theta_u(4, 2, order)).scale(2)
        rhs = theta_series(2, 1, (0, 0), order) * _theta_u(1, 1, order)
        return [("2 theta1 theta4 at 2tau", lhs, rhs)]
    if identity == "duplication_23":
        lhs = (_theta_u(2, 2, order) * _theta_u(3, 2, order)).scale(2)
        rhs = theta_series(2, 1, (0, 0), order) * _theta_u(2, 1, order)
        return [("2 theta2 theta3 at 2tau", lhs, rhs)]

    if identity.startswith("triple_product_"):
        kind = int(identity[-1])
        series, product = _triple_product_sides(kind, order)
        return [("theta%d series vs product" % kind, series, product)]

    lhs, rhs = thm2_sides(order)
    return [("thm2", lhs, rhs)]


def formal_certify(identity: str, order: Optional[int] = None) -> IdentityReport:
    """Certify an identity by exact coefficient comparison to the order."""
    if order is None:
        order = FORMAL_DEFAULT_ORDER.get(identity, DEFAULT_FORMAL_ORDER)
    relations = formal_relations(identity, order)
    failures = []
    min_order = None
    rel_params = []
    for label, lhs, rhs in relations:
        match = series_equal(lhs, rhs)
        rel_params.append({"relation": label,
                           "compared_through": grade_str(match.boundary)})
        if not match.equal:
            mm = match.mismatch
            failures.append({
                "relation": label,
                "quarter_grade": mm.quarter_grade,
                "grade": grade_str(mm.quarter_grade),
                "monomial": monomial_str(mm.monomial),
                "lhs": str(mm.lhs),
                "rhs": str(mm.rhs),
            })
            continue
        got = match.boundary // 4
        min_order = got if min_order is None else min(min_order, got)
    if failures:
        status = "fail"
        certified = 0
    else:
        certified = min_order if min_order is not None else 0
        status = "pass" if certified >= order else "fail"
    return IdentityReport(id=identity, mode="formal", status=status,
                          certified_order=certified,
                          params={"requested_order": order,
                                  "relations": rel_params},
                          failures=failures)


def certificate_text(identity: str, order: Optional[int] = None) -> tuple:
    """Audit certificate: full coefficient tables of both sides per relation.

    Returns (report, text).  Lines are sorted by grade then monomial, so a
    certificate for a given identity and order is byte-stable.
    """
    if order is None:
        order = FORMAL_DEFAULT_ORDER.get(identity, DEFAULT_FORMAL_ORDER)
    report = formal_certify(identity, order)
    lines = ["certificate: %s" % identity,
             "requested order: q^%d" % order,
             "status: %s" % report.status,
             ""]
    for label, lhs, rhs in formal_relations(identity, order):
        match = series_equal(lhs, rhs)
        lines.append("relation: %s" % label)
        lines.append("compared through: %s" % grade_str(match.boundary))
        for side_name, side in (("lhs", lhs), ("rhs", rhs)):
            lines.append("  %s (prefactor %s):" % (side_name,
                                                   grade_str(side.quarter_prefactor)))
            for grade, mono, coeff in side.table():
                if grade > match.boundary:
                    continue
                lines.append("    %-10s %-10s %s"
                             % (grade_str(grade), monomial_str(mono), coeff))
        if match.mismatch is not None:
            lines.append("  FIRST MISMATCH: %s" % match.mismatch)
        lines.append("")
    return report, "\n".join(lines)


# ---------------------------------------------------------------------------
# whole-suite driver
# ---------------------------------------------------------------------------


def run_suite(plan: SamplePlan = DEFAULT_PLAN,
              tolerance: Optional[float] = None,
              order: Optional[int] = None,
              policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    """Run every registry identity in its applicable modes.

    Per-identity errors become failed reports; the suite never aborts.
    Deterministic for a given plan seed.
    """
    reports = []
    for name in IDENTITY_IDS:
        info = REGISTRY[name]
        if "numeric" in info.modes:
            try:
                reports.append(verify_numeric(name, plan, tolerance, policy))
            except ThetaQError as exc:
                reports.append(IdentityReport(
                    id=name, mode="numeric", status="fail",
                    failures=[{"error": str(exc)}]))
        if "formal" in info.modes:
            try:
                reports.append(formal_certify(name, order))
            except ThetaQError as exc:
                reports.append(IdentityReport(
                    id=name, mode="formal", status="fail",
                    failures=[{"error": str(exc)}]))
    return reports
