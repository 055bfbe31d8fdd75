"""Seeded property suites behind the `verify` command.

Each suite runs a fixed number of independently drawn cases and reports
pass/fail counts plus the largest error seen.  Everything is a pure
function of (seed, cases, tol), so repeated runs are byte-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import hypergeom as hg
from . import legendre_families as lf
from . import ode_solutions as ode
from .rng import SplitMix64, draw_nondegenerate

SUITE_NAMES = (
    "connection",
    "connection2",
    "pfaff",
    "duplication",
    "sumform",
    "kuipers",
)

_SAMPLE_FRACTIONS = (0.15, 0.3, 0.5, 0.7, 0.85)
_KUIPERS_FRACTIONS = (0.55, 0.7, 0.85)
_SQRT_PI = 1.7724538509055160273


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    passed: int
    failed: int
    max_err: float


def _connection_case(rng: SplitMix64, tol: float, second: bool) -> float:
    p, exps = draw_nondegenerate(rng)
    mu1, mu2 = exps.mu1.second, exps.mu2.second
    check = ode.connection_check_second if second else ode.connection_check
    worst = 0.0
    for t in _SAMPLE_FRACTIONS:
        r = p.xi1 + t * p.width
        lhs, rhs = check(p, mu1, mu2, r)
        worst = max(worst, abs(lhs - rhs) / (1.0 + abs(lhs)))
    return worst


def _pfaff_case(rng: SplitMix64, tol: float) -> float:
    a = rng.uniform(-3.0, 3.0)
    b = rng.uniform(-3.0, 3.0)
    c = rng.uniform(0.3, 3.5)
    z = rng.uniform(-0.45, 0.45)
    p = hg.Hyp2F1(a, b, c)
    q, power = hg.pfaff_transform(p)
    direct = hg.hyp2f1(p, z)
    transformed = (1.0 - z) ** power * hg.hyp2f1(q, z)
    return abs(direct - transformed) / (1.0 + abs(direct))


def _duplication_case(rng: SplitMix64, tol: float) -> float:
    x = rng.uniform(0.5, 10.0)
    lhs = hg.gamma(2.0 * x)
    rhs = 2.0 ** (2.0 * x - 1.0) * hg.gamma(x) * hg.gamma(x + 0.5) / _SQRT_PI
    return abs(lhs - rhs) / abs(lhs)


def _sumform_case(rng: SplitMix64, tol: float) -> float:
    mprime = (0.5, 1.0, 1.5, 2.0)[rng.index(4)]
    n = 2 * rng.index(6)
    u = lf.UniversalParams.from_degrees(ell=mprime + n, mprime=mprime)
    worst_abs = 0.0
    scale = 0.0
    for i in range(21):
        r = -0.95 + i * 0.095
        s = lf.universal_sum(u, r)
        h = lf.universal_hypergeometric(u, r)
        worst_abs = max(worst_abs, abs(s - h))
        scale = max(scale, abs(s))
    return worst_abs / max(scale, 1e-30)


def _kuipers_case(rng: SplitMix64, tol: float) -> float:
    t = lf.LegendreTriple(
        k=rng.uniform(0.2, 3.5),
        m=rng.uniform(-0.85, 0.85),
        n=rng.uniform(-0.85, 0.85),
    )
    xi1 = rng.uniform(-1.5, -0.3)
    xi2 = rng.uniform(0.3, 1.5)
    worst = 0.0
    for frac in _KUIPERS_FRACTIONS:
        r = xi1 + frac * (xi2 - xi1)
        worst = max(worst, lf.kuipers_reduction_check(t, xi1, xi2, r))
    return worst


_CASE_RUNNERS = {
    "connection": lambda rng, tol: _connection_case(rng, tol, second=False),
    "connection2": lambda rng, tol: _connection_case(rng, tol, second=True),
    "pfaff": _pfaff_case,
    "duplication": _duplication_case,
    "sumform": _sumform_case,
    "kuipers": _kuipers_case,
}


def run_suite(name: str, seed: int, cases: int, tol: float) -> SuiteResult:
    """Run one named suite; the per-suite stream is decorrelated from the
    base seed by the suite's index."""
    runner = _CASE_RUNNERS[name]
    rng = SplitMix64(seed + SUITE_NAMES.index(name))
    passed = failed = 0
    max_err = 0.0
    for _ in range(cases):
        err = runner(rng, tol)
        max_err = max(max_err, err)
        if err <= tol:
            passed += 1
        else:
            failed += 1
    return SuiteResult(name=name, cases=cases, passed=passed, failed=failed,
                       max_err=max_err)


def run_all(
    seed: int,
    cases: int,
    tol: float,
    suites: tuple[str, ...] = SUITE_NAMES,
) -> list[SuiteResult]:
    return [run_suite(name, seed, cases, tol) for name in suites]
