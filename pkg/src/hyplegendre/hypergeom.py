"""Gauss hypergeometric core: 2F1 series evaluation, gamma, Pochhammer,
and the transformation identities the solution machinery relies on.

All arithmetic is IEEE double precision.  Evaluation is controlled by an
EvalConfig (truncation tolerance, term budget, pole detection tolerance);
the module-level DEFAULT_CONFIG is used when none is given.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateCase, DomainError, InvalidParams, NoConvergence, PoleError

DEFAULT_POLE_TOL = 1e-10

# Lanczos approximation, g = 7, 9 terms.
_LANCZOS_C0 = 0.99999999999980993
_LANCZOS = (
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_TWO_PI = 2.5066282746310005024
_SERIES_SPLIT = 0.5  # direct summation for |z| <= split, transforms beyond


def _dist_to_int(x: float) -> float:
    return abs(x - round(x))


def _is_nonpositive_integer(x: float, tol: float) -> bool:
    return x < 0.5 and _dist_to_int(x) <= tol


@dataclass(frozen=True)
class EvalConfig:
    """Knobs for series evaluation.

    rel_tol: stop once a term drops below rel_tol relative to the running sum.
    max_terms: hard budget before NoConvergence is raised.
    pole_tol: distance below which a real is treated as a non-positive integer.
    """

    rel_tol: float = 1e-15
    max_terms: int = 500
    pole_tol: float = DEFAULT_POLE_TOL

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0.0):
            raise InvalidParams("rel_tol must be positive")
        if self.max_terms < 1:
            raise InvalidParams("max_terms must be at least 1")
        if not (self.pole_tol > 0.0):
            raise InvalidParams("pole_tol must be positive")


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class Hyp2F1:
    """A 2F1 parameter triple (a, b; c).

    terminating_degree is filled automatically: when a or b sits within
    DEFAULT_POLE_TOL of a non-positive integer the series is a polynomial
    and the degree is the smallest admissible one.  A non-positive integer
    c is rejected unless the series terminates before the pole in c.
    """

    a: float
    b: float
    c: float
    terminating_degree: int | None = None

    def __post_init__(self) -> None:
        degree = None
        for upper in (self.a, self.b):
            if _is_nonpositive_integer(upper, DEFAULT_POLE_TOL):
                d = int(round(-upper))
                degree = d if degree is None else min(degree, d)
        object.__setattr__(self, "terminating_degree", degree)
        if _is_nonpositive_integer(self.c, DEFAULT_POLE_TOL):
            if degree is None or degree >= abs(round(self.c)):
                raise PoleError(
                    f"lower parameter c={self.c!r} is a non-positive integer "
                    "reached by the series"
                )


def pochhammer(x: float, n: int) -> float:
    """Rising factorial x(x+1)...(x+n-1); 1 for n = 0.

    Overflow is reported by value (inf), never raised.
    """
    if n < 0:
        raise DomainError("pochhammer order must be a nonnegative integer")
    acc = 1.0
    for k in range(n):
        acc *= x + k
    return acc


def gamma(x: float, pole_tol: float = DEFAULT_POLE_TOL) -> float:
    """Gamma function for real x, Lanczos approximation with reflection.

    Raises PoleError when x is within pole_tol of a non-positive integer.
    """
    if _is_nonpositive_integer(x, pole_tol):
        raise PoleError(f"gamma pole at x={x!r}")
    if x < 0.5:
        # reflection; sin(pi*x) is safely away from 0 past the pole check
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x, pole_tol))
    z = x - 1.0
    acc = _LANCZOS_C0
    for i, coef in enumerate(_LANCZOS):
        acc += coef / (z + i + 1.0)
    t = z + 7.5
    try:
        return _SQRT_TWO_PI * t ** (z + 0.5) * math.exp(-t) * acc
    except OverflowError:
        return math.inf


def rgamma(x: float, pole_tol: float = DEFAULT_POLE_TOL) -> float:
    """Reciprocal gamma 1/Gamma(x); 0 at the poles. Entire, never raises."""
    if _is_nonpositive_integer(x, pole_tol):
        return 0.0
    g = gamma(x, pole_tol)
    return 0.0 if math.isinf(g) else 1.0 / g


def _series_sum(
    a: float, b: float, c: float, z: float, cfg: EvalConfig, nterms: int | None
) -> float:
    """Direct summation of the defining series.

    With nterms given the sum is over exactly that many terms (terminating
    case); otherwise terms are added until one falls below rel_tol relative
    to the largest partial sum seen.
    """
    acc = 1.0
    term = 1.0
    scale = 1.0
    limit = nterms if nterms is not None else cfg.max_terms
    for k in range(limit):
        denom = (c + k) * (k + 1.0)
        if abs(c + k) <= cfg.pole_tol:
            raise PoleError(f"series hit the pole in c={c!r} at term {k + 1}")
        term *= (a + k) * (b + k) / denom * z
        acc += term
        scale = max(scale, abs(acc))
        if nterms is None and abs(term) <= cfg.rel_tol * scale:
            return acc
    if nterms is not None:
        return acc
    raise NoConvergence(
        f"2F1 series did not reach rel_tol={cfg.rel_tol} in {cfg.max_terms} terms "
        f"(a={a}, b={b}, c={c}, z={z})"
    )


def _connection_core(a: float, b: float, c: float, z: float, cfg: EvalConfig) -> float:
    """sin(pi(c-a-b))/pi * 2F1(a,b;c;z) assembled from functions of 1-z.

    This is the regularized form of the linear connection identity; the
    reciprocal-gamma factors make terms with poles vanish cleanly.
    """
    if b < a:  # keep the a<->b symmetry bitwise
        a, b = b, a
    cab = c - a - b
    if _dist_to_int(cab) <= cfg.pole_tol:
        raise DegenerateCase(
            f"connection formula degenerate: c-a-b={cab!r} is an integer"
        )
    if not (0.0 < z < 1.0):
        raise DomainError(f"connection formula requires 0 < z < 1, got z={z!r}")
    one_minus = 1.0 - z
    f_near = hyp2f1(Hyp2F1(a, b, a + b - c + 1.0), one_minus, cfg)
    f_far = hyp2f1(Hyp2F1(c - a, c - b, cab + 1.0), one_minus, cfg)
    term1 = rgamma(c - a, cfg.pole_tol) * rgamma(c - b, cfg.pole_tol) \
        * rgamma(a + b - c + 1.0, cfg.pole_tol) * f_near
    term2 = one_minus ** cab * rgamma(a, cfg.pole_tol) * rgamma(b, cfg.pole_tol) \
        * rgamma(cab + 1.0, cfg.pole_tol) * f_far
    return gamma(c, cfg.pole_tol) * (term1 - term2)


def _pfaff_mapped(a: float, b: float, c: float, z: float, cfg: EvalConfig) -> float:
    # 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), used for z < -split;
    # parameter order is canonicalized so the a<->b symmetry stays bitwise
    if b < a:
        a, b = b, a
    w = z / (z - 1.0)
    return (1.0 - z) ** (-a) * _series_sum(a, c - b, c, w, cfg, None)


def hyp2f1(p: Hyp2F1, z: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Evaluate 2F1(a,b;c;z) for real parameters and argument.

    Terminating series are summed exactly (any finite z).  Otherwise the
    direct series is used for |z| <= 0.5, the linear connection formula for
    0.5 < z < 1, an argument-mapping transform for -1 < z < -0.5, and the
    gamma closed form at z = 1 when c-a-b > 0.
    """
    if not math.isfinite(z):
        raise DomainError(f"argument must be finite, got z={z!r}")
    if p.terminating_degree is not None:
        # exactly d+1 terms: the leading 1 plus d recurrence steps
        return _series_sum(p.a, p.b, p.c, z, cfg, p.terminating_degree)
    if abs(z) <= _SERIES_SPLIT:
        return _series_sum(p.a, p.b, p.c, z, cfg, None)
    if _SERIES_SPLIT < z < 1.0:
        cab = p.c - p.a - p.b
        return math.pi / math.sin(math.pi * cab) * _connection_core(
            p.a, p.b, p.c, z, cfg
        )
    if -1.0 < z < -_SERIES_SPLIT:
        return _pfaff_mapped(p.a, p.b, p.c, z, cfg)
    if z == 1.0:
        cab = p.c - p.a - p.b
        if cab > 0.0:
            return gamma(p.c, cfg.pole_tol) * gamma(cab, cfg.pole_tol) \
                * rgamma(p.c - p.a, cfg.pole_tol) * rgamma(p.c - p.b, cfg.pole_tol)
        raise DomainError(f"z=1 requires c-a-b > 0, got {cab!r}")
    raise DomainError(f"argument z={z!r} outside the non-terminating domain")


def hyp2f1_derivative(p: Hyp2F1, z: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """d/dz 2F1(a,b;c;z) via the parameter-shift rule (ab/c shifted triple)."""
    shifted = Hyp2F1(p.a + 1.0, p.b + 1.0, p.c + 1.0)
    return p.a * p.b / p.c * hyp2f1(shifted, z, cfg)


def pfaff_transform(p: Hyp2F1) -> tuple[Hyp2F1, float]:
    """Swap (a,b;c) for (c-a,c-b;c) with the compensating power c-a-b.

    Evaluating both sides at the same z satisfies
    2F1(a,b;c;z) = (1-z)^power * 2F1(c-a,c-b;c;z).
    """
    return Hyp2F1(p.c - p.a, p.c - p.b, p.c), p.c - p.a - p.b


def connection_15_8_4(p: Hyp2F1, z: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """sin(pi(c-a-b))/pi * 2F1(a,b;c;z) computed purely from the 1-z side.

    Verification partner of the direct evaluation; raises DegenerateCase
    when c-a-b is an integer (logarithmic case, out of scope).
    """
    return _connection_core(p.a, p.b, p.c, z, cfg)


def inversion_15_8_6(
    m: int, b: float, c: float, z: float, cfg: EvalConfig = DEFAULT_CONFIG
) -> float:
    """Right-hand side of the argument-inversion identity

        (-1)^m (c)_m/(b)_m 2F1(-m,b;c;z) = z^m 2F1(-m,1-c-m;1-b-m;1/z).

    Returns z^m 2F1(-m,1-c-m;1-b-m;1/z); tests assert equality with the
    left-hand side.
    """
    if m < 0:
        raise DomainError("inversion order m must be a nonnegative integer")
    if z == 0.0:
        raise DomainError("inversion identity requires z != 0")
    for j in range(m):
        if abs(b + j) <= cfg.pole_tol:
            raise PoleError(f"prefactor Pochhammer (b)_m vanishes: b={b!r}, m={m}")
    if m == 0:
        return 1.0
    inner = Hyp2F1(-float(m), 1.0 - c - m, 1.0 - b - m)
    return z ** m * hyp2f1(inner, 1.0 / z, cfg)


def quadratic_15_8_20(
    a: float, c: float, z: float, cfg: EvalConfig = DEFAULT_CONFIG
) -> float:
    """Right-hand side of the quadratic transformation

        2F1(a,1-a;c;z) = (1-z)^(c-1) 2F1((c-a)/2,(a+c-1)/2;c;4z(1-z)).

    Returns the transformed side; equality with 2F1(a,1-a;c;z) holds for
    z <= 1/2 (and everywhere the transformed series terminates).
    """
    if not (z < 1.0):
        raise DomainError(f"quadratic transform requires z < 1, got z={z!r}")
    w = 4.0 * z * (1.0 - z)
    inner = Hyp2F1((c - a) / 2.0, (a + c - 1.0) / 2.0, c)
    if inner.terminating_degree is None and abs(w) >= 1.0:
        raise DomainError(
            f"transformed argument 4z(1-z)={w!r} outside the convergence region"
        )
    return (1.0 - z) ** (c - 1.0) * hyp2f1(inner, w, cfg)
