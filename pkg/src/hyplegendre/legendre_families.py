"""The two named specializations of the general equation: the two-order
generalized Legendre family on an arbitrary interval, and the universal
polynomial family with its explicit sum, hypergeometric closed form, and
quadratic-transformation cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    ComplexExponent,
    DegenerateC,
    DegenerateCase,
    DomainError,
    InvalidParams,
    PoleError,
)
from .hypergeom import (
    DEFAULT_CONFIG,
    EvalConfig,
    Hyp2F1,
    _dist_to_int,
    gamma,
    hyp2f1,
    pochhammer,
)
from .ode_solutions import (
    BranchId,
    CoordinateMap,
    MapVariant,
    OdeParams,
    SolutionBranch,
    apply_operator,
    value_and_derivatives,
)

_CONSISTENCY_TOL = 1e-9


@dataclass(frozen=True)
class LegendreTriple:
    """Degree k and the two order parameters (m, n)."""

    k: float
    m: float
    n: float

    def __post_init__(self) -> None:
        for name in ("k", "m", "n"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParams(f"field '{name}' must be finite")

    def to_dict(self) -> dict:
        return {"k": self.k, "m": self.m, "n": self.n}

    @classmethod
    def from_dict(cls, data: dict) -> "LegendreTriple":
        return cls(k=float(data["k"]), m=float(data["m"]), n=float(data["n"]))


_UNIVERSAL_KEYS = ("ell", "mprime", "a", "b", "c", "m", "lambda", "n_index")


@dataclass(frozen=True)
class UniversalParams:
    """Parameter pack of the universal polynomial family.

    The fields are linked: b = 0, mprime = sqrt(a + c + m^2),
    lam = ell(ell+1) - c and ell = mprime + n_index with n_index a
    nonnegative integer.  The constructor rejects inconsistent packs.
    """

    ell: float
    mprime: float
    a: float
    b: float
    c: float
    m: float
    lam: float
    n_index: int

    def __post_init__(self) -> None:
        if self.b != 0.0:
            raise InvalidParams("universal family requires b = 0")
        if self.n_index < 0:
            raise InvalidParams("n_index must be a nonnegative integer")
        if self.mprime < 0.0:
            raise InvalidParams("mprime must be the nonnegative square root")
        if abs(self.mprime ** 2 - (self.a + self.c + self.m ** 2)) > _CONSISTENCY_TOL:
            raise InvalidParams("mprime must equal sqrt(a + c + m^2)")
        if abs(self.lam - (self.ell * (self.ell + 1.0) - self.c)) > _CONSISTENCY_TOL:
            raise InvalidParams("lambda must equal ell(ell+1) - c")
        if abs(self.ell - self.mprime - self.n_index) > _CONSISTENCY_TOL:
            raise InvalidParams("ell must equal mprime + n_index")

    @classmethod
    def from_degrees(
        cls,
        ell: float,
        mprime: float,
        a: float = 0.0,
        c: float = 0.0,
        m: float | None = None,
    ) -> "UniversalParams":
        """Build a consistent pack from the two degrees.

        With the defaults the potential is a pure magnetic-type term,
        m = mprime.  An explicit (a, c, m) combination must reproduce
        mprime; lambda is always derived.
        """
        n_float = ell - mprime
        if n_float < -_CONSISTENCY_TOL or _dist_to_int(n_float) > _CONSISTENCY_TOL:
            raise InvalidParams(
                f"ell - mprime = {n_float!r} must be a nonnegative integer"
            )
        if m is None:
            m = mprime
            if a != 0.0 or c != 0.0:
                raise InvalidParams("give m explicitly when a or c is nonzero")
        return cls(
            ell=ell,
            mprime=mprime,
            a=a,
            b=0.0,
            c=c,
            m=m,
            lam=ell * (ell + 1.0) - c,
            n_index=int(round(n_float)),
        )

    def to_dict(self) -> dict:
        vals = (self.ell, self.mprime, self.a, self.b, self.c, self.m,
                self.lam, self.n_index)
        return dict(zip(_UNIVERSAL_KEYS, vals))

    @classmethod
    def from_dict(cls, data: dict) -> "UniversalParams":
        return cls(
            ell=float(data["ell"]),
            mprime=float(data["mprime"]),
            a=float(data["a"]),
            b=float(data["b"]),
            c=float(data["c"]),
            m=float(data["m"]),
            lam=float(data["lambda"]),
            n_index=int(data["n_index"]),
        )


def map_to_triple(p: OdeParams, mu1: float, mu2: float) -> LegendreTriple:
    """The (k, m, n) parameters carried by the general equation for the
    chosen exponents:

        k = -1/2 - sqrt(((1+a1)/2)^2 + lambda - a3)
        n = 2 mu1 - 1 + (b1 + a1 xi1)/(xi2 - xi1)
        m = 1 - 2 mu2 - (b1 + a1 xi2)/(xi1 - xi2)
    """
    arg = ((1.0 + p.a1) / 2.0) ** 2 + p.lam - p.a3
    if arg < 0.0:
        raise ComplexExponent(f"negative square-root argument {arg!r}")
    k = -0.5 - math.sqrt(arg)
    n = 2.0 * mu1 - 1.0 + (p.b1 + p.a1 * p.xi1) / p.width
    m = 1.0 - 2.0 * mu2 - (p.b1 + p.a1 * p.xi2) / (p.xi1 - p.xi2)
    return LegendreTriple(k=k, m=m, n=n)


def _edge_power(base: float, e: float) -> float:
    # closed-interval evaluation: 0^0 = 1, 0^positive = 0, 0^negative fails
    if base == 0.0:
        if e == 0.0:
            return 1.0
        if e > 0.0:
            return 0.0
        raise DomainError(f"prefactor 0^{e!r} diverges at the interval edge")
    return base ** e


def generalized_solutions(
    t: LegendreTriple,
    mu1: float,
    mu2: float,
    p: OdeParams,
    r: float,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> tuple[float, float]:
    """The two generalized-family solutions at r:

        F1 = (r-xi1)^mu1 (xi2-r)^mu2     2F1(-k+(n-m)/2, k+1+(n-m)/2; 1-m; zb)
        F2 = (r-xi1)^mu1 (xi2-r)^(mu2+m) 2F1(-k+(n+m)/2, k+1+(n+m)/2; 1+m; zb)

    with zb = (xi2-r)/(xi2-xi1).  The interval edges are admitted whenever
    the corresponding prefactor power is nonnegative.
    """
    if not (p.xi1 <= r <= p.xi2):
        raise DomainError(f"r={r!r} outside [{p.xi1!r}, {p.xi2!r}]")
    zb = (p.xi2 - r) / p.width
    half_diff = (t.n - t.m) / 2.0
    half_sum = (t.n + t.m) / 2.0
    try:
        h1 = Hyp2F1(-t.k + half_diff, t.k + 1.0 + half_diff, 1.0 - t.m)
        h2 = Hyp2F1(-t.k + half_sum, t.k + 1.0 + half_sum, 1.0 + t.m)
    except PoleError as exc:
        raise DegenerateC(str(exc)) from exc
    left = _edge_power(r - p.xi1, mu1)
    f1 = left * _edge_power(p.xi2 - r, mu2) * hyp2f1(h1, zb, cfg)
    f2 = left * _edge_power(p.xi2 - r, mu2 + t.m) * hyp2f1(h2, zb, cfg)
    return f1, f2


def kuipers_reduction_check(
    t: LegendreTriple,
    xi1: float,
    xi2: float,
    r: float,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> float:
    """Normalized residual of the reduced two-order equation

        (r-xi1)(xi2-r) F'' + (-2r+xi1+xi2) F'
          + (k(k+1) + n^2(xi1-xi2)/(4(r-xi1)) - m^2(xi1-xi2)/(4(r-xi2))) F = 0

    applied to F1 with the standard exponent choice mu1 = n/2, mu2 = -m/2.
    The operator is assembled directly from (k, m, n), independently of the
    general-equation machinery.
    """
    if not (xi1 < r < xi2):
        raise DomainError(f"r={r!r} outside ({xi1!r}, {xi2!r})")
    mu1, mu2 = t.n / 2.0, -t.m / 2.0
    half_diff = (t.n - t.m) / 2.0
    try:
        hyp = Hyp2F1(-t.k + half_diff, t.k + 1.0 + half_diff, 1.0 - t.m)
    except PoleError as exc:
        raise DegenerateC(str(exc)) from exc
    branch = SolutionBranch(
        mu1=mu1,
        mu2=mu2,
        extra_power=0.0,
        hyp=hyp,
        map=CoordinateMap(MapVariant.MAP_II, xi1, xi2),
        branch_id=BranchId.BREVE1,
    )
    f, f1, f2 = value_and_derivatives(branch, r, cfg)
    lhs = (
        (r - xi1) * (xi2 - r) * f2
        + (-2.0 * r + xi1 + xi2) * f1
        + (
            t.k * (t.k + 1.0)
            + t.n ** 2 * (xi1 - xi2) / (4.0 * (r - xi1))
            - t.m ** 2 * (xi1 - xi2) / (4.0 * (r - xi2))
        )
        * f
    )
    return abs(lhs) / (1.0 + abs(f) + abs(f1) + abs(f2))


def _universal_normalization(u: UniversalParams) -> float:
    n = u.n_index
    return math.sqrt(
        (2.0 * u.ell + 1.0) * math.factorial(n)
        / (2.0 * gamma(u.ell + u.mprime + 1.0))
    )


def _universal_poly_coeffs(u: UniversalParams) -> list[tuple[float, int]]:
    """(coefficient, power) pairs of the polynomial factor of the sum form."""
    n = u.n_index
    out = []
    for nu in range(n // 2 + 1):
        coef = (
            (-1.0) ** nu
            * gamma(2.0 * u.ell - 2.0 * nu + 1.0)
            / (
                2.0 ** u.ell
                * math.factorial(nu)
                * math.factorial(n - 2 * nu)
                * gamma(u.ell - nu + 1.0)
            )
        )
        out.append((coef, n - 2 * nu))
    return out


def universal_sum(u: UniversalParams, r: float) -> float:
    """The universal polynomial family by direct summation."""
    if not (-1.0 <= r <= 1.0):
        raise DomainError(f"r={r!r} outside [-1, 1]")
    poly = sum(coef * r ** e for coef, e in _universal_poly_coeffs(u))
    return _universal_normalization(u) * (1.0 - r * r) ** (u.mprime / 2.0) * poly


def universal_sum_derivatives(u: UniversalParams, r: float) -> tuple[float, float, float]:
    """(F, F', F'') of the sum form at an interior point, term by term."""
    if not (-1.0 < r < 1.0):
        raise DomainError(f"r={r!r} outside (-1, 1)")
    s0 = s1 = s2 = 0.0
    for coef, e in _universal_poly_coeffs(u):
        s0 += coef * r ** e
        if e >= 1:
            s1 += coef * e * r ** (e - 1)
        if e >= 2:
            s2 += coef * e * (e - 1) * r ** (e - 2)
    mp = u.mprime
    one = 1.0 - r * r
    w0 = one ** (mp / 2.0)
    w1 = -mp * r * one ** (mp / 2.0 - 1.0)
    w2 = mp * one ** (mp / 2.0 - 2.0) * ((mp - 1.0) * r * r - 1.0)
    norm = _universal_normalization(u)
    return (
        norm * w0 * s0,
        norm * (w1 * s0 + w0 * s1),
        norm * (w2 * s0 + 2.0 * w1 * s1 + w0 * s2),
    )


def universal_hypergeometric(
    u: UniversalParams, r: float, cfg: EvalConfig = DEFAULT_CONFIG
) -> float:
    """Closed form of the universal family,

        C * (1-r^2)^(mprime/2) * 2F1((1+ell+mprime)/2, -n/2; 1/2; r^2),

    defined for even n only; the odd case is served by universal_sum.
    """
    n = u.n_index
    if n % 2 != 0:
        raise DomainError(
            "the hypergeometric closed form requires an even degree offset"
        )
    if not (-1.0 <= r <= 1.0):
        raise DomainError(f"r={r!r} outside [-1, 1]")
    half = n // 2
    pref = (
        (-1.0) ** half
        * 2.0 ** (u.ell - 0.5)
        * gamma(u.ell + 0.5)
        * pochhammer(0.5, half)
        / (math.sqrt(math.pi) * pochhammer((1.0 + u.ell + u.mprime) / 2.0, half))
        * math.sqrt(
            (2.0 * u.ell + 1.0)
            / (math.factorial(n) * gamma(u.ell + u.mprime + 1.0))
        )
    )
    hyp = Hyp2F1((1.0 + u.ell + u.mprime) / 2.0, -float(half), 0.5)
    return pref * (1.0 - r * r) ** (u.mprime / 2.0) * hyp2f1(hyp, r * r, cfg)


def universal_ode_embedding(u: UniversalParams) -> OdeParams:
    """Embed the universal equation into the general one on (-1, 1):
    the rational potential -(m^2 + a + b r + c r^2)/(1-r^2) lands in the
    quadratic-over-weight slot."""
    return OdeParams(
        a1=-2.0,
        b1=0.0,
        a2=0.0,
        b2=0.0,
        a3=-u.c,
        b3=-u.b,
        c3=-(u.m ** 2 + u.a),
        lam=u.lam,
        xi1=-1.0,
        xi2=1.0,
    )


def universal_ode_residual(
    u: UniversalParams, r: float, p: OdeParams | None = None
) -> float:
    """Normalized residual of the sum form under the embedded operator."""
    if p is None:
        p = universal_ode_embedding(u)
    f, f1, f2 = universal_sum_derivatives(u, r)
    lhs = apply_operator(p, r, f, f1, f2)
    return abs(lhs) / (1.0 + abs(f) + abs(f1) + abs(f2))


def quadratic_path_check(
    u: UniversalParams,
    p: OdeParams,
    r: float,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> tuple[float, float]:
    """Both ends of the quadratic-transformation route to the closed form.

    The first value follows the even-argument rewrite

        zh^(Q-1) * (1/2)_h / (-(ell+mprime)/2)_h
          * (r-xi1)^(-mprime/2) (xi2-r)^(mprime/2)
          * 2F1(-n/2, (1+ell+mprime)/2; 1/2; ((xi1+xi2-2r)/(xi1-xi2))^2)

    with zh = (r-xi1)/(xi2-xi1), Q = 2 mu2 - (a1 xi2 + b1)/(xi2-xi1) and the
    balanced exponents mu1 = -mprime/2, mu2 = mprime/2; the second is the
    direct closed form.  The two are proportional with an r-independent
    ratio; callers assert ratio constancy across sample points.
    """
    if abs(p.xi1 + 1.0) > 1e-12 or abs(p.xi2 - 1.0) > 1e-12 or p.b1 != 0.0:
        raise InvalidParams("quadratic path requires b1 = 0, xi1 = -1, xi2 = 1")
    n = u.n_index
    if n % 2 != 0:
        raise DomainError("quadratic path requires an even degree offset")
    if not (p.xi1 < r < p.xi2):
        raise DomainError(f"r={r!r} outside ({p.xi1!r}, {p.xi2!r})")
    half = n // 2
    mu1, mu2 = -u.mprime / 2.0, u.mprime / 2.0
    q = 2.0 * mu2 - (p.a1 * p.xi2 + p.b1) / p.width
    denom = pochhammer(-(u.ell + u.mprime) / 2.0, half)
    if denom == 0.0:
        raise DegenerateCase(
            "the rebalancing Pochhammer factor vanishes for these degrees"
        )
    zh = (r - p.xi1) / p.width
    arg = ((p.xi1 + p.xi2 - 2.0 * r) / (p.xi1 - p.xi2)) ** 2
    hyp = Hyp2F1(-float(half), (1.0 + u.ell + u.mprime) / 2.0, 0.5)
    lhs = (
        zh ** (q - 1.0)
        * pochhammer(0.5, half)
        / denom
        * (r - p.xi1) ** mu1
        * (p.xi2 - r) ** mu2
        * hyp2f1(hyp, arg, cfg)
    )
    rhs = universal_hypergeometric(u, r, cfg)
    if lhs == 0.0 or rhs == 0.0:
        raise DegenerateCase(f"a side vanishes at r={r!r}; pick another sample")
    return lhs, rhs
