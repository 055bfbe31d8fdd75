"""The general three-singular-point ODE: parameter pack, indicial exponents,
the four closed-form hypergeometric solution branches, and residual-based
verification of those branches.

The equation, on xi1 < r < xi2:

    (r-xi1)(xi2-r) F'' + (a1 r + b1) F'
      + (lambda + (a2 r + b2)/((r-xi1)(xi2-r))
               + (a3 r^2 + b3 r + c3)/((r-xi1)(xi2-r))) F = 0
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import (
    ComplexExponent,
    DegenerateC,
    DegenerateCase,
    DomainError,
    InvalidParams,
    PoleError,
    RootMismatch,
)
from .hypergeom import (
    DEFAULT_CONFIG,
    DEFAULT_POLE_TOL,
    EvalConfig,
    Hyp2F1,
    _dist_to_int,
    gamma,
    hyp2f1,
    hyp2f1_derivative,
    rgamma,
)

_ROOT_RESIDUAL_TOL = 1e-8

_JSON_KEYS = ("a1", "b1", "a2", "b2", "a3", "b3", "c3", "lambda", "xi1", "xi2")


@dataclass(frozen=True)
class OdeParams:
    """The nine real coefficients, spectral parameter and singular points."""

    a1: float
    b1: float
    a2: float
    b2: float
    a3: float
    b3: float
    c3: float
    lam: float
    xi1: float
    xi2: float

    def __post_init__(self) -> None:
        for name in ("a1", "b1", "a2", "b2", "a3", "b3", "c3", "lam", "xi1", "xi2"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParams(f"field '{name}' must be finite")
        if not self.xi1 < self.xi2:
            raise InvalidParams(
                f"singular points must satisfy xi1 < xi2, got {self.xi1!r} >= {self.xi2!r}"
            )

    @property
    def width(self) -> float:
        return self.xi2 - self.xi1

    def to_dict(self) -> dict:
        vals = (self.a1, self.b1, self.a2, self.b2, self.a3, self.b3,
                self.c3, self.lam, self.xi1, self.xi2)
        return dict(zip(_JSON_KEYS, vals))

    @classmethod
    def from_dict(cls, data: dict) -> "OdeParams":
        kwargs = {k if k != "lambda" else "lam": float(data[k]) for k in _JSON_KEYS}
        return cls(**kwargs)


@dataclass(frozen=True)
class RootPair:
    """Both roots of one indicial quadratic.

    Real case: (first, second) ascending.  Complex case (negative
    discriminant): first is the real part, second the positive imaginary
    part of the conjugate pair, and is_complex is set.
    """

    first: float
    second: float
    is_complex: bool = False

    def as_tuple(self) -> tuple[float, float]:
        return (self.first, self.second)


@dataclass(frozen=True)
class IndicialExponents:
    mu1: RootPair
    mu2: RootPair
    mu_inf: RootPair


def _solve_monic(b: float, c: float) -> RootPair:
    # mu^2 + b mu + c = 0, numerically stable split of the two roots
    disc = b * b - 4.0 * c
    if disc < 0.0:
        return RootPair(-b / 2.0, math.sqrt(-disc) / 2.0, True)
    sd = math.sqrt(disc)
    if b > 0.0:
        lo = (-b - sd) / 2.0
        hi = c / lo if lo != 0.0 else 0.0
    elif b < 0.0:
        hi = (-b + sd) / 2.0
        lo = c / hi if hi != 0.0 else 0.0
    else:
        hi = sd / 2.0
        lo = -hi
    if lo > hi:
        lo, hi = hi, lo
    return RootPair(lo, hi)


def _quadratic_coeffs(p: OdeParams) -> tuple[tuple[float, float], ...]:
    """Monic (B, C) coefficient pairs of the three indicial quadratics."""
    d = p.width
    u1 = (p.a3 * p.xi1 ** 2 + (p.a2 + p.b3) * p.xi1 + p.b2 + p.c3) / d ** 2
    u2 = (p.a3 * p.xi2 ** 2 + (p.a2 + p.b3) * p.xi2 + p.b2 + p.c3) / d ** 2
    t1 = (p.a1 * p.xi1 + p.b1) / d
    t2 = (p.a1 * p.xi2 + p.b1) / d
    return ((t1 - 1.0, u1), (-(t2 + 1.0), u2), (1.0 + p.a1, p.a3 - p.lam))


def indicial_exponents(p: OdeParams) -> IndicialExponents:
    """Roots of the three indicial quadratics (at xi1, at xi2, at infinity)."""
    (b1c, c1c), (b2c, c2c), (binf, cinf) = _quadratic_coeffs(p)
    return IndicialExponents(
        mu1=_solve_monic(b1c, c1c),
        mu2=_solve_monic(b2c, c2c),
        mu_inf=_solve_monic(binf, cinf),
    )


def root_residual(p: OdeParams, which: str, mu: float) -> float:
    """|mu^2 + B mu + C| for the named quadratic ('mu1', 'mu2' or 'mu_inf')."""
    idx = {"mu1": 0, "mu2": 1, "mu_inf": 2}[which]
    b, c = _quadratic_coeffs(p)[idx]
    return abs(mu * mu + b * mu + c)


def reduced_equation_coefficients(
    p: OdeParams, mu1: float, mu2: float
) -> tuple[float, float, float]:
    """Drift and constant coefficients of the equation satisfied by the
    hypergeometric factor once the edge exponents are peeled off:

        (r-xi1)(xi2-r) f'' + (A r + B) f' + C f = 0
    """
    if root_residual(p, "mu1", mu1) > _ROOT_RESIDUAL_TOL:
        raise RootMismatch(f"mu1={mu1!r} is not a root of the xi1 quadratic")
    if root_residual(p, "mu2", mu2) > _ROOT_RESIDUAL_TOL:
        raise RootMismatch(f"mu2={mu2!r} is not a root of the xi2 quadratic")
    a_coef = p.a1 - 2.0 * mu1 - 2.0 * mu2
    b_coef = p.b1 + 2.0 * mu2 * p.xi1 + 2.0 * mu1 * p.xi2
    c_coef = p.lam - p.a3 - (mu1 + mu2) * (mu1 + mu2 - p.a1 - 1.0)
    return (a_coef, b_coef, c_coef)


class MapVariant(enum.Enum):
    MAP_I = "map_i"    # z = (r - xi1)/(xi2 - xi1): xi1 -> 0, xi2 -> 1
    MAP_II = "map_ii"  # z = (xi2 - r)/(xi2 - xi1): xi2 -> 0, xi1 -> 1


@dataclass(frozen=True)
class CoordinateMap:
    """Affine map sending the singular interval onto [0, 1]."""

    variant: MapVariant
    xi1: float
    xi2: float

    def z(self, r: float) -> float:
        if self.variant is MapVariant.MAP_I:
            return (r - self.xi1) / (self.xi2 - self.xi1)
        return (self.xi2 - r) / (self.xi2 - self.xi1)

    @property
    def dz_dr(self) -> float:
        d = self.xi2 - self.xi1
        return 1.0 / d if self.variant is MapVariant.MAP_I else -1.0 / d


class BranchId(enum.Enum):
    HAT1 = "hat1"
    HAT2 = "hat2"
    BREVE1 = "breve1"
    BREVE2 = "breve2"

    @property
    def is_second_kind(self) -> bool:
        return self in (BranchId.HAT2, BranchId.BREVE2)


@dataclass(frozen=True)
class SolutionBranch:
    """One closed-form solution

        F(r) = (r-xi1)^mu1 (xi2-r)^mu2 * z^extra_power * 2F1(a,b;c;z(r)).
    """

    mu1: float
    mu2: float
    extra_power: float
    hyp: Hyp2F1
    map: CoordinateMap
    branch_id: BranchId


@dataclass(frozen=True)
class SolutionCombination:
    """Linear combination of two branches built from the same parameters."""

    branch_a: SolutionBranch
    coeff_a: float
    branch_b: SolutionBranch
    coeff_b: float

    def __post_init__(self) -> None:
        a, b = self.branch_a, self.branch_b
        if (a.mu1, a.mu2, a.map.xi1, a.map.xi2) != (b.mu1, b.mu2, b.map.xi1, b.map.xi2):
            raise InvalidParams("combined branches must share exponents and interval")


def _branch_data(p: OdeParams, mu1: float, mu2: float) -> tuple[float, float, float, float]:
    """(s, M, c_hat, c_breve): the square root, the parameter midpoint and
    the two lower parameters every branch is assembled from."""
    arg = p.lam - p.a3 + ((p.a1 + 1.0) / 2.0) ** 2
    if arg < 0.0:
        raise ComplexExponent(
            f"negative square-root argument {arg!r}: branch exponents are complex"
        )
    s = math.sqrt(arg)
    m_mid = mu1 + mu2 - (p.a1 + 1.0) / 2.0
    c_hat = 2.0 * mu1 + (p.a1 * p.xi1 + p.b1) / p.width
    c_breve = 2.0 * mu2 - (p.a1 * p.xi2 + p.b1) / p.width
    return s, m_mid, c_hat, c_breve


def build_branch(
    p: OdeParams,
    mu1: float,
    mu2: float,
    branch_id: BranchId,
    pole_tol: float = DEFAULT_POLE_TOL,
) -> SolutionBranch:
    """Assemble one of the four closed-form branches for the chosen exponents.

    First-kind branches carry no extra power of the mapped variable; the
    second-kind ones carry z^(1-c) of their sibling and the correspondingly
    shifted upper parameters.  DegenerateC signals a lower parameter at a
    pole, or a second-kind branch collapsing onto its sibling.
    """
    s, m_mid, c_hat, c_breve = _branch_data(p, mu1, mu2)
    lo, hi = m_mid - s, m_mid + s
    if branch_id is BranchId.HAT1:
        a, b, c, extra = lo, hi, c_hat, 0.0
        variant = MapVariant.MAP_I
    elif branch_id is BranchId.HAT2:
        extra = 1.0 - c_hat
        a, b, c = lo - c_hat + 1.0, hi - c_hat + 1.0, 2.0 - c_hat
        variant = MapVariant.MAP_I
    elif branch_id is BranchId.BREVE1:
        a, b, c, extra = hi, lo, c_breve, 0.0
        variant = MapVariant.MAP_II
    else:
        extra = 1.0 - c_breve
        a, b, c = lo - c_breve + 1.0, hi - c_breve + 1.0, 2.0 - c_breve
        variant = MapVariant.MAP_II
    if branch_id.is_second_kind and abs(extra) <= pole_tol:
        raise DegenerateC(
            f"{branch_id.value} coincides with its first-kind sibling (c = 1)"
        )
    try:
        hyp = Hyp2F1(a, b, c)
    except PoleError as exc:
        raise DegenerateC(f"{branch_id.value}: {exc}") from exc
    return SolutionBranch(
        mu1=mu1,
        mu2=mu2,
        extra_power=extra,
        hyp=hyp,
        map=CoordinateMap(variant, p.xi1, p.xi2),
        branch_id=branch_id,
    )


def _f_part(s: SolutionBranch, r: float, cfg: EvalConfig) -> float:
    """z^extra_power * 2F1(...; z(r)), the branch without the edge prefactor."""
    z = s.map.z(r)
    f = hyp2f1(s.hyp, z, cfg)
    if s.extra_power != 0.0:
        f *= z ** s.extra_power
    return f


def evaluate(s: SolutionBranch, r: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Branch value at an interior point."""
    if not (s.map.xi1 < r < s.map.xi2):
        raise DomainError(
            f"r={r!r} outside the open interval ({s.map.xi1!r}, {s.map.xi2!r})"
        )
    pref = (r - s.map.xi1) ** s.mu1 * (s.map.xi2 - r) ** s.mu2
    return pref * _f_part(s, r, cfg)


def value_and_derivatives(
    s: SolutionBranch, r: float, cfg: EvalConfig = DEFAULT_CONFIG
) -> tuple[float, float, float]:
    """(F, F', F'') at r, assembled analytically with the parameter-shift
    rule for the hypergeometric factor and the product rule elsewhere."""
    if not (s.map.xi1 < r < s.map.xi2):
        raise DomainError(
            f"r={r!r} outside the open interval ({s.map.xi1!r}, {s.map.xi2!r})"
        )
    left = r - s.map.xi1
    right = s.map.xi2 - r
    pref = left ** s.mu1 * right ** s.mu2
    logd = s.mu1 / left - s.mu2 / right
    logd2 = -s.mu1 / left ** 2 - s.mu2 / right ** 2
    p0 = pref
    p1 = pref * logd
    p2 = pref * (logd * logd + logd2)

    z = s.map.z(r)
    u = s.map.dz_dr
    h = s.hyp
    h0 = hyp2f1(h, z, cfg)
    h1 = hyp2f1_derivative(h, z, cfg)
    shifted = Hyp2F1(h.a + 1.0, h.b + 1.0, h.c + 1.0)
    h2 = h.a * h.b / h.c * hyp2f1_derivative(shifted, z, cfg)

    e = s.extra_power
    if e == 0.0:
        g0, g1, g2 = h0, u * h1, u * u * h2
    else:
        ze = z ** e
        g0 = ze * h0
        g1 = u * (e * z ** (e - 1.0) * h0 + ze * h1)
        g2 = u * u * (
            e * (e - 1.0) * z ** (e - 2.0) * h0
            + 2.0 * e * z ** (e - 1.0) * h1
            + ze * h2
        )
    return (p0 * g0, p1 * g0 + p0 * g1, p2 * g0 + 2.0 * p1 * g1 + p0 * g2)


def apply_operator(
    p: OdeParams, r: float, f: float, f1: float, f2: float
) -> float:
    """Left-hand side of the differential equation at r for given (F,F',F'')."""
    w = (r - p.xi1) * (p.xi2 - r)
    potential = p.lam + (p.a2 * r + p.b2) / w \
        + (p.a3 * r * r + p.b3 * r + p.c3) / w
    return w * f2 + (p.a1 * r + p.b1) * f1 + potential * f


def residual(
    s: SolutionBranch | SolutionCombination,
    p: OdeParams,
    r: float,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> float:
    """|L[F](r)| normalized by 1 + |F| + |F'| + |F''|.

    The derivative magnitudes in the denominator keep the measure scale-free
    near zeros of F.
    """
    if isinstance(s, SolutionCombination):
        fa = value_and_derivatives(s.branch_a, r, cfg)
        fb = value_and_derivatives(s.branch_b, r, cfg)
        f, f1, f2 = (
            s.coeff_a * fa[i] + s.coeff_b * fb[i] for i in range(3)
        )
    else:
        f, f1, f2 = value_and_derivatives(s, r, cfg)
    lhs = apply_operator(p, r, f, f1, f2)
    return abs(lhs) / (1.0 + abs(f) + abs(f1) + abs(f2))


def _check_connection_degeneracy(
    gamma_arg: float, c_breve: float, pole_tol: float
) -> None:
    if _dist_to_int(1.0 - c_breve) <= pole_tol:
        raise DegenerateCase(
            f"sine argument 1-c_breve={1.0 - c_breve!r} is an integer"
        )
    if gamma_arg < 0.5 and _dist_to_int(gamma_arg) <= pole_tol:
        raise DegenerateCase(
            f"gamma pole in connection coefficient at {gamma_arg!r}"
        )


def connection_check(
    p: OdeParams,
    mu1: float,
    mu2: float,
    r: float,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> tuple[float, float]:
    """Both sides of the first-kind connection identity, evaluated
    independently:

        sin(pi(1-c_breve))/pi * fhat1
          = G(c_hat) [ fbreve1 / (G(c_hat-a) G(c_hat-b) G(c_breve))
                     - fbreve2 / (G(a) G(b) G(2-c_breve)) ]

    with (a, b) the first-kind upper parameters.  Reciprocal gammas are used
    so a term with a pole in its coefficient contributes zero.
    """
    s, m_mid, c_hat, c_breve = _branch_data(p, mu1, mu2)
    _check_connection_degeneracy(c_hat, c_breve, cfg.pole_tol)
    a, b = m_mid - s, m_mid + s
    hat1 = build_branch(p, mu1, mu2, BranchId.HAT1)
    breve1 = build_branch(p, mu1, mu2, BranchId.BREVE1)
    breve2 = build_branch(p, mu1, mu2, BranchId.BREVE2)
    lhs = math.sin(math.pi * (1.0 - c_breve)) / math.pi * _f_part(hat1, r, cfg)
    gc = gamma(c_hat, cfg.pole_tol)
    term1 = rgamma(c_hat - a, cfg.pole_tol) * rgamma(c_hat - b, cfg.pole_tol) \
        * rgamma(c_breve, cfg.pole_tol) * _f_part(breve1, r, cfg)
    term2 = rgamma(a, cfg.pole_tol) * rgamma(b, cfg.pole_tol) \
        * rgamma(2.0 - c_breve, cfg.pole_tol) * _f_part(breve2, r, cfg)
    return lhs, gc * (term1 - term2)


def connection_check_second(
    p: OdeParams,
    mu1: float,
    mu2: float,
    r: float,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> tuple[float, float]:
    """Second-kind analogue of connection_check, with the compensating
    parameter swap folded in:

        sin(pi(1-c_breve))/pi * fhat2
          = G(2-c_hat) [ fbreve1 / (G(1-a) G(1-b) G(c_breve))
                       - fbreve2 / (G(a-c_hat+1) G(b-c_hat+1) G(2-c_breve)) ]
    """
    s, m_mid, c_hat, c_breve = _branch_data(p, mu1, mu2)
    _check_connection_degeneracy(2.0 - c_hat, c_breve, cfg.pole_tol)
    a, b = m_mid - s, m_mid + s
    hat2 = build_branch(p, mu1, mu2, BranchId.HAT2)
    breve1 = build_branch(p, mu1, mu2, BranchId.BREVE1)
    breve2 = build_branch(p, mu1, mu2, BranchId.BREVE2)
    lhs = math.sin(math.pi * (1.0 - c_breve)) / math.pi * _f_part(hat2, r, cfg)
    gc = gamma(2.0 - c_hat, cfg.pole_tol)
    term1 = rgamma(1.0 - a, cfg.pole_tol) * rgamma(1.0 - b, cfg.pole_tol) \
        * rgamma(c_breve, cfg.pole_tol) * _f_part(breve1, r, cfg)
    term2 = rgamma(a - c_hat + 1.0, cfg.pole_tol) * rgamma(b - c_hat + 1.0, cfg.pole_tol) \
        * rgamma(2.0 - c_breve, cfg.pole_tol) * _f_part(breve2, r, cfg)
    return lhs, gc * (term1 - term2)
