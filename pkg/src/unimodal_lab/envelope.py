"""Variance envelope on the unit circle and the membership threshold curve.

For an entire f with f(1) = 1, write V(f) = f''(1) + f'(1) - f'(1)^2 and

    H(f)(theta) = exp(-V(f) |1 - z|^2) - |f(z)|^2,   z = exp(i theta).

Functions with H(f) >= 0 everywhere form the class of interest; V is
additive over products and H obeys a two-term product identity, so the
normalized family f(z) = ((1+z)/2)^m (1+z^k)/2 reduces to a scalar
curve: H >= 0 at theta exactly when m >= threshold_value(k, theta).
Membership is therefore decided by the maximum of that curve over
(0, pi), which lives in (pi/k, 2 pi/k] and is located by the grid
kernels plus golden-section refinement.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import kernels
from .certmax import limit_shape

__all__ = [
    "ReductionViolation",
    "Inconclusive",
    "VarianceInput",
    "ThetaScan",
    "ThresholdMax",
    "MembershipCertificate",
    "SandwichReport",
    "variance",
    "poly_eval_circle",
    "envelope_defect",
    "defect_general",
    "product_identity_residual",
    "denominator_gap",
    "smooth_part",
    "log_part",
    "threshold_value",
    "singular_angles",
    "max_threshold",
    "membership_certificate",
    "quartic_floor_check",
    "sandwich_check",
]

_SMALL_REGIME_NOTE = "interval reduction is an asymptotic device; k < 9 is outside the verified regime"


class ReductionViolation(Exception):
    """A full-interval scan beat the reduced-interval maximum."""


class Inconclusive(Exception):
    """Membership margin fell inside the undecidable numeric band."""

    def __init__(self, min_margin: float, witness_theta: float):
        super().__init__(
            f"min margin {min_margin:.3e} at theta={witness_theta:.12g} is inside the "
            "inconclusive band (-1e-9, -1e-12]"
        )
        self.min_margin = min_margin
        self.witness_theta = witness_theta


@dataclass(frozen=True)
class VarianceInput:
    """A normalized polynomial presented by coefficients or in closed form.

    kind is "coeffs" (payload: exact coefficient tuple, f(1) = 1),
    "binomial-power" (((1+z)/2)^m, payload m) or "spike" ((1+z^k)/2,
    payload k).
    """

    kind: str
    payload: tuple

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "VarianceInput":
        vals = [Fraction(c) for c in coeffs]
        total = sum(vals)
        if total == 0:
            raise ValueError("cannot normalize: coefficients sum to 0")
        return cls("coeffs", tuple(c / total for c in vals))

    @classmethod
    def binomial_power(cls, m: int) -> "VarianceInput":
        if m < 0:
            raise ValueError(f"m must be >= 0, got {m}")
        return cls("binomial-power", (m,))

    @classmethod
    def spike(cls, k: int) -> "VarianceInput":
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        return cls("spike", (k,))


def variance(vi: VarianceInput) -> Fraction:
    """V(f) = f''(1) + f'(1) - f'(1)^2, exact.

    Closed forms: m/4 for ((1+z)/2)^m and k^2/4 for (1+z^k)/2; both match
    the coefficient route. V is additive over products of normalized
    factors.
    """
    if vi.kind == "binomial-power":
        return Fraction(vi.payload[0], 4)
    if vi.kind == "spike":
        k = vi.payload[0]
        return Fraction(k * k, 4)
    if vi.kind == "coeffs":
        d1 = sum(Fraction(u) * c for u, c in enumerate(vi.payload))
        d2 = sum(Fraction(u * (u - 1)) * c for u, c in enumerate(vi.payload))
        return d2 + d1 - d1 * d1
    raise ValueError(f"unknown variance input kind: {vi.kind!r}")


def poly_eval_circle(coeffs: Sequence[float], theta: float) -> complex:
    """Evaluate sum c_u z^u at z = exp(i theta) by Horner."""
    z = cmath.exp(1j * theta)
    acc = 0j
    for c in reversed(list(coeffs)):
        acc = acc * z + complex(c)
    return acc


def envelope_defect(m: int, k: int, theta: float) -> float:
    """H for the normalized family ((1+z)/2)^m (1+z^k)/2 at angle theta.

    Equals exp(-(k^2 + m) sin^2(theta/2)) - cos^2(k theta/2)
    (cos^2(theta/2))^m; nonnegative exactly when m >= threshold_value.
    """
    s = math.sin(0.5 * theta) ** 2
    c2 = math.cos(0.5 * theta) ** 2
    ck2 = math.cos(0.5 * k * theta) ** 2
    return math.exp(-(k * k + m) * s) - ck2 * c2**m


def defect_general(coeffs: Sequence[float], theta: float) -> float:
    """H for an arbitrary coefficient vector (normalized to f(1) = 1)."""
    vi = VarianceInput.from_coeffs(coeffs)
    v = float(variance(vi))
    w = 4.0 * math.sin(0.5 * theta) ** 2
    val = poly_eval_circle([float(c) for c in vi.payload], theta)
    return math.exp(-v * w) - abs(val) ** 2


def product_identity_residual(
    f: Sequence[float], g: Sequence[float], theta: float
) -> float:
    """Relative residual of H(fg) = exp(-V(f)|1-z|^2) H(g) + |g|^2 H(f).

    Inputs are normalized internally; the residual is scaled by the
    largest term magnitude (floor 1), so ~1e-16 means exact to noise.
    """
    fn = [float(c) for c in VarianceInput.from_coeffs(f).payload]
    gn = [float(c) for c in VarianceInput.from_coeffs(g).payload]
    prod = [0.0] * (len(fn) + len(gn) - 1)
    for i, cf in enumerate(fn):
        for j, cg in enumerate(gn):
            prod[i + j] += cf * cg
    h_fg = defect_general(prod, theta)
    w = 4.0 * math.sin(0.5 * theta) ** 2
    vf = float(variance(VarianceInput.from_coeffs(fn)))
    t1 = math.exp(-vf * w) * defect_general(gn, theta)
    t2 = abs(poly_eval_circle(gn, theta)) ** 2 * defect_general(fn, theta)
    scale = max(1.0, abs(h_fg), abs(t1), abs(t2))
    return abs(h_fg - (t1 + t2)) / scale


def denominator_gap(s: float) -> float:
    """-log1p(-s) - s, via a series tail for small s to dodge cancellation."""
    if s >= 1.0:
        return float("inf")
    if s < 1e-4:
        return s * s * (0.5 + s * (1.0 / 3.0 + s * (0.25 + s * 0.2)))
    return -math.log1p(-s) - s


def smooth_part(k: int, theta: float) -> float:
    """k^2 sin^2(theta/2) / denominator_gap; strictly decreasing in theta."""
    s = math.sin(0.5 * theta) ** 2
    if s >= 1.0:
        return 0.0
    return k * k * s / denominator_gap(s)


def log_part(k: int, theta: float) -> float:
    """ln cos^2(k theta/2) / denominator_gap; <= 0, -inf at singular angles."""
    s = math.sin(0.5 * theta) ** 2
    sk = math.sin(0.5 * k * theta)
    sk2 = sk * sk
    if sk2 >= 1.0:
        return float("-inf")
    if s >= 1.0:
        return 0.0
    return math.log1p(-sk2) / denominator_gap(s)


def threshold_value(k: int, theta: float) -> float:
    """The membership threshold curve L(k, theta).

    H(m, k, .) >= 0 at theta iff m >= L(k, theta). Evaluated as one
    fused expression (identical branch structure to the grid kernels);
    returns -inf where the curve diverges to -inf (singular angles, and
    theta so close to pi that sin^2(theta/2) rounds to 1).
    """
    half = 0.5 * theta
    s = math.sin(half)
    s = s * s
    if s >= 1.0:
        return float("-inf")
    sk = math.sin(k * half)
    sk2 = sk * sk
    if sk2 >= 1.0:
        return float("-inf")
    num = (k * k) * s + math.log1p(-sk2)
    return num / denominator_gap(s)


def singular_angles(k: int) -> list[float]:
    """Odd multiples of pi/k inside (0, pi], where the curve dives to -inf."""
    return [(2 * t + 1) * math.pi / k for t in range(0, (k - 1) // 2 + 1)]


@dataclass(frozen=True)
class ThetaScan:
    """Scan configuration for the threshold curve.

    exclusion_eps is the guard radius around singular angles; None means
    the default 1e-8 * pi / k.
    """

    k: int
    grid_points: int = 100_000
    refine_tol: float = 1e-10
    exclusion_eps: Optional[float] = None

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 2:
            raise ValueError(f"k must be an integer >= 2, got {self.k!r}")
        if self.grid_points < 1000:
            raise ValueError(f"grid_points must be >= 1000, got {self.grid_points}")
        if not self.refine_tol > 0.0:
            raise ValueError(f"refine_tol must be positive, got {self.refine_tol}")
        if self.exclusion_eps is not None and not self.exclusion_eps > 0.0:
            raise ValueError(f"exclusion_eps must be positive, got {self.exclusion_eps}")

    @property
    def effective_eps(self) -> float:
        if self.exclusion_eps is not None:
            return self.exclusion_eps
        return 1e-8 * math.pi / self.k


@dataclass(frozen=True)
class ThresholdMax:
    """Refined maximum of the threshold curve for one k."""

    k: int
    max_value: float
    argmax_theta: float
    min_m: int
    ratio_k4: float
    near_integer: bool


@dataclass(frozen=True)
class MembershipCertificate:
    """Grid-certified membership verdict for one (m, k)."""

    m: int
    k: int
    member: bool
    min_margin: float
    witness_theta: float
    grid_points: int


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def _golden_max(
    f: Callable[[float], float], a: float, b: float, tol: float
) -> tuple[float, float]:
    # golden-section maximization; evaluates strictly inside (a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)
    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    yc = f(c)
    yd = f(d)
    while h > tol:
        if yc >= yd:
            b, d, yd = d, c, yc
            h = b - a
            c = a + _INVPHI2 * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h = b - a
            d = a + _INVPHI * h
            yd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _warn_small_k(k: int) -> None:
    if k < 9:
        warnings.warn(_SMALL_REGIME_NOTE, UserWarning, stacklevel=3)


def max_threshold(scan: ThetaScan) -> ThresholdMax:
    """Locate max of the threshold curve over (pi/k, 2 pi/k], certified.

    Pipeline: guarded right-closed grid scan, golden-section refinement
    around the best grid point, then a guarded coarse scan of the whole
    (0, pi) as a check that the reduced interval really carries the
    global maximum (ReductionViolation otherwise, at 1e-9 relative).

    min_m is the least integer m that is a member. When the maximum sits
    within 1e-6 of an integer the ceiling is not trusted: both candidate
    integers are resolved by direct membership certificates and the
    result is flagged near_integer.
    """
    k = scan.k
    _warn_small_k(k)
    lo = math.pi / k
    hi = 2.0 * math.pi / k
    eps = scan.effective_eps
    n = scan.grid_points
    best, best_theta = kernels.grid_max_threshold(k, lo, hi, n, eps)
    if not math.isfinite(best):
        raise ReductionViolation(f"no admissible grid point in (pi/{k}, 2pi/{k}]")
    step = (hi - lo) / n
    a = max(best_theta - step, lo)
    b = min(best_theta + step, hi)
    ref_theta, ref_val = _golden_max(
        lambda th: threshold_value(k, th), a, b, scan.refine_tol
    )
    if ref_val < best:
        ref_theta, ref_val = best_theta, best
    coarse, coarse_theta = kernels.grid_max_threshold(
        k, 1e-6, math.pi - 1e-6, max(20_000, n // 10), eps
    )
    if coarse > ref_val + 1e-9 * max(1.0, abs(ref_val)):
        raise ReductionViolation(
            f"full-interval scan found {coarse:.12g} at theta={coarse_theta:.12g}, "
            f"above the reduced-interval maximum {ref_val:.12g}"
        )
    nearest = round(ref_val)
    near = abs(ref_val - nearest) < 1e-6
    if near:
        cand = int(nearest)
        cert = membership_certificate(cand, k, grid_points=n, exclusion_eps=eps)
        min_m = cand if cert.member else cand + 1
    else:
        min_m = math.ceil(ref_val)
    return ThresholdMax(k, ref_val, ref_theta, min_m, ref_val / k**4, near)


def _decide_margin(margin: float) -> bool:
    if margin >= -1e-12:
        return True
    if margin <= -1e-9:
        return False
    raise Inconclusive(margin, float("nan"))


def membership_certificate(
    m: int,
    k: int,
    grid_points: int = 100_000,
    exclusion_eps: Optional[float] = None,
) -> MembershipCertificate:
    """Decide whether (m, k) is in the class by scanning the margin m - L.

    The margin is minimized over a guarded grid on (0, pi) and refined by
    golden section. Verdict bands on the refined minimum: >= -1e-12 is a
    member, <= -1e-9 is not (witness_theta locates the violation), and
    the band between raises Inconclusive rather than guessing.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    scan = ThetaScan(k, grid_points=grid_points, exclusion_eps=exclusion_eps)
    _warn_small_k(k)
    eps = scan.effective_eps
    lo = 1e-6
    hi = math.pi - 1e-6
    margin, theta = kernels.grid_min_margin(float(m), k, lo, hi, grid_points, eps)
    if not math.isfinite(margin):
        raise ValueError("margin scan found no admissible grid point")
    step = (hi - lo) / grid_points
    a = max(theta - step, lo)
    b = min(theta + step, hi)
    ref_theta, neg = _golden_max(
        lambda th: threshold_value(k, th) - m, a, b, scan.refine_tol
    )
    ref_margin = -neg
    if ref_margin > margin:
        ref_theta, ref_margin = theta, margin
    try:
        member = _decide_margin(ref_margin)
    except Inconclusive:
        raise Inconclusive(ref_margin, ref_theta) from None
    return MembershipCertificate(m, k, member, ref_margin, ref_theta, grid_points)


def _quartic_margin_small(psi: float) -> float:
    # series for denominator_gap(sin^2 psi) - psi^4/2; the psi^4 and psi^6
    # orders cancel identically, so the difference is computed term-grouped
    # (leading survivor psi^8/60) instead of by subtraction
    p2 = psi * psi
    eps = p2 * p2 * (2.0 / 45.0 + p2 * (-1.0 / 315.0 + p2 * (2.0 / 14175.0)))
    delta = -p2 / 3.0 + eps  # sin^2 psi = psi^2 (1 + delta)
    one = 1.0 + delta
    cube_rest = delta * (3.0 + delta * (3.0 + delta))  # (1+delta)^3 - 1
    p4 = p2 * p2
    p6 = p4 * p2
    return (
        p4 * eps
        + 0.5 * p4 * delta * delta
        + p6 * cube_rest / 3.0
        + p6 * p2 * one**4 / 4.0
        + p6 * p4 * one**5 / 5.0
        + p6 * p6 * one**6 / 6.0
        + p6 * p6 * p2 * one**7 / 7.0
    )


def quartic_floor_check(psi: float) -> tuple[bool, float]:
    """Check denominator_gap(sin^2 psi) >= psi^4 / 2 and return the margin.

    The floor is the small-angle workhorse; it is asserted on
    (0, 1/(2 sqrt 2)] and in fact persists well past that. The margin is
    of order psi^8 near zero, far below the noise of direct subtraction,
    so small psi take a dedicated cancellation-free series.
    """
    if not 0.0 < psi <= 0.5 * math.pi:
        raise ValueError(f"psi must lie in (0, pi/2], got {psi}")
    if psi < 0.05:
        margin = _quartic_margin_small(psi)
    else:
        s = math.sin(psi) ** 2
        margin = denominator_gap(s) - 0.5 * psi**4
    return margin >= 0.0, margin


@dataclass(frozen=True)
class SandwichReport:
    """Pointwise and max-level comparison against the limit shape.

    For theta in (pi/k, 2 pi/k) and z = k theta / 2, the limit shape
    D(z) should squeeze L/k^4 between D/(1 + 8/k^2) and D. Violations
    are reported, not asserted away: the lower squeeze genuinely fails
    near theta = pi/k, where the log part blows up faster than the
    8/k^2 slack absorbs. The max-level enclosure (the quantity that
    matters for min_m scaling) uses the refined maximum.
    """

    k: int
    grid_points: int
    upper_ok: bool
    lower_ok: bool
    n_upper_violations: int
    n_lower_violations: int
    upper_violations: tuple[tuple[float, float, float], ...]
    lower_violations: tuple[tuple[float, float, float], ...]
    max_ratio: float
    enclosure_lo: float
    enclosure_hi: float
    max_in_enclosure: bool


def sandwich_check(
    k: int,
    alpha_lo: float,
    alpha_hi: float,
    grid_points: int = 10_000,
    keep: int = 20,
) -> SandwichReport:
    """Compare L/k^4 against the limit-shape sandwich on (pi/k, 2 pi/k).

    alpha_lo/alpha_hi is a certified enclosure of the limit-shape
    maximum. Pointwise slack is 1e-9 absolute on the ratio scale; the
    max-level check asks alpha_lo/(1+8/k^2) - 1e-9 <= max(L)/k^4 <=
    alpha_hi + 1e-9.
    """
    scan = ThetaScan(k, grid_points=max(grid_points, 1000))
    _warn_small_k(k)
    eps = scan.effective_eps
    lo = math.pi / k
    hi = 2.0 * math.pi / k
    n = scan.grid_points
    k4 = float(k) ** 4
    slack = 1.0 + 8.0 / (k * k)
    up_bad: list[tuple[float, float, float]] = []
    dn_bad: list[tuple[float, float, float]] = []
    n_up = 0
    n_dn = 0
    for i in range(1, n + 1):
        theta = lo + (hi - lo) * (i / n)
        u = theta * k / math.pi
        o = 2.0 * math.floor((u - 1.0) / 2.0 + 0.5) + 1.0
        if abs(u - o) * (math.pi / k) < eps:
            continue
        ratio = threshold_value(k, theta) / k4
        d = limit_shape(0.5 * k * theta)
        if ratio > d + 1e-9:
            n_up += 1
            if len(up_bad) < keep:
                up_bad.append((theta, ratio, d))
        lower = d / slack
        if ratio < lower - 1e-9:
            n_dn += 1
            if len(dn_bad) < keep:
                dn_bad.append((theta, ratio, lower))
    peak = max_threshold(ThetaScan(k, grid_points=max(n, 10_000)))
    lo_bound = alpha_lo / slack - 1e-9
    hi_bound = alpha_hi + 1e-9
    in_enc = lo_bound <= peak.ratio_k4 <= hi_bound
    return SandwichReport(
        k=k,
        grid_points=n,
        upper_ok=n_up == 0,
        lower_ok=n_dn == 0,
        n_upper_violations=n_up,
        n_lower_violations=n_dn,
        upper_violations=tuple(up_bad),
        lower_violations=tuple(dn_bad),
        max_ratio=peak.ratio_k4,
        enclosure_lo=lo_bound,
        enclosure_hi=hi_bound,
        max_in_enclosure=in_enc,
    )
