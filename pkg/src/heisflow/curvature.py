"""Horizontal mean curvature from local data or from an integrated flow leaf.

The horizontal mean curvature H of a surface at a non-characteristic point
equals the signed curvature of the complex-plane projection of the horizontal
flow leaf through that point.  With nu = (nu1, nu2) the unit horizontal
normal, differentiating nu along the flow direction gives the local formula

    H = (p_v * A_u - p_u * A_v) / ||N^h||^3,
    A_u = n1 d(n2)/du - n2 d(n1)/du,   A_v = n1 d(n2)/dv - n2 d(n1)/dv.

Whenever the projected parameter Jacobian d(x,y) is nonzero this agrees
algebraically with the determinant quotient

    H = (d(nu1, y) + d(x, nu2)) / d(x, y),

but unlike the quotient it stays well conditioned near the characteristic
locus and remains meaningful when d(x,y) vanishes identically, e.g. on
cylinders over plane curves, where it returns the signed curvature of the
profile instead of a conventional zero.  The quotient form is kept as
:func:`mean_curvature_jacobian_quotient` for cross-checks.

Sign conventions: a unit-speed plane curve with velocity (-nu2, nu1) and
acceleration kappa * (-nu1, -nu2) has signed curvature kappa; the
counterclockwise unit circle has kappa = +1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import (
    CharacteristicPoint,
    FlowEscapedDomain,
    NearCharacteristicWarning,
    ZeroSpeed,
)
from .horizontal import EPS_CHAR, char_threshold, is_characteristic
from .patch import Jet2, SurfaceHandle, eval_jet2

__all__ = [
    "EPS_JACOBIAN",
    "MINIMALITY_BAND",
    "NEAR_CHAR_FACTOR",
    "CurvatureSample",
    "HMinimalityReport",
    "signed_curvature_plane",
    "mean_curvature_local",
    "mean_curvature_jacobian_quotient",
    "mean_curvature_flow_oracle",
    "is_h_minimal",
]

# Below this |d(x,y)| the determinant-quotient form switches to its
# vertical-tangency convention.
EPS_JACOBIAN = 1e-10

# Conditioning margin: within NEAR_CHAR_FACTOR * threshold of the
# characteristic locus the local formula is flagged as degraded.
NEAR_CHAR_FACTOR = 100.0

# Grid minimality checks skip a wider conditioning band.  The jet entries
# themselves carry relative rounding, which perturbs H by roughly
# eps * scale^3 / ||N^h||^2 at first order, so absolute-1e-8 claims need
# ||N^h|| >= MINIMALITY_BAND * (1 + ||d1||_F); no rearrangement of the
# formula can do better with rounded inputs.
MINIMALITY_BAND = 1e-3

# Dekker splitting constant, 2**27 + 1.
_SPLIT = 134217729.0


@dataclass(frozen=True)
class CurvatureSample:
    """One curvature evaluation: parameters, value and provenance."""

    u: float
    v: float
    H: float
    method: str  # "local-formula" | "flow-oracle"
    char_flag: bool
    nh_norm: float
    near_char: bool = False


@dataclass(frozen=True)
class HMinimalityReport:
    """Grid summary of |H| away from the characteristic locus."""

    max_abs_H: float
    argmax: tuple[float, float] | None
    n_evaluated: int
    n_skipped: int
    tol: float
    passed: bool
    grid: tuple[int, int]


def signed_curvature_plane(d1, d2) -> float:
    """Signed curvature (x' y'' - y' x'') / |(x', y')|^3 of a plane curve."""
    xd, yd = float(d1[0]), float(d1[1])
    xdd, ydd = float(d2[0]), float(d2[1])
    speed2 = xd * xd + yd * yd
    if speed2 <= 0.0 or not math.isfinite(speed2):
        raise ZeroSpeed("signed curvature undefined at zero velocity")
    return (xd * ydd - yd * xdd) / (speed2 * math.sqrt(speed2))


def _two_prod(a: float, b: float) -> tuple[float, float]:
    """Error-free product: (p, e) with p = fl(a*b) and p + e = a*b exactly."""
    p = a * b
    ah = _SPLIT * a
    ah -= ah - a
    al = a - ah
    bh = _SPLIT * b
    bh -= bh - b
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _fsum_terms(pairs, triples=()) -> float:
    """Correctly rounded sum of a*b pairs and c*a*b triples.

    Every product is expanded error-free before the fsum, so cancellation
    between terms costs no accuracy; triples assume c is an exact double
    (here always +-2x, +-2y or a doubled jet entry, and doubling is exact).
    """
    acc = []
    for a, b in pairs:
        p, e = _two_prod(a, b)
        acc.append(p)
        acc.append(e)
    for c, a, b in triples:
        p, e = _two_prod(a, b)
        q, f = _two_prod(c, p)
        acc.append(q)
        acc.append(f)
        acc.append(c * e)
    return math.fsum(acc)


def _normal_jet(j: Jet2):
    """n1, n2, their parameter derivatives, and d(x,y), all from one 2-jet.

    With N^h = (jyt + 2y*jxy, jtx - 2x*jxy) in jacobian shorthand, the six
    outputs are that pair and its u- and v-derivatives by the product rule.
    Near the characteristic locus the sums cancel to far below the size of
    their terms, so each is accumulated with error-free products: the
    results are correctly rounded functions of the jet entries, leaving the
    curvature limited by input rounding rather than by the arithmetic.
    """
    x2, y2 = 2.0 * float(j.value[0]), 2.0 * float(j.value[1])
    xu, yu, tu = map(float, j.du)
    xv, yv, tv = map(float, j.dv)
    xuu, yuu, tuu = map(float, j.duu)
    xuv, yuv, tuv = map(float, j.duv)
    xvv, yvv, tvv = map(float, j.dvv)
    xu2, yu2, xv2, yv2 = 2.0 * xu, 2.0 * yu, 2.0 * xv, 2.0 * yv

    jxy = _fsum_terms(((xu, yv), (-yu, xv)))
    n1 = _fsum_terms(
        ((yu, tv), (-tu, yv)),
        ((y2, xu, yv), (-y2, yu, xv)),
    )
    n2 = _fsum_terms(
        ((tu, xv), (-xu, tv)),
        ((-x2, xu, yv), (x2, yu, xv)),
    )
    n1_u = _fsum_terms(
        ((yuu, tv), (yu, tuv), (-tuu, yv), (-tu, yuv)),
        ((yu2, xu, yv), (-yu2, yu, xv),
         (y2, xuu, yv), (y2, xu, yuv), (-y2, yuu, xv), (-y2, yu, xuv)),
    )
    n1_v = _fsum_terms(
        ((yuv, tv), (yu, tvv), (-tuv, yv), (-tu, yvv)),
        ((yv2, xu, yv), (-yv2, yu, xv),
         (y2, xuv, yv), (y2, xu, yvv), (-y2, yuv, xv), (-y2, yu, xvv)),
    )
    n2_u = _fsum_terms(
        ((tuu, xv), (tu, xuv), (-xuu, tv), (-xu, tuv)),
        ((-xu2, xu, yv), (xu2, yu, xv),
         (-x2, xuu, yv), (-x2, xu, yuv), (x2, yuu, xv), (x2, yu, xuv)),
    )
    n2_v = _fsum_terms(
        ((tuv, xv), (tu, xvv), (-xuv, tv), (-xu, tvv)),
        ((-xv2, xu, yv), (xv2, yu, xv),
         (-x2, xuv, yv), (-x2, xu, yvv), (x2, yuv, xv), (x2, yu, xvv)),
    )
    return n1, n2, n1_u, n1_v, n2_u, n2_v, jxy


def _normal_jet_fd(surface: SurfaceHandle, u: float, v: float, h: float):
    """Same data as :func:`_normal_jet` with the nu-derivatives by central FD."""
    from .horizontal import _normal_components  # first-jet data only

    j = eval_jet2(surface, u, v)
    x, y = float(j.value[0]), float(j.value[1])
    xu, yu, _ = j.du
    xv, yv, _ = j.dv
    jxy = xu * yv - yu * xv
    n1, n2 = _normal_components(j)

    dom = surface.domain
    hu = min(h, u - dom.u_min, dom.u_max - u)
    hv = min(h, v - dom.v_min, dom.v_max - v)
    if hu < 1e-14 or hv < 1e-14:
        raise FlowEscapedDomain(
            f"no room for the nu finite-difference stencil at ({u}, {v})"
        )
    n1pu, n2pu = _normal_components(eval_jet2(surface, u + hu, v))
    n1mu, n2mu = _normal_components(eval_jet2(surface, u - hu, v))
    n1pv, n2pv = _normal_components(eval_jet2(surface, u, v + hv))
    n1mv, n2mv = _normal_components(eval_jet2(surface, u, v - hv))
    n1_u = (n1pu - n1mu) / (2.0 * hu)
    n2_u = (n2pu - n2mu) / (2.0 * hu)
    n1_v = (n1pv - n1mv) / (2.0 * hv)
    n2_v = (n2pv - n2mv) / (2.0 * hv)
    return n1, n2, n1_u, n1_v, n2_u, n2_v, jxy


def _gate_characteristic(j, q, eps_char, warn):
    thr = char_threshold(j, eps_char)
    if q < thr:
        raise CharacteristicPoint(f"curvature undefined: ||N^h|| = {q:.3e}")
    near = q < NEAR_CHAR_FACTOR * thr
    if near and warn:
        warnings.warn(
            f"||N^h|| = {q:.3e} within {NEAR_CHAR_FACTOR:g}x of the "
            "characteristic threshold; curvature accuracy degrades",
            NearCharacteristicWarning,
            stacklevel=3,
        )
    return near


def mean_curvature_local(
    surface: SurfaceHandle,
    u: float,
    v: float,
    *,
    eps_char: float = EPS_CHAR,
    deriv: str = "exact",
    fd_step: float | None = None,
    warn: bool = True,
) -> CurvatureSample:
    """Horizontal mean curvature from the local formula at one point.

    ``deriv`` selects how the parameter derivatives of the unit normal are
    obtained: "exact" uses the patch second jets through the chain rule,
    "fd" central-differences the normal components with step ``fd_step``
    (default 1e-5 of the larger domain span).
    """
    j = eval_jet2(surface, u, v)
    if deriv == "exact":
        n1, n2, n1_u, n1_v, n2_u, n2_v, _ = _normal_jet(j)
    elif deriv == "fd":
        if fd_step is None:
            dom = surface.domain
            fd_step = 1e-5 * max(dom.u_span, dom.v_span)
        n1, n2, n1_u, n1_v, n2_u, n2_v, _ = _normal_jet_fd(surface, u, v, fd_step)
    else:
        raise ValueError(f"deriv must be 'exact' or 'fd', got {deriv!r}")

    q2 = n1 * n1 + n2 * n2
    q = math.sqrt(q2)
    near = _gate_characteristic(j, q, eps_char, warn)

    x2, y2 = 2.0 * float(j.value[0]), 2.0 * float(j.value[1])
    xu, yu, tu = map(float, j.du)
    xv, yv, tv = map(float, j.dv)
    p_u = _fsum_terms(((tu, 1.0), (x2, yu), (-y2, xu)))
    p_v = _fsum_terms(((tv, 1.0), (x2, yv), (-y2, xv)))
    a_u = _fsum_terms(((n1, n2_u), (-n2, n1_u)))
    a_v = _fsum_terms(((n1, n2_v), (-n2, n1_v)))
    H = _fsum_terms(((p_v, a_u), (-p_u, a_v))) / (q2 * q)
    return CurvatureSample(u, v, H, "local-formula", False, q, near)


def mean_curvature_jacobian_quotient(
    surface: SurfaceHandle,
    u: float,
    v: float,
    *,
    eps_char: float = EPS_CHAR,
    eps_jacobian: float = EPS_JACOBIAN,
) -> float:
    """Determinant form (d(nu1,y) + d(x,nu2)) / d(x,y) of the local formula.

    By convention returns 0 when |d(x,y)| < ``eps_jacobian``, which is only
    geometrically meaningful when the patch genuinely sits inside a plane
    containing the vertical direction; see the module docstring.  Kept for
    cross-checking :func:`mean_curvature_local`.
    """
    j = eval_jet2(surface, u, v)
    n1, n2, n1_u, n1_v, n2_u, n2_v, jxy = _normal_jet(j)
    q2 = n1 * n1 + n2 * n2
    q = math.sqrt(q2)
    _gate_characteristic(j, q, eps_char, warn=False)
    if abs(jxy) < eps_jacobian:
        return 0.0
    q3 = q2 * q
    nu1_u = n2 * (n2 * n1_u - n1 * n2_u) / q3
    nu1_v = n2 * (n2 * n1_v - n1 * n2_v) / q3
    nu2_u = n1 * (n1 * n2_u - n2 * n1_u) / q3
    nu2_v = n1 * (n1 * n2_v - n2 * n1_v) / q3
    xu, yu, _ = j.du
    xv, yv, _ = j.dv
    num = (nu1_u * yv - nu1_v * yu) + (xu * nu2_v - xv * nu2_u)
    return num / jxy


def mean_curvature_flow_oracle(
    surface: SurfaceHandle,
    u: float,
    v: float,
    *,
    ds: float = 1e-3,
    n_steps: int = 3,
    eps_char: float = EPS_CHAR,
) -> CurvatureSample:
    """Curvature via the geometric definition: integrate the horizontal flow
    through (u, v), project the leaf to the complex plane, and estimate the
    signed curvature of the projection at the seed by central differences.

    Independent of the local formula; agreement between the two validates
    both.  Needs at least one completed flow step on each side of the seed,
    otherwise FlowEscapedDomain is raised.
    """
    from .flow import integrate_flow

    trace = integrate_flow(
        surface, u, v, ds=ds, max_steps=n_steps, eps_char=eps_char
    )
    i = trace.seed_index
    if i < 1 or i > len(trace.points) - 2:
        raise FlowEscapedDomain(
            "flow leaf too short on one side of the seed for a curvature stencil"
        )
    p_prev = trace.points[i - 1, :2]
    p_mid = trace.points[i, :2]
    p_next = trace.points[i + 1, :2]
    d1 = (p_next - p_prev) / (2.0 * ds)
    d2 = (p_next - 2.0 * p_mid + p_prev) / (ds * ds)
    kappa = signed_curvature_plane(d1, d2)
    q = is_characteristic(eval_jet2(surface, u, v), eps_char).nh_norm
    return CurvatureSample(u, v, kappa, "flow-oracle", False, q)


def is_h_minimal(
    surface: SurfaceHandle,
    grid: tuple[int, int] = (101, 101),
    tol: float = 1e-8,
    eps_char: float = EPS_CHAR,
) -> HMinimalityReport:
    """Grid test of horizontal minimality: max |H| <= tol off the locus.

    Cells too close to the characteristic locus for an absolute claim at
    tol, meaning ||N^h|| below max(NEAR_CHAR_FACTOR * threshold,
    MINIMALITY_BAND * (1 + ||d1||_F)), are skipped and counted; an
    all-skipped grid yields an empty, failed report rather than an error.
    """
    us, vs = surface.domain.linspace(*grid)
    worst = -1.0
    argmax = None
    n_eval = 0
    n_skip = 0
    for u in us:
        for v in vs:
            j = eval_jet2(surface, float(u), float(v))
            _, q = is_characteristic(j, eps_char)
            band = max(
                NEAR_CHAR_FACTOR * char_threshold(j, eps_char),
                char_threshold(j, MINIMALITY_BAND),
            )
            if q < band:
                n_skip += 1
                continue
            sample = mean_curvature_local(
                surface, float(u), float(v), eps_char=eps_char, warn=False
            )
            n_eval += 1
            if abs(sample.H) > worst:
                worst = abs(sample.H)
                argmax = (float(u), float(v))
    if n_eval == 0:
        return HMinimalityReport(math.nan, None, 0, n_skip, tol, False, grid)
    return HMinimalityReport(worst, argmax, n_eval, n_skip, tol, worst <= tol, grid)
