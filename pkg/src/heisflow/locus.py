"""Characteristic locus extraction by sign tracking on a parameter grid.

The locus is the zero set of the horizontal normal (n1, n2).  Its norm
||N^h|| never changes sign, so root finding runs on the components instead:
every grid edge on which n1 or n2 changes sign is bisected to the component
root, and the candidate survives only if the full norm vanishes there too.
Isolated characteristic points sitting exactly on grid nodes are caught by
a direct node test.  Curve-shaped loci are recovered as point chains at
edge resolution; isolated points off the node lattice can be missed when
the grid is too coarse, so refine the grid rather than the bisection when
points seem absent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .horizontal import _normal_components
from .patch import SurfaceHandle, eval_jet2

__all__ = ["LocusPoint", "characteristic_locus"]


@dataclass(frozen=True)
class LocusPoint:
    """A characteristic point in parameters and in ambient coordinates."""

    u: float
    v: float
    x: float
    y: float
    t: float
    nh_norm: float


def _keep_threshold(j, keep_tol: float) -> float:
    du, dv = j.du, j.dv
    scale = math.sqrt(float(du @ du) + float(dv @ dv))
    return keep_tol * (1.0 + scale)


def _bisect_edge(surface, ua, va, ga, ub, vb, gb, comp: int, refine: int):
    """Root of normal component ``comp`` on the segment (a, b) by bisection."""
    for _ in range(refine):
        um, vm = 0.5 * (ua + ub), 0.5 * (va + vb)
        gm = _normal_components(eval_jet2(surface, um, vm))[comp]
        if gm == 0.0:
            return um, vm
        if (ga < 0.0) != (gm < 0.0):
            ub, vb, gb = um, vm, gm
        else:
            ua, va, ga = um, vm, gm
    return 0.5 * (ua + ub), 0.5 * (va + vb)


def characteristic_locus(
    surface: SurfaceHandle,
    grid: tuple[int, int] = (101, 101),
    refine: int = 60,
    keep_tol: float = 1e-8,
) -> list[LocusPoint]:
    """Locate characteristic points on a (nu x nv) grid of the domain.

    ``refine`` bisection steps per sign-changing edge; candidates are kept
    when ||N^h|| falls under ``keep_tol`` times a first-jet scale factor.
    Returns points sorted by (u, v), deduplicated at 1e-6 of the spans.
    """
    nu, nv = grid
    if nu < 2 or nv < 2:
        raise ValueError(f"grid must be at least 2x2, got {grid}")
    us, vs = surface.domain.linspace(nu, nv)
    n1g = [[0.0] * nv for _ in range(nu)]
    n2g = [[0.0] * nv for _ in range(nu)]
    found: list[LocusPoint] = []

    def consider(u: float, v: float):
        j = eval_jet2(surface, u, v)
        n1, n2 = _normal_components(j)
        q = math.hypot(n1, n2)
        if q <= _keep_threshold(j, keep_tol):
            x, y, t = (float(c) for c in j.value)
            found.append(LocusPoint(u, v, x, y, t, q))

    for i, u in enumerate(us):
        for k, v in enumerate(vs):
            j = eval_jet2(surface, float(u), float(v))
            n1, n2 = _normal_components(j)
            n1g[i][k] = n1
            n2g[i][k] = n2
            if math.hypot(n1, n2) <= _keep_threshold(j, keep_tol):
                x, y, t = (float(c) for c in j.value)
                found.append(LocusPoint(float(u), float(v), x, y, t, math.hypot(n1, n2)))

    def scan_edge(ua, va, ub, vb, comp_vals_a, comp_vals_b):
        for comp in (0, 1):
            ga, gb = comp_vals_a[comp], comp_vals_b[comp]
            if ga == 0.0 or gb == 0.0 or (ga < 0.0) == (gb < 0.0):
                continue
            ur, vr = _bisect_edge(surface, ua, va, ga, ub, vb, gb, comp, refine)
            consider(ur, vr)

    for i in range(nu):
        for k in range(nv):
            a = (n1g[i][k], n2g[i][k])
            if i + 1 < nu:
                b = (n1g[i + 1][k], n2g[i + 1][k])
                scan_edge(float(us[i]), float(vs[k]), float(us[i + 1]), float(vs[k]), a, b)
            if k + 1 < nv:
                b = (n1g[i][k + 1], n2g[i][k + 1])
                scan_edge(float(us[i]), float(vs[k]), float(us[i]), float(vs[k + 1]), a, b)

    found.sort(key=lambda p: (p.u, p.v))
    merge_u = 1e-6 * max(surface.domain.u_span, 1e-300)
    merge_v = 1e-6 * max(surface.domain.v_span, 1e-300)
    kept: list[LocusPoint] = []
    for p in found:
        if any(
            abs(p.u - q.u) <= merge_u and abs(p.v - q.v) <= merge_v for q in kept
        ):
            continue
        kept.append(p)
    return kept
