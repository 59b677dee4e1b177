"""Surface patches as second-order jet evaluators over rectangular domains.

A :class:`SurfaceHandle` bundles a closed parameter rectangle with a function
returning the full 2-jet of the parametrisation at a point: the ambient value
(x, y, t), the six first partials and the nine second partials (mixed partials
symmetric, stored once).  Built-in surfaces differentiate in closed form;
value-only user maps get central-difference jets via :func:`fd_jet2` or the
:func:`from_value_map` adapter.  Handles are immutable; re-parametrisation
produces a fresh handle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import NotRegular, OutOfDomain

__all__ = [
    "Domain",
    "Jet2",
    "SurfaceHandle",
    "EPS_REG",
    "jet2",
    "eval_jet2",
    "jacobians",
    "fd_jet2",
    "fd_step",
    "make_surface",
    "from_value_map",
    "reparametrize_affine",
]

# Below this sampled value of |sigma_u x sigma_v| a patch is reported
# NotRegular instead of silently continuing.
EPS_REG = 1e-8

_CBRT_EPS = float(np.finfo(float).eps) ** (1.0 / 3.0)
_ZERO3 = (0.0, 0.0, 0.0)


@dataclass(frozen=True)
class Domain:
    """Closed rectangle [u_min, u_max] x [v_min, v_max] in parameter space."""

    u_min: float
    u_max: float
    v_min: float
    v_max: float

    def __post_init__(self):
        vals = (self.u_min, self.u_max, self.v_min, self.v_max)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"domain bounds must be finite, got {vals!r}")
        if not (self.u_min < self.u_max and self.v_min < self.v_max):
            raise ValueError(f"empty domain {vals!r}")

    @property
    def u_span(self) -> float:
        return self.u_max - self.u_min

    @property
    def v_span(self) -> float:
        return self.v_max - self.v_min

    def contains(self, u: float, v: float) -> bool:
        return self.u_min <= u <= self.u_max and self.v_min <= v <= self.v_max

    def linspace(self, nu: int, nv: int) -> tuple[np.ndarray, np.ndarray]:
        """Inclusive nu x nv grid axes over the rectangle."""
        return (
            np.linspace(self.u_min, self.u_max, nu),
            np.linspace(self.v_min, self.v_max, nv),
        )

    def interior_linspace(
        self, nu: int, nv: int, margin: float = 1e-6
    ) -> tuple[np.ndarray, np.ndarray]:
        """Grid axes inset from the boundary by ``margin`` of each span."""
        du = margin * self.u_span
        dv = margin * self.v_span
        return (
            np.linspace(self.u_min + du, self.u_max - du, nu),
            np.linspace(self.v_min + dv, self.v_max - dv, nv),
        )


@dataclass(frozen=True, eq=False)
class Jet2:
    """Value and first/second parameter derivatives of a patch at one point.

    Every field is a length-3 array over the ambient coordinates (x, y, t).
    ``duv`` is the symmetric mixed partial, stored once.
    """

    value: np.ndarray
    du: np.ndarray
    dv: np.ndarray
    duu: np.ndarray
    duv: np.ndarray
    dvv: np.ndarray

    def __post_init__(self):
        for name in ("value", "du", "dv", "duu", "duv", "dvv"):
            arr = getattr(self, name)
            for comp in arr:
                if not math.isfinite(comp):
                    raise ValueError(f"non-finite jet component in {name}: {arr!r}")


def jet2(value, du, dv, duu=_ZERO3, duv=_ZERO3, dvv=_ZERO3) -> Jet2:
    """Build a :class:`Jet2` from any length-3 sequences."""
    return Jet2(
        np.asarray(value, float),
        np.asarray(du, float),
        np.asarray(dv, float),
        np.asarray(duu, float),
        np.asarray(duv, float),
        np.asarray(dvv, float),
    )


def jacobians(j: Jet2) -> tuple[float, float, float]:
    """The three 2x2 parameter Jacobians (d(y,t), d(t,x), d(x,y)).

    Convention: d(f,g) = f_u g_v - g_u f_v.
    """
    xu, yu, tu = j.du
    xv, yv, tv = j.dv
    return (yu * tv - tu * yv, tu * xv - xu * tv, xu * yv - yu * xv)


@dataclass(frozen=True)
class SurfaceHandle:
    """Immutable surface patch: a domain plus a 2-jet evaluator.

    ``orientation`` is fixed at +1; the parameter order itself carries the
    orientation, and flipping it means building a new handle with swapped
    parameters.
    """

    domain: Domain
    jet: Callable[[float, float], Jet2]
    label: str = ""
    orientation: int = field(default=1)


def eval_jet2(surface: SurfaceHandle, u: float, v: float) -> Jet2:
    """Evaluate the 2-jet, rejecting parameters outside the domain."""
    if not surface.domain.contains(u, v):
        raise OutOfDomain(
            f"(u, v) = ({u}, {v}) outside domain "
            f"[{surface.domain.u_min}, {surface.domain.u_max}] x "
            f"[{surface.domain.v_min}, {surface.domain.v_max}]"
        )
    return surface.jet(u, v)


def fd_step(u: float, v: float) -> float:
    """Default central-difference step, floored for second-derivative noise."""
    return max(1e-4, _CBRT_EPS * max(1.0, abs(u), abs(v)))


def fd_jet2(
    value_map: Callable[[float, float], tuple],
    u: float,
    v: float,
    h: float | None = None,
    domain: Domain | None = None,
) -> Jet2:
    """Second-order central-difference jet of a value-only map.

    When a domain is supplied the stencil is clipped to fit inside it: the
    step shrinks per axis to the available room, and the call fails with
    OutOfDomain if the evaluation point is outside or pinned to the boundary.
    """
    if h is None:
        h = fd_step(u, v)
    if h <= 0.0 or not math.isfinite(h):
        raise ValueError(f"step must be positive and finite, got {h!r}")
    hu = hv = h
    if domain is not None:
        if not domain.contains(u, v):
            raise OutOfDomain(f"(u, v) = ({u}, {v}) outside stencil domain")
        hu = min(h, u - domain.u_min, domain.u_max - u)
        hv = min(h, v - domain.v_min, domain.v_max - v)
        if hu < 1e-12 or hv < 1e-12:
            raise OutOfDomain(
                f"no room for a width-{h:g} stencil at ({u}, {v})"
            )

    f0 = np.asarray(value_map(u, v), float)
    fpu = np.asarray(value_map(u + hu, v), float)
    fmu = np.asarray(value_map(u - hu, v), float)
    fpv = np.asarray(value_map(u, v + hv), float)
    fmv = np.asarray(value_map(u, v - hv), float)
    fpp = np.asarray(value_map(u + hu, v + hv), float)
    fpm = np.asarray(value_map(u + hu, v - hv), float)
    fmp = np.asarray(value_map(u - hu, v + hv), float)
    fmm = np.asarray(value_map(u - hu, v - hv), float)

    return Jet2(
        f0,
        (fpu - fmu) / (2.0 * hu),
        (fpv - fmv) / (2.0 * hv),
        (fpu - 2.0 * f0 + fmu) / (hu * hu),
        (fpp - fpm - fmp + fmm) / (4.0 * hu * hv),
        (fpv - 2.0 * f0 + fmv) / (hv * hv),
    )


def _check_regularity(
    jet_fn: Callable[[float, float], Jet2],
    domain: Domain,
    grid: tuple[int, int],
    eps_reg: float,
    label: str,
) -> None:
    us, vs = domain.interior_linspace(*grid)
    for u in us:
        for v in vs:
            j = jet_fn(float(u), float(v))
            cross = np.cross(j.du, j.dv)
            if float(np.hypot(np.hypot(cross[0], cross[1]), cross[2])) <= eps_reg:
                raise NotRegular(
                    f"{label or 'patch'}: |sigma_u x sigma_v| <= {eps_reg:g} "
                    f"at (u, v) = ({u}, {v})"
                )


def make_surface(
    jet_fn: Callable[[float, float], Jet2],
    domain: Domain,
    label: str = "",
    check_grid: tuple[int, int] | None = (21, 21),
    eps_reg: float = EPS_REG,
) -> SurfaceHandle:
    """Wrap a jet evaluator, verifying sampled rank-2 regularity first."""
    if check_grid is not None:
        _check_regularity(jet_fn, domain, check_grid, eps_reg, label)
    return SurfaceHandle(domain=domain, jet=jet_fn, label=label)


def from_value_map(
    value_map: Callable[[float, float], tuple],
    domain: Domain,
    h: float | None = None,
    label: str = "",
    check_grid: tuple[int, int] | None = (21, 21),
) -> SurfaceHandle:
    """Finite-difference adapter promoting a value-only map to a handle."""

    def jet_fn(u: float, v: float) -> Jet2:
        return fd_jet2(value_map, u, v, h=h, domain=domain)

    return make_surface(jet_fn, domain, label=label, check_grid=check_grid)


def reparametrize_affine(
    surface: SurfaceHandle,
    matrix,
    offset,
    new_domain: Domain,
    label: str = "",
) -> SurfaceHandle:
    """Precompose a handle with the affine map (u, v) = A (w1, w2) + b.

    The map must preserve orientation (det A > 0) and send the corners of
    ``new_domain`` into the base domain; by convexity the whole rectangle
    then lands inside it.
    """
    a11, a12 = float(matrix[0][0]), float(matrix[0][1])
    a21, a22 = float(matrix[1][0]), float(matrix[1][1])
    b1, b2 = float(offset[0]), float(offset[1])
    det = a11 * a22 - a12 * a21
    if det <= 0.0:
        raise ValueError(f"affine reparametrisation must preserve orientation, det = {det}")
    corners = (
        (new_domain.u_min, new_domain.v_min),
        (new_domain.u_min, new_domain.v_max),
        (new_domain.u_max, new_domain.v_min),
        (new_domain.u_max, new_domain.v_max),
    )
    for w1, w2 in corners:
        u = a11 * w1 + a12 * w2 + b1
        v = a21 * w1 + a22 * w2 + b2
        if not surface.domain.contains(u, v):
            raise OutOfDomain(
                f"affine image of corner ({w1}, {w2}) leaves the base domain"
            )

    base_jet = surface.jet

    def jet_fn(w1: float, w2: float) -> Jet2:
        u = a11 * w1 + a12 * w2 + b1
        v = a21 * w1 + a22 * w2 + b2
        j = base_jet(u, v)
        return Jet2(
            j.value,
            a11 * j.du + a21 * j.dv,
            a12 * j.du + a22 * j.dv,
            a11 * a11 * j.duu + 2.0 * a11 * a21 * j.duv + a21 * a21 * j.dvv,
            a11 * a12 * j.duu + (a11 * a22 + a12 * a21) * j.duv + a21 * a22 * j.dvv,
            a12 * a12 * j.duu + 2.0 * a12 * a22 * j.duv + a22 * a22 * j.dvv,
        )

    return SurfaceHandle(
        domain=new_domain,
        jet=jet_fn,
        label=label or (surface.label + "/reparam" if surface.label else "reparam"),
    )
