"""Constructors for the explicit holomorphic strips and quilted strips.

Every map is carried as a holomorphic homogeneous lift evaluated in a scaled
gauge: evaluators accept an exponent array g and return u(z) * exp(-g), so
coordinates built from exp(z) stay representable for |Re z| up to several
hundred.  A constant gauge per evaluation point preserves holomorphy of the
lift and cancels in every projective quantity (density, residuals, chordal
distances).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .analysis import (BlaschkeData, PoissonSolution, QuadratureSettings,
                       blaschke_eval, blaschke_log_derivative,
                       boundary_modulus, f_and_derivative, log_f)
from .geometry import LagrangianId, ProjectivePoint, normalize

SIGNS = {"p": +1, "m": -1}
_SIG = {+1: "p", -1: "m"}

HALF_PI = math.pi / 2.0


class RegionKind(enum.Enum):
    STRIP = "strip"
    HALF_PLANE_ABOVE = "half_plane_above"
    HALF_PLANE_BELOW = "half_plane_below"


@dataclass(frozen=True)
class PatchRegion:
    kind: RegionKind
    y_lo: float | None = None
    y_hi: float | None = None

    def __post_init__(self):
        if self.kind is RegionKind.STRIP:
            if self.y_lo is None or self.y_hi is None or \
                    not (self.y_lo < self.y_hi):
                raise ValueError("strip region needs y_lo < y_hi")
        elif self.kind is RegionKind.HALF_PLANE_ABOVE:
            if self.y_lo is None:
                raise ValueError("half plane needs its edge height")
        elif self.kind is RegionKind.HALF_PLANE_BELOW:
            if self.y_hi is None:
                raise ValueError("half plane needs its edge height")

    def contains(self, z, tol: float = 1e-12) -> bool:
        y = complex(z).imag
        lo = -math.inf if self.y_lo is None else self.y_lo - tol
        hi = math.inf if self.y_hi is None else self.y_hi + tol
        return lo <= y <= hi

    def edges(self) -> tuple[float, ...]:
        if self.kind is RegionKind.STRIP:
            return (self.y_lo, self.y_hi)
        if self.kind is RegionKind.HALF_PLANE_ABOVE:
            return (self.y_lo,)
        return (self.y_hi,)


def strip(y_lo: float, y_hi: float) -> PatchRegion:
    return PatchRegion(RegionKind.STRIP, y_lo, y_hi)


def half_plane_above(y_lo: float) -> PatchRegion:
    return PatchRegion(RegionKind.HALF_PLANE_ABOVE, y_lo=y_lo)


# ---------------------------------------------------------------------------
# stable coordinate blocks

def mobius_tanh(z):
    """(e^z - 1)/(e^z + 1) without overflow at either strip end."""
    z = np.asarray(z, dtype=complex)
    s = np.exp(np.where(z.real >= 0, -z, z))
    t = (1.0 - s) / (1.0 + s)
    return np.where(z.real >= 0, t, -t)


def mobius_tanh_derivative(z):
    z = np.asarray(z, dtype=complex)
    s = np.exp(np.where(z.real >= 0, -z, z))
    return 2.0 * s / (1.0 + s) ** 2


def _exp_pair(z, gauge):
    """(exp(z) + 1, exp(z) - 1) times exp(-gauge), stable for gauge =
    max(Re z, 0)."""
    a = np.exp(z - gauge)
    b = np.exp(-gauge + 0j)
    return a + b, a - b


# ---------------------------------------------------------------------------
# analytic maps

@dataclass
class AnalyticMap:
    """Evaluatable holomorphic map into CP^n carried by a homogeneous lift.

    ``values_fn(z, gauge)`` returns the lift times exp(-gauge); ``derivs_fn``
    its z-derivative under the same gauge.  ``fused_fn`` computes both in one
    pass when evaluation is quadrature-backed.  ``top_edge_rows_fn`` supplies
    trace values on the top edge for maps whose last coordinate is reached
    there only through modulus extrapolation.
    """

    label: str
    region: PatchRegion
    target_dim: int
    values_fn: Callable
    derivs_fn: Callable | None = None
    fused_fn: Callable | None = None
    maslov: int | None = None
    decay: str = "exp"              # exp | rational | constant
    gauge_mode: str = "none"        # none | exp
    endpoints: tuple[str, str] | None = None
    boundary_tags: tuple = (None, None)
    top_edge_rows_fn: Callable | None = None
    limit_labels: dict = field(default_factory=dict)

    # -- evaluation --------------------------------------------------------
    def default_gauge(self, z: np.ndarray) -> np.ndarray:
        if self.gauge_mode == "exp":
            return np.maximum(np.asarray(z).real, 0.0)
        return np.zeros(np.shape(z))

    def values(self, z, gauge=None) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        g = self.default_gauge(z) if gauge is None else \
            np.broadcast_to(np.asarray(gauge, dtype=float), z.shape)
        return self.values_fn(z, g)

    def values_and_derivs(self, z, gauge=None):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        g = self.default_gauge(z) if gauge is None else \
            np.broadcast_to(np.asarray(gauge, dtype=float), z.shape)
        if self.fused_fn is not None:
            return self.fused_fn(z, g)
        if self.derivs_fn is None:
            raise ValueError(f"{self.label} has no derivative evaluator")
        return self.values_fn(z, g), self.derivs_fn(z, g)

    def point(self, z) -> ProjectivePoint:
        return normalize(self.values(z)[0])

    @property
    def is_constant(self) -> bool:
        return self.decay == "constant"

    @property
    def has_derivative(self) -> bool:
        return self.derivs_fn is not None or self.fused_fn is not None

    def seam_rows(self, x: np.ndarray, y: float) -> np.ndarray:
        """Values along a horizontal edge.  Quadrature-backed maps hand the
        top edge to a dedicated trace evaluator: the entire head coordinates
        are evaluated exactly on the line and the last coordinate enters
        through its extrapolated modulus, which is all the phase-blind seam
        residual consumes."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        top = self.region.y_hi
        if self.top_edge_rows_fn is not None and top is not None \
                and abs(y - top) <= 1e-12 * max(1.0, abs(top)):
            return self.top_edge_rows_fn(x)
        z = x + 1j * y
        return self.values(z)


# ---------------------------------------------------------------------------
# quilts

@dataclass(frozen=True)
class Seam:
    cp1_patch: int
    cp2_patch: int
    y: float
    correspondence: str = "lambda_s1"


@dataclass(frozen=True)
class BoundaryEdge:
    patch: int
    edge: str                # "bottom" | "top"
    y: float
    lagrangian: LagrangianId


@dataclass
class Quilt:
    label: str
    patches: tuple
    seams: tuple
    boundaries: tuple
    family: str
    h: float | None = None
    expected_area: float | None = None
    limit_info: dict = field(default_factory=dict)

    def __post_init__(self):
        for seam in self.seams:
            for idx in (seam.cp1_patch, seam.cp2_patch):
                edges = self.patches[idx].region.edges()
                if not any(abs(e - seam.y) <= 1e-12 for e in edges):
                    raise ValueError(
                        f"{self.label}: patch {idx} does not reach the seam "
                        f"line y = {seam.y}")
        claimed = {(seam.cp1_patch, round(seam.y, 12)) for seam in self.seams}
        claimed |= {(seam.cp2_patch, round(seam.y, 12)) for seam in self.seams}
        claimed |= {(b.patch, round(b.y, 12)) for b in self.boundaries}
        for idx, patch in enumerate(self.patches):
            for e in patch.region.edges():
                if (idx, round(e, 12)) not in claimed:
                    raise ValueError(
                        f"{self.label}: edge y = {e} of patch {idx} carries "
                        "neither a seam nor a boundary condition")


# ---------------------------------------------------------------------------
# rigid strips

def _gen(s1: int, s2: int) -> str:
    return f"p{'+' if s1 > 0 else '-'}{'+' if s2 > 0 else '-'}"


def make_floer_strip_cp2(i: int, s1: int, s2: int) -> AnalyticMap:
    """The twelve index-one strips into CP^2 on 0 <= Im z <= pi/2, with the
    moving Moebius coordinate in slot i."""
    if i not in (0, 1, 2) or s1 not in (+1, -1) or s2 not in (+1, -1):
        raise ValueError("need i in {0,1,2} and signs in {+1,-1}")

    def vals(z, g, i=i, s1=s1, s2=s2):
        m = mobius_tanh(z)
        one = np.ones_like(m)
        cols = {0: (m, s1 * one, s2 * one),
                1: (one, s1 * m, s2 * one),
                2: (one, s1 * one, s2 * m)}[i]
        return np.stack(cols, axis=1)

    def ders(z, g, i=i, s1=s1, s2=s2):
        dm = mobius_tanh_derivative(z)
        zero = np.zeros_like(dm)
        cols = {0: (dm, zero, zero), 1: (zero, s1 * dm, zero),
                2: (zero, zero, s2 * dm)}[i]
        return np.stack(cols, axis=1)

    src = {0: _gen(-s1, -s2), 1: _gen(-s1, s2), 2: _gen(s1, -s2)}[i]
    return AnalyticMap(
        label=f"floer.cp2.u{i}.{_SIG[s1]}{_SIG[s2]}",
        region=strip(0.0, HALF_PI), target_dim=2,
        values_fn=vals, derivs_fn=ders, maslov=1, decay="exp",
        endpoints=(src, _gen(s1, s2)),
        boundary_tags=(LagrangianId.RP2, LagrangianId.T2_CLIFFORD))


def make_floer_strip_cp1(i: int, s1: int, s2: int) -> AnalyticMap:
    """The eight index-one strips into CP^1.  The second sign tracks the
    sheet of the double cover along the bottom boundary lift: continuing the
    real lift across the strip flips both signs for the i = 0 family and the
    first sign only for i = 1."""
    if i not in (0, 1) or s1 not in (+1, -1) or s2 not in (+1, -1):
        raise ValueError("need i in {0,1} and signs in {+1,-1}")

    def vals(z, g, i=i, s1=s1):
        m = mobius_tanh(z)
        one = np.ones_like(m)
        cols = {0: (m, s1 * one), 1: (one, s1 * m)}[i]
        return np.stack(cols, axis=1)

    def ders(z, g, i=i, s1=s1):
        dm = mobius_tanh_derivative(z)
        zero = np.zeros_like(dm)
        cols = {0: (dm, zero), 1: (zero, s1 * dm)}[i]
        return np.stack(cols, axis=1)

    src = {0: _gen(-s1, -s2), 1: _gen(-s1, s2)}[i]
    return AnalyticMap(
        label=f"floer.cp1.v{i}.{_SIG[s1]}{_SIG[s2]}",
        region=strip(0.0, HALF_PI), target_dim=1,
        values_fn=vals, derivs_fn=ders, maslov=1, decay="exp",
        endpoints=(src, _gen(s1, s2)),
        boundary_tags=(LagrangianId.GAMMA_IMAGE, LagrangianId.S1_CLIFFORD))


# ---------------------------------------------------------------------------
# the twelve fibered quilts at height h

def _h_tag(h: float) -> str:
    return f"{h:.6g}"


def make_const_projection_quilt(h: float, s1: int, s2: int) -> Quilt:
    """Quilted strip with constant CP^1 part: the CP^2 patch carries the
    reparametrized Moebius coordinate in the last slot."""
    if not (0.0 < h < HALF_PI):
        raise ValueError("h must lie in (0, pi/2)")
    scale = math.pi / (2.0 * h)

    def vals(z, g, s1=s1, s2=s2, scale=scale):
        m = mobius_tanh(scale * z)
        one = np.ones_like(m)
        return np.stack((one, s1 * one, s2 * m), axis=1)

    def ders(z, g, s2=s2, scale=scale):
        dm = scale * mobius_tanh_derivative(scale * z)
        zero = np.zeros_like(dm)
        return np.stack((zero, zero, s2 * dm), axis=1)

    u2 = AnalyticMap(
        label=f"const.u2.{_SIG[s1]}{_SIG[s2]}", region=strip(0.0, h),
        target_dim=2, values_fn=vals, derivs_fn=ders, maslov=1, decay="exp",
        limit_labels={"h_to_pi2": f"floer.cp2.u2.{_SIG[s1]}{_SIG[s2]}"})

    def const_vals(z, g, s1=s1):
        one = np.ones_like(np.asarray(z, dtype=complex))
        return np.stack((one, s1 * one), axis=1)

    def const_ders(z, g):
        zero = np.zeros_like(np.asarray(z, dtype=complex))
        return np.stack((zero, zero), axis=1)

    u1 = AnalyticMap(
        label=f"const.u1.{_SIG[s1]}", region=strip(h, HALF_PI), target_dim=1,
        values_fn=const_vals, derivs_fn=const_ders, decay="constant")

    return Quilt(
        label=f"quilt.const.h{_h_tag(h)}.{_SIG[s1]}{_SIG[s2]}",
        patches=(u2, u1),
        seams=(Seam(cp1_patch=1, cp2_patch=0, y=h),),
        boundaries=(BoundaryEdge(0, "bottom", 0.0, LagrangianId.RP2),
                    BoundaryEdge(1, "top", HALF_PI,
                                 LagrangianId.S1_CLIFFORD)),
        family="const", h=h, expected_area=0.5,
        limit_info={"bubble": f"bubble.sheet_switch.{_SIG[s1]}{_SIG[s2]}"})


def make_maslov1_quilt(h: float, variant: int, s1: int, fsign: int,
                       settings: QuadratureSettings | None = None) -> Quilt:
    """Quilted strip whose CP^1 part is an index-one Moebius strip and whose
    CP^2 patch closes up with the quadrature-backed boundary solution."""
    if not (0.0 < h < HALF_PI):
        raise ValueError("h must lie in (0, pi/2)")
    if variant not in (0, 1):
        raise ValueError("variant must be 0 or 1")
    sol = PoissonSolution(h, fsign, settings or QuadratureSettings())

    def head(z, g, variant=variant, s1=s1):
        plus, minus = _exp_pair(z, g)
        if variant == 0:
            return plus, s1 * minus
        return minus, s1 * plus

    def head_der(z, g, variant=variant, s1=s1):
        a = np.exp(z - g)
        if variant == 0:
            return a, s1 * a
        return a, s1 * a

    def u2_vals(z, g, sol=sol):
        c0, c1 = head(z, g)
        third = np.array([sol.sign * np.exp(log_f(sol, zz) - gg)
                          for zz, gg in zip(z, g)], dtype=complex)
        return np.stack((c0, c1, third), axis=1)

    def u2_fused(z, g, sol=sol):
        c0, c1 = head(z, g)
        d0, d1 = head_der(z, g)
        fs = np.empty(z.shape, dtype=complex)
        dfs = np.empty(z.shape, dtype=complex)
        for k, (zz, gg) in enumerate(zip(z, g)):
            fs[k], dfs[k] = f_and_derivative(sol, zz, gg)
        vals = np.stack((c0, c1, fs), axis=1)
        ders = np.stack((d0, d1, dfs), axis=1)
        return vals, ders

    def u2_top_rows(x, sol=sol, h=h):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        z = x + 1j * h
        g = np.maximum(x, 0.0)
        c0, c1 = head(z, g)
        third = np.array([math.sqrt(boundary_modulus(sol, xx)) *
                          math.exp(-gg) for xx, gg in zip(x, g)])
        return np.stack((c0, c1, third.astype(complex)), axis=1)

    u2 = AnalyticMap(
        label=f"maslov1.u2.v{variant}.{_SIG[s1]}.f{_SIG[fsign]}",
        region=strip(0.0, h), target_dim=2, values_fn=u2_vals,
        fused_fn=u2_fused, maslov=1, decay="exp", gauge_mode="exp",
        top_edge_rows_fn=u2_top_rows,
        limit_labels={"h_to_pi2":
                      (f"floer.cp2.u1.{_SIG[s1]}{_SIG[fsign]}" if variant == 0
                       else f"floer.cp2.u0.{_SIG[s1]}{_SIG[fsign]}")})

    def u1_vals(z, g):
        c0, c1 = head(z, g)
        return np.stack((c0, c1), axis=1)

    def u1_ders(z, g):
        d0, d1 = head_der(z, g)
        return np.stack((d0, d1), axis=1)

    # The CP^1 patch formulas carry no sheet data; the h -> 0 comparison
    # strips are taken on the + sheet (the chordal distance cannot see it).
    u1 = AnalyticMap(
        label=f"maslov1.u1.v{variant}.{_SIG[s1]}",
        region=strip(h, HALF_PI), target_dim=1, values_fn=u1_vals,
        derivs_fn=u1_ders, maslov=1, decay="exp", gauge_mode="exp",
        limit_labels={"h_to_0":
                      (f"floer.cp1.v1.{_SIG[s1]}p" if variant == 0
                       else f"floer.cp1.v0.{_SIG[s1]}p")})

    return Quilt(
        label=(f"quilt.maslov1.h{_h_tag(h)}.v{variant}.{_SIG[s1]}"
               f".f{'plus' if fsign > 0 else 'minus'}"),
        patches=(u2, u1),
        seams=(Seam(cp1_patch=1, cp2_patch=0, y=h),),
        boundaries=(BoundaryEdge(0, "bottom", 0.0, LagrangianId.RP2),
                    BoundaryEdge(1, "top", HALF_PI,
                                 LagrangianId.S1_CLIFFORD)),
        family="maslov1", h=h, expected_area=0.5)


def make_eight_bubble_sheet_switch(s1: int, s2: int) -> Quilt:
    """Limit configuration at h -> 0: an index-one CP^2 strip seamed along
    Im z = pi/2 to a constant CP^1 half-plane."""
    def vals(z, g, s1=s1, s2=s2):
        m = mobius_tanh(z)
        one = np.ones_like(m)
        return np.stack((one, s1 * one, s2 * m), axis=1)

    def ders(z, g, s2=s2):
        dm = mobius_tanh_derivative(z)
        zero = np.zeros_like(dm)
        return np.stack((zero, zero, s2 * dm), axis=1)

    v2 = AnalyticMap(label=f"bubble.v2.{_SIG[s1]}{_SIG[s2]}",
                     region=strip(0.0, HALF_PI), target_dim=2,
                     values_fn=vals, derivs_fn=ders, maslov=1, decay="exp")

    def const_vals(z, g, s1=s1):
        one = np.ones_like(np.asarray(z, dtype=complex))
        return np.stack((one, s1 * one), axis=1)

    def const_ders(z, g):
        zero = np.zeros_like(np.asarray(z, dtype=complex))
        return np.stack((zero, zero), axis=1)

    v1 = AnalyticMap(label=f"bubble.v1.{_SIG[s1]}",
                     region=half_plane_above(HALF_PI), target_dim=1,
                     values_fn=const_vals, derivs_fn=const_ders,
                     decay="constant")

    return Quilt(
        label=f"bubble.sheet_switch.{_SIG[s1]}{_SIG[s2]}",
        patches=(v2, v1),
        seams=(Seam(cp1_patch=1, cp2_patch=0, y=HALF_PI),),
        boundaries=(BoundaryEdge(0, "bottom", 0.0, LagrangianId.RP2),),
        family="bubble", expected_area=0.5)


def make_acw_quilt(sign: int) -> Quilt:
    """The explicit quilted half-plane answering the reduction question for
    the Hamiltonian-isotopic torus: rational coordinates, exact seam
    identity 2|z-6i|^2 = |z+6i|^2 + |z|^2 on Im z = 1."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")

    def u2_vals(z, g, sign=sign):
        return np.stack((sign * (z + 6j), 1j * z, sign * (z - 6j)), axis=1)

    def u2_ders(z, g, sign=sign):
        one = np.ones_like(z)
        return np.stack((sign * one, 1j * one, sign * one), axis=1)

    u2 = AnalyticMap(label=f"acw.u2.{_SIG[sign]}", region=strip(0.0, 1.0),
                     target_dim=2, values_fn=u2_vals, derivs_fn=u2_ders,
                     maslov=1, decay="rational")

    def u1_vals(z, g, sign=sign):
        return np.stack((sign * (z + 6j), 1j * z), axis=1)

    def u1_ders(z, g, sign=sign):
        one = np.ones_like(z)
        return np.stack((sign * one, 1j * one), axis=1)

    u1 = AnalyticMap(label=f"acw.u1.{_SIG[sign]}", region=half_plane_above(1.0),
                     target_dim=1, values_fn=u1_vals, derivs_fn=u1_ders,
                     maslov=1, decay="rational")

    return Quilt(
        label=f"quilt.acw.{'plus' if sign > 0 else 'minus'}",
        patches=(u2, u1),
        seams=(Seam(cp1_patch=1, cp2_patch=0, y=1.0),),
        boundaries=(BoundaryEdge(0, "bottom", 0.0, LagrangianId.L_AC),),
        family="acw", expected_area=0.5)


def with_blaschke(quilt: Quilt, data: BlaschkeData) -> Quilt:
    """Multiply the last CP^2 coordinate by a strip Blaschke product.  Seam
    and boundary residuals are unchanged (the factor is real on the bottom
    edge and unimodular on the seam); the area grows with each zero."""
    if quilt.family != "maslov1":
        raise ValueError("Blaschke twisting applies to the index-one "
                         "quadrature-backed quilts")
    if abs(data.h - quilt.h) > 1e-12:
        raise ValueError("Blaschke data height must match the quilt")
    base = quilt.patches[0]

    def vals(z, g, base=base, data=data):
        rows = base.values_fn(z, g).copy()
        rows[:, 2] = rows[:, 2] * blaschke_eval(data, z)
        return rows

    def fused(z, g, base=base, data=data):
        rows, ders = base.values_and_derivs(z, g)
        rows = rows.copy()
        ders = ders.copy()
        b = blaschke_eval(data, z)
        ldb = blaschke_log_derivative(data, z)
        ders[:, 2] = ders[:, 2] * b + rows[:, 2] * b * ldb
        rows[:, 2] = rows[:, 2] * b
        return rows, ders

    # |b| = 1 exactly on the top edge, so the extrapolated trace is reused.
    twisted = AnalyticMap(
        label=base.label + ".blaschke", region=base.region,
        target_dim=base.target_dim, values_fn=vals, fused_fn=fused,
        maslov=None, decay=base.decay, gauge_mode=base.gauge_mode,
        top_edge_rows_fn=base.top_edge_rows_fn)

    return Quilt(
        label=quilt.label + ".blaschke" +
              "".join(f".{a.real:g}{a.imag:+g}j" for a in data.alphas),
        patches=(twisted,) + quilt.patches[1:],
        seams=quilt.seams, boundaries=quilt.boundaries,
        family="maslov1_blaschke", h=quilt.h, expected_area=None)


# ---------------------------------------------------------------------------
# registry

def all_floer_strips() -> list[AnalyticMap]:
    strips = [make_floer_strip_cp2(i, s1, s2)
              for i in (0, 1, 2) for s1 in (+1, -1) for s2 in (+1, -1)]
    strips += [make_floer_strip_cp1(i, s1, s2)
               for i in (0, 1) for s1 in (+1, -1) for s2 in (+1, -1)]
    return strips


def sector_family(h: float,
                  settings: QuadratureSettings | None = None) -> list[Quilt]:
    """The twelve quilted strips over an interior height h: four with
    constant projection and eight with index-one projection."""
    quilts = [make_const_projection_quilt(h, s1, s2)
              for s1 in (+1, -1) for s2 in (+1, -1)]
    quilts += [make_maslov1_quilt(h, variant, s1, fsign, settings)
               for variant in (0, 1) for s1 in (+1, -1)
               for fsign in (+1, -1)]
    return quilts


def family_limit_entries(family: str, end: str) -> list[str]:
    """Catalog ids of the degenerate fiber entries at the interval ends."""
    if family == "const" and end == "h_to_pi2":
        return [f"floer.cp2.u2.{a}{b}" for a in "pm" for b in "pm"]
    if family == "const" and end == "h_to_0":
        return [f"bubble.sheet_switch.{a}{b}" for a in "pm" for b in "pm"]
    if family == "maslov1" and end == "h_to_pi2":
        return [f"floer.cp2.u{i}.{a}{b}" for i in (0, 1)
                for a in "pm" for b in "pm"]
    if family == "maslov1" and end == "h_to_0":
        return [f"floer.cp1.v{i}.{a}{b}" for i in (0, 1)
                for a in "pm" for b in "pm"]
    raise KeyError((family, end))


def catalog_ids(h: float | None = None) -> list[str]:
    ids = [m.label for m in all_floer_strips()]
    ids += [f"bubble.sheet_switch.{a}{b}" for a in "pm" for b in "pm"]
    ids += ["quilt.acw.plus", "quilt.acw.minus"]
    if h is not None:
        tag = _h_tag(h)
        ids += [f"quilt.const.h{tag}.{a}{b}" for a in "pm" for b in "pm"]
        ids += [f"quilt.maslov1.h{tag}.v{v}.{a}.f{s}"
                for v in (0, 1) for a in "pm" for s in ("plus", "minus")]
    else:
        ids += ["quilt.const.h{h}.<ss>  (instantiate with --h)",
                "quilt.maslov1.h{h}.v<0|1>.<p|m>.f<plus|minus>"]
    return ids


def resolve(identifier: str, h: float | None = None):
    """Look up a catalog object (AnalyticMap or Quilt) by its stable id."""
    parts = identifier.split(".")
    if identifier.startswith("floer.cp2."):
        i = int(parts[2][1])
        s1, s2 = SIGNS[parts[3][0]], SIGNS[parts[3][1]]
        return make_floer_strip_cp2(i, s1, s2)
    if identifier.startswith("floer.cp1."):
        i = int(parts[2][1])
        s1, s2 = SIGNS[parts[3][0]], SIGNS[parts[3][1]]
        return make_floer_strip_cp1(i, s1, s2)
    if identifier.startswith("bubble.sheet_switch."):
        s1, s2 = SIGNS[parts[2][0]], SIGNS[parts[2][1]]
        return make_eight_bubble_sheet_switch(s1, s2)
    if identifier in ("quilt.acw.plus", "quilt.acw.minus"):
        return make_acw_quilt(+1 if identifier.endswith("plus") else -1)
    if identifier.startswith("quilt.const.h"):
        # the height tag may itself contain a dot, so split from the right
        body = identifier[len("quilt.const.h"):]
        htag, _, signs = body.rpartition(".")
        hval = float(htag) if htag else h
        if hval is None:
            raise KeyError(f"{identifier} needs an explicit height")
        return make_const_projection_quilt(hval, SIGNS[signs[0]],
                                           SIGNS[signs[1]])
    if identifier.startswith("quilt.maslov1.h"):
        body = identifier[len("quilt.maslov1.h"):]
        pieces = body.rsplit(".", 3)
        if len(pieces) != 4:
            raise KeyError(identifier)
        htag, vtag, stag, ftag = pieces
        hval = float(htag) if htag else h
        if hval is None:
            raise KeyError(f"{identifier} needs an explicit height")
        return make_maslov1_quilt(hval, int(vtag[1]), SIGNS[stag],
                                  +1 if ftag == "fplus" else -1)
    raise KeyError(identifier)
