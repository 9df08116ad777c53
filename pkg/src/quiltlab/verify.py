"""Whole-quilt verification: seam/boundary residual profiles, symplectic
areas over unbounded regions, Cauchy-Riemann sampling, and the sweep over
the fibered moduli interval.

Areas integrate the Fubini-Study pullback density in two nested quadratures:
the inner x-integral runs over the full line for rationally decaying maps
and over a truncated interval (with an explicit exponential tail bound) for
Moebius/exponential maps; the outer y-integral is adaptive on strips and
tangent-compactified on half-planes.  Reports are deterministic functions of
(quilt, tolerance profile, sample spec).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import catalog as cat
from .geometry import (_fs_distance_rows, _unit_rows,
                       correspondence_residual_rows, homogeneous_density,
                       lagrangian_residual_rows)
from .quadrature import (IntegrandProfile, integrate_interval,
                         integrate_line, _panel)

HALF_PI = math.pi / 2.0

_SAFE_EXPONENT = 600.0


@dataclass(frozen=True)
class ToleranceProfile:
    seam_tol: float = 1e-12
    boundary_tol: float = 1e-12
    area_tol: float = 1e-4
    cr_tol: float = 1e-5
    seam_samples: int = 1000
    boundary_samples: int = 1000
    cr_samples: int = 48
    x_range: tuple[float, float] = (-50.0, 50.0)
    fast_area: bool = False


STRICT_PROFILE = ToleranceProfile()
# Quadrature-backed patches: seam residuals inherit the extrapolation error
# of the top-edge modulus, bottom-edge reality the integral tolerance.
MASLOV1_PROFILE = ToleranceProfile(
    seam_tol=1e-4, boundary_tol=1e-8, area_tol=5e-3, cr_tol=1e-4,
    seam_samples=160, boundary_samples=160, cr_samples=12, fast_area=True)


def default_profile(quilt: cat.Quilt) -> ToleranceProfile:
    if quilt.family.startswith("maslov1"):
        return MASLOV1_PROFILE
    return STRICT_PROFILE


@dataclass(frozen=True)
class ProfileResult:
    max_residual: float
    at: float
    samples: int
    failures: int = 0


def _safe_x_range(quilt_or_map, x_range):
    """Clip the sample range so exponential lifts stay representable."""
    lo, hi = x_range
    maps = quilt_or_map.patches if isinstance(quilt_or_map, cat.Quilt) \
        else [quilt_or_map]
    for m in maps:
        if m.gauge_mode == "exp" and m.region.y_hi is not None \
                and m.fused_fn is not None:
            h = m.region.y_hi
            cap = _SAFE_EXPONENT * 2.0 * h / math.pi
            lo, hi = max(lo, -cap), min(hi, cap)
    return lo, hi


def seam_residual_profile(quilt: cat.Quilt, seam_index: int = 0, *,
                          samples: int = 1000,
                          x_range: tuple[float, float] = (-50.0, 50.0),
                          offset: float = 0.0) -> ProfileResult:
    """Max over equispaced seam samples of the correspondence residual
    between the two patch traces."""
    seam = quilt.seams[seam_index]
    lo, hi = _safe_x_range(quilt, x_range)
    x = np.linspace(lo, hi, samples)
    rows2 = quilt.patches[seam.cp2_patch].seam_rows(x, seam.y)
    rows1 = quilt.patches[seam.cp1_patch].values(x + 1j * (seam.y + offset))
    good = np.all(np.isfinite(rows2), axis=1) & \
        np.all(np.isfinite(rows1), axis=1)
    failures = int(np.sum(~good))
    level, proj, defined = correspondence_residual_rows(rows1[good],
                                                        rows2[good])
    residual = np.where(defined, np.maximum(level, proj), level)
    if residual.size == 0:
        return ProfileResult(math.inf, math.nan, samples, failures)
    k = int(np.argmax(residual))
    return ProfileResult(float(residual[k]), float(x[good][k]), samples,
                         failures)


def boundary_residual_profile(quilt: cat.Quilt, boundary_index: int, *,
                              samples: int = 1000,
                              x_range: tuple[float, float] = (-50.0, 50.0),
                              offset: float = 0.0) -> ProfileResult:
    edge = quilt.boundaries[boundary_index]
    patch = quilt.patches[edge.patch]
    lo, hi = _safe_x_range(quilt, x_range)
    x = np.linspace(lo, hi, samples)
    rows = patch.values(x + 1j * (edge.y + offset))
    good = np.all(np.isfinite(rows), axis=1)
    failures = int(np.sum(~good))
    residual = lagrangian_residual_rows(edge.lagrangian, rows[good])
    if residual.size == 0:
        return ProfileResult(math.inf, math.nan, samples, failures)
    k = int(np.argmax(residual))
    return ProfileResult(float(residual[k]), float(x[good][k]), samples,
                         failures)


# ---------------------------------------------------------------------------
# areas

def _density_line(m: cat.AnalyticMap, y: float):
    def rho(x):
        z = np.asarray(x, dtype=float) + 1j * y
        vals, ders = m.values_and_derivs(z)
        return homogeneous_density(vals, ders)
    return rho


def patch_area(m: cat.AnalyticMap, *, abs_tol: float = 1e-8,
               fast: bool = False, x_cut: float = 32.0,
               y_cut: float = 1e7) -> tuple[float, float]:
    """Integral of the pullback density over the patch region, with an error
    estimate that includes quadrature and truncation-tail contributions.

    fast=True relaxes the inner tolerance and caps outer refinement; used by
    the sweep, where each quadrature-backed density evaluation costs two
    line integrals.
    """
    if m.is_constant:
        return 0.0, 0.0
    inner_tol = 2e-5 if fast else max(abs_tol * 3e-3, 1e-12)
    if fast:
        x_cut = min(x_cut, 16.0)
    tail_box = [0.0]
    inner_err_box = [0.0]

    rational = (m.decay == "rational")

    def inner(y: float) -> float:
        rho = _density_line(m, y)
        if rational:
            res = integrate_line(rho, IntegrandProfile(splits=(0.0,)),
                                 abs_tol=inner_tol, rel_tol=1e-9)
            val = float(np.real(res.value))
            inner_err_box[0] = max(inner_err_box[0], res.error_estimate)
            return val
        cut = x_cut
        if m.gauge_mode == "exp" and m.region.y_hi is not None:
            cut = min(cut, _SAFE_EXPONENT * 2.0 * m.region.y_hi / math.pi)
        res = integrate_interval(rho, -cut, cut, knots=(0.0,),
                                 abs_tol=inner_tol, rel_tol=1e-9,
                                 raise_on_budget=False)
        # Moebius/exponential densities decay like exp(-2|x|).
        edge = rho(np.array([-cut, cut]))
        tail_box[0] = max(tail_box[0], 0.5 * float(edge[0] + edge[1]))
        inner_err_box[0] = max(inner_err_box[0], res.error_estimate)
        return float(np.real(res.value))

    region = m.region
    if region.kind is cat.RegionKind.STRIP:
        y_lo, y_hi = region.y_lo, region.y_hi

        def outer(ys):
            return np.array([inner(float(t)) for t in np.atleast_1d(ys)])

        if fast:
            # single Kronrod panel in y; the density profile is analytic in
            # y, so one bisection is only spent when the estimate asks.
            value, outer_err = _panel(outer, y_lo, y_hi)
            if outer_err > 1e-4:
                mid = 0.5 * (y_lo + y_hi)
                v1, e1 = _panel(outer, y_lo, mid)
                v2, e2 = _panel(outer, mid, y_hi)
                value, outer_err = v1 + v2, e1 + e2
        else:
            res = integrate_interval(outer, y_lo, y_hi,
                                     abs_tol=abs_tol * 0.3, rel_tol=1e-9,
                                     raise_on_budget=False)
            value, outer_err = res.value, res.error_estimate
        y_span = y_hi - y_lo
    elif region.kind is cat.RegionKind.HALF_PLANE_ABOVE:
        y_lo = region.y_lo
        theta_end = math.atan(y_cut - y_lo)

        def outer(thetas):
            thetas = np.atleast_1d(thetas)
            out = np.empty(thetas.shape)
            for i, th in enumerate(thetas):
                y = y_lo + math.tan(float(th))
                out[i] = inner(y) / math.cos(float(th)) ** 2
            return out

        res = integrate_interval(outer, 0.0, theta_end,
                                 abs_tol=abs_tol * 0.3, rel_tol=1e-9,
                                 raise_on_budget=False)
        value, outer_err = res.value, res.error_estimate
        # density integrals on far lines fall off like 1/y^3
        tail_box[0] += 0.5 * abs(inner(y_cut)) * y_cut
        y_span = HALF_PI
    else:
        raise ValueError("unsupported region for area integration")

    value = float(np.real(value))
    err = float(outer_err) + inner_err_box[0] * y_span + tail_box[0]
    return value, err


# ---------------------------------------------------------------------------
# holomorphy sampling

def cr_residual_profile(m: cat.AnalyticMap, *, samples: int = 48,
                        x_span: tuple[float, float] = (-3.0, 3.0),
                        step: float | None = None,
                        richardson: bool | None = None) -> float:
    """Max over interior samples of ||dbar u|| / ||u|| for the gauge-scaled
    lift, via centered differences (optionally Richardson-refined)."""
    region = m.region
    y_lo = region.y_lo if region.y_lo is not None else region.y_hi - 2.0
    y_hi = region.y_hi if region.y_hi is not None else region.y_lo + 2.0
    height = y_hi - y_lo
    quadrature_backed = m.fused_fn is not None
    if step is None:
        step = (1e-3 if quadrature_backed else 1e-5) * height
    if richardson is None:
        richardson = not quadrature_backed
    margin = max(4 * step, 2e-3 * height)
    n_side = max(2, int(math.sqrt(samples)))
    xs = np.linspace(x_span[0], x_span[1], n_side + 1)[:-1] + 0.318
    ys = np.linspace(y_lo + margin, y_hi - margin, n_side)
    worst = 0.0
    for x0 in xs:
        for y0 in ys:
            z0 = complex(x0, y0)
            gauge = max(z0.real, 0.0) if m.gauge_mode == "exp" else 0.0

            def dbar(d):
                stencil = np.array([z0 + d, z0 - d, z0 + 1j * d, z0 - 1j * d])
                vals = m.values(stencil, gauge=gauge)
                return (vals[0] - vals[1] + 1j * (vals[2] - vals[3])) \
                    / (4.0 * d)

            est = dbar(step)
            if richardson:
                est = (4.0 * dbar(step / 2.0) - est) / 3.0
            base = m.values(np.array([z0]), gauge=gauge)[0]
            worst = max(worst, float(np.linalg.norm(est) /
                                     np.linalg.norm(base)))
    return worst


# ---------------------------------------------------------------------------
# reports

@dataclass
class VerificationReport:
    label: str
    seams: list
    boundaries: list
    areas: list
    total_area: float
    holomorphy: list
    passed: bool
    samples: dict
    expected_area: float | None = None

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "seams": self.seams,
            "boundaries": self.boundaries,
            "areas": self.areas,
            "total_area": self.total_area,
            "holomorphy": self.holomorphy,
            "pass": self.passed,
            "samples": self.samples,
            "expected_area": self.expected_area,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)


def verify_quilt(quilt: cat.Quilt, tol: ToleranceProfile | None = None, *,
                 tamper: tuple[str, float] | None = None,
                 area_overrides: dict[int, tuple[float, float]] | None = None,
                 skip_cr: bool = False) -> VerificationReport:
    """Aggregate seam, boundary, area, and holomorphy checks into a report."""
    tol = tol or default_profile(quilt)
    seam_offset = tamper[1] if tamper and tamper[0] == "seam" else 0.0
    boundary_offset = tamper[1] if tamper and tamper[0] == "boundary" else 0.0

    seams = []
    for i in range(len(quilt.seams)):
        r = seam_residual_profile(quilt, i, samples=tol.seam_samples,
                                  x_range=tol.x_range, offset=seam_offset)
        seams.append({"index": i, "max": r.max_residual, "at": r.at,
                      "failures": r.failures})
    boundaries = []
    for i in range(len(quilt.boundaries)):
        r = boundary_residual_profile(quilt, i,
                                      samples=tol.boundary_samples,
                                      x_range=tol.x_range,
                                      offset=boundary_offset)
        boundaries.append({"index": i, "max": r.max_residual, "at": r.at,
                           "failures": r.failures})
    areas = []
    total = 0.0
    for i, patch in enumerate(quilt.patches):
        if area_overrides and i in area_overrides:
            value, err = area_overrides[i]
        else:
            value, err = patch_area(patch, fast=tol.fast_area)
        areas.append({"patch": patch.label, "value": value, "err": err})
        total += value
    holomorphy = []
    if not skip_cr:
        for patch in quilt.patches:
            if patch.is_constant:
                holomorphy.append({"patch": patch.label, "max": 0.0})
                continue
            holomorphy.append({
                "patch": patch.label,
                "max": cr_residual_profile(patch, samples=tol.cr_samples)})

    passed = all(s["max"] <= tol.seam_tol and s["failures"] == 0
                 for s in seams)
    passed &= all(b["max"] <= tol.boundary_tol and b["failures"] == 0
                  for b in boundaries)
    if quilt.expected_area is not None:
        area_err = sum(a["err"] for a in areas)
        passed &= abs(total - quilt.expected_area) <= \
            max(tol.area_tol, 3.0 * area_err)
    passed &= all(hc["max"] <= tol.cr_tol for hc in holomorphy)

    return VerificationReport(
        label=quilt.label, seams=seams, boundaries=boundaries, areas=areas,
        total_area=total, holomorphy=holomorphy, passed=bool(passed),
        samples={"seam": tol.seam_samples, "boundary": tol.boundary_samples,
                 "cr": tol.cr_samples, "x_range": list(tol.x_range)},
        expected_area=quilt.expected_area)


# ---------------------------------------------------------------------------
# the moduli sweep

@dataclass
class SweepResult:
    reports: dict
    diagnostics: dict

    @property
    def passed(self) -> bool:
        return all(r.passed for rs in self.reports.values() for r in rs)

    def to_dict(self) -> dict:
        return {
            "reports": {str(h): [r.to_dict() for r in rs]
                        for h, rs in self.reports.items()},
            "diagnostics": self.diagnostics,
            "pass": self.passed,
        }


def _sup_fs_distance(map_a: cat.AnalyticMap, map_b: cat.AnalyticMap,
                     zs: np.ndarray) -> float:
    rows_a = _unit_rows(map_a.values(zs))
    rows_b = _unit_rows(map_b.values(zs))
    return float(np.max(_fs_distance_rows(rows_a, rows_b)))


def _limit_grid(h: float, radius: float = 2.0) -> np.ndarray:
    xs = np.linspace(-radius, radius, 21)
    ys = np.linspace(1e-3 * h, h * (1.0 - 1e-3), 9)
    zs = (xs[:, None] + 1j * ys[None, :]).ravel()
    return zs[np.abs(zs) <= radius]


def sweep_family(families, h_grid, tol: ToleranceProfile | None = None,
                 *, limit_checks: bool = True) -> SweepResult:
    """Verify every fibered component over the supplied heights and collect
    the interval-end diagnostics.

    The eight index-one components at a fixed height share one density for
    each patch role (sign and variant changes cancel in every modulus), so
    their areas are computed once per height and attached to each report.
    """
    if isinstance(families, str):
        families = [families] if families != "all" else ["const", "maslov1"]
    reports: dict[float, list[VerificationReport]] = {}
    diagnostics: dict[str, dict] = {"const": {}, "maslov1": {}}

    for h in h_grid:
        if not (0.0 < h < HALF_PI):
            raise ValueError(f"sweep height {h} outside (0, pi/2)")
        per_h: list[VerificationReport] = []
        if "const" in families:
            quilts = [cat.make_const_projection_quilt(h, s1, s2)
                      for s1 in (+1, -1) for s2 in (+1, -1)]
            shared = {0: patch_area(quilts[0].patches[0]),
                      1: (0.0, 0.0)}
            for q in quilts:
                per_h.append(verify_quilt(q, tol or STRICT_PROFILE,
                                          area_overrides=shared))
        if "maslov1" in families:
            from .analysis import QuadratureSettings
            sweep_settings = QuadratureSettings(abs_tol=1e-8)
            quilts = [cat.make_maslov1_quilt(h, v, s1, fs, sweep_settings)
                      for v in (0, 1) for s1 in (+1, -1) for fs in (+1, -1)]
            prof = tol or MASLOV1_PROFILE
            shared = {0: patch_area(quilts[0].patches[0], fast=True),
                      1: patch_area(quilts[0].patches[1], abs_tol=1e-6)}
            for q in quilts:
                per_h.append(verify_quilt(q, prof, area_overrides=shared,
                                          skip_cr=False))
        reports[h] = per_h

    if limit_checks:
        diagnostics["const"] = _const_limit_diagnostics()
        diagnostics["maslov1"] = _maslov1_limit_diagnostics()
    return SweepResult(reports=reports, diagnostics=diagnostics)


def _const_limit_diagnostics() -> dict:
    # Shrinking the height and rescaling z -> (2h/pi) w reproduces the
    # sheet-switching bubble identically.
    h = 1e-3
    ws = _limit_grid(HALF_PI, radius=10.0)
    worst = 0.0
    for s1 in (+1, -1):
        for s2 in (+1, -1):
            u2 = cat.make_const_projection_quilt(h, s1, s2).patches[0]
            v2 = cat.make_eight_bubble_sheet_switch(s1, s2).patches[0]
            rows_a = _unit_rows(u2.values((2.0 * h / math.pi) * ws))
            rows_b = _unit_rows(v2.values(ws))
            worst = max(worst, float(np.max(
                _fs_distance_rows(rows_a, rows_b))))
    h2 = HALF_PI - 1e-3
    zs = _limit_grid(h2)
    sup = 0.0
    for s1 in (+1, -1):
        for s2 in (+1, -1):
            u2 = cat.make_const_projection_quilt(h2, s1, s2).patches[0]
            target = cat.resolve(u2.limit_labels["h_to_pi2"])
            sup = max(sup, _sup_fs_distance(u2, target, zs))
    return {"h_to_0_rescale_max": worst, "h_to_pi2_sup_distance": sup}


def _maslov1_limit_diagnostics() -> dict:
    # The CP^1 patch formulas are height-independent, so the h -> 0 limit is
    # an identity on the overlap with the corresponding rigid strips.
    h = 0.3
    zs = _limit_grid(HALF_PI - h) + 1j * h
    ident = 0.0
    for variant in (0, 1):
        for s1 in (+1, -1):
            q = cat.make_maslov1_quilt(h, variant, s1, +1)
            u1 = q.patches[1]
            target = cat.resolve(u1.limit_labels["h_to_0"])
            ident = max(ident, _sup_fs_distance(u1, target, zs))

    h2 = HALF_PI - 1e-3
    zs2 = _limit_grid(h2)
    sup = 0.0
    for variant in (0, 1):
        for s1 in (+1, -1):
            for fsign in (+1, -1):
                q = cat.make_maslov1_quilt(h2, variant, s1, fsign)
                u2 = q.patches[0]
                target = cat.resolve(u2.limit_labels["h_to_pi2"])
                sup = max(sup, _sup_fs_distance(u2, target, zs2))
    return {"h_to_0_identity_max": ident, "h_to_pi2_sup_distance": sup}
