"""Boundary-value solutions on a strip via a Herglotz-type integral.

The central object is the pair of zero-free holomorphic functions on the
strip 0 <= Im z <= h that are real on the bottom edge, have squared modulus
exp(2x) + 1 on the top edge, and are asymptotically pinned to exp(2z) + 1.
They are evaluated by transporting to the upper half-plane through
w = i exp(pi z / 2h) and integrating

    I(w) = int (1 + t w)/(t - w) * log(1 + |t|^p) / (1 + t^2) dt,  p = 4h/pi,

with f = sign * exp(I / 2 pi i).  The integrand has an integrable cusp at
t = 0 (p < 2), a Poisson-kernel peak at t = Re w of half-width Im w, and a
logarithmic far field that turns over at |t| ~ |w|.  The quadrature splits
the line into a central interval plus logarithmic tails so that all of these
features stay resolved and representable for |log|w|| up to ~640, which
covers seam profiles on |x| <= 50 for every strip height used here.

Top-edge values are never computed by direct quadrature (the kernel pole
reaches the contour there); `boundary_modulus` supplies the squared modulus
by Richardson extrapolation in the distance to the edge, which is all any
seam or boundary condition consumes.
"""

from __future__ import annotations

import cmath
import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import _XK, _WG, _WK, BudgetExceededError, QuadratureResult

_MAX_EXP = 640.0


class DomainError(ValueError):
    pass


class BoundaryEvaluationError(ValueError):
    """Evaluation requested on an edge that direct quadrature cannot reach."""


class UndefinedPointError(ValueError):
    pass


class InvalidBlaschkeDataError(ValueError):
    pass


class UnreliableContourError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# conformal maps between the strip and the punctured upper half-plane

def strip_to_halfplane(z, h: float):
    """z -> i exp(pi z / 2h); bottom edge -> positive imaginary axis, top
    edge Im z = h -> negative real axis."""
    _check_height(h)
    return 1j * np.exp(math.pi * np.asarray(z, dtype=complex) / (2.0 * h))


def halfplane_to_strip(w, h: float):
    """Inverse map (2h/pi) log(-i w); principal branch, defined away from 0."""
    _check_height(h)
    w = np.asarray(w, dtype=complex)
    if np.any(w == 0):
        raise UndefinedPointError("the inverse strip map is undefined at w=0")
    return (2.0 * h / math.pi) * np.log(-1j * w)


def _check_height(h: float):
    if not (0.0 < h <= math.pi / 2 + 1e-12):
        raise DomainError(f"strip height must lie in (0, pi/2], got {h}")


# ---------------------------------------------------------------------------
# vector-valued adaptive Gauss-Kronrod (shares nodes with quadrature core)

def _vpanel(f, a, b):
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * _XK
    y = np.asarray(f(x))  # shape (m, 15)
    k = half * (y @ _WK)
    g = half * (y @ _WG)
    mean = k[:, None] / (b - a)
    resasc = half * (np.abs(y - mean) @ _WK)
    diff = np.abs(k - g)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * diff / np.where(
            resasc > 0, resasc, 1.0)) ** 1.5)
    err = np.where(resasc > 0, scaled, diff)
    return k, err


def _vadaptive(f, points, abs_tols, rel_tol, budget):
    """Adaptive refinement for a small vector of integrands sharing panels.

    Panels are prioritized by their tolerance-scaled error so that one
    component with a huge natural scale (already converged relatively)
    cannot starve another component of refinement.
    """
    abs_tols = np.asarray(abs_tols, dtype=float)
    m = abs_tols.size
    heap = []
    value = np.zeros(m, dtype=complex)
    error = np.zeros(m)
    evals = 0
    tag = 0

    def tolerances():
        return np.maximum(abs_tols, rel_tol * np.abs(value))

    def priority(err):
        return -float(np.max(err / np.maximum(tolerances(), 1e-300)))

    staged = []
    for a, b in zip(points[:-1], points[1:]):
        if not (b > a):
            continue
        k, err = _vpanel(f, a, b)
        evals += 15
        value += k
        error += err
        staged.append((a, b, k, err))
    for a, b, k, err in staged:
        heapq.heappush(heap, (priority(err), tag, a, b, k, err))
        tag += 1
    span = abs(points[0]) + abs(points[-1]) + 1.0
    while heap:
        if np.all(error <= tolerances()):
            return value, error, evals, True
        if evals + 30 > budget:
            return value, error, evals, False
        _, _, a, b, k_old, e_old = heapq.heappop(heap)
        if (b - a) <= 1e-15 * (span + abs(a)):
            if not heap:
                break
            continue
        mid = 0.5 * (a + b)
        k1, e1 = _vpanel(f, a, mid)
        k2, e2 = _vpanel(f, mid, b)
        evals += 30
        value += (k1 + k2) - k_old
        error += (e1 + e2) - e_old
        heapq.heappush(heap, (priority(e1), tag, a, mid, k1, e1))
        tag += 1
        heapq.heappush(heap, (priority(e2), tag, mid, b, k2, e2))
        tag += 1
    return value, error, evals, bool(np.all(error <= tolerances()))


# ---------------------------------------------------------------------------
# the Herglotz integral engine

@dataclass(frozen=True)
class QuadratureSettings:
    abs_tol: float = 1e-9       # absolute tolerance on the integral I(w)
    rel_tol: float = 1e-12
    budget: int = 200_000


def _softplus(u):
    return np.where(u > 0, u + np.log1p(np.exp(-np.abs(u))),
                    np.log1p(np.exp(np.minimum(u, 0.0))))


def _herglotz_knots(w: complex, side: int, s_floor: float,
                    s_top: float) -> list[float]:
    """Breakpoints in s = log|t| for one half-line: a cluster resolving the
    Poisson peak when the pole sits on this side, the |t| ~ |w| kernel
    turnover, and a geometric coarse grid toward both ends."""
    x0, d = w.real, abs(w.imag)
    r = abs(w)
    knots = {0.0} if s_floor < 0.0 < s_top else set()
    if side * x0 > 0 and math.log(max(side * x0, 1e-300)) > s_floor:
        s0 = math.log(side * x0)
        if s0 < s_top:
            knots.add(s0)
            rel = max(d / abs(x0), 1e-16)
            step = rel
            while step < 3.0:
                for s in (s0 - step, s0 + step):
                    if s_floor < s < s_top:
                        knots.add(s)
                step *= 8.0
    if r > 1e-300:
        sr = math.log(r)
        for s in (sr - 2.0, sr, sr + 2.0):
            if s_floor < s < s_top:
                knots.add(s)
    step = 8.0
    while -step > s_floor or step < s_top:
        for s in (-step, step):
            if s_floor < s < s_top:
                knots.add(s)
        step *= 2.0
    return sorted(knots)


def _herglotz(w: complex, p: float, settings: QuadratureSettings,
              want_deriv: bool = False):
    """I(w) and optionally I'(w) = int log(1+|t|^p)/(t-w)^2 dt, in one
    adaptive pass.

    Both half-lines are integrated in s = log|t|, where the weight
    log(1+|t|^p)/(1+t^2) * dt becomes softplus(ps)/(2 cosh s) ds: smooth,
    exponentially small toward both ends, and free of the |t|^p cusp.  The
    portion |t| < exp(s_floor) contributes less than exp(-42) of the weight
    and is dropped; kernels are algebraically rearranged so that no
    intermediate exceeds exp(+-690) for |log|w|| <= 640.
    """
    m = 2 if want_deriv else 1
    # I' enters downstream only through w * I', so its absolute tolerance is
    # the corresponding budget divided by |w|; near w = 0 the derivative
    # integral grows like |w|^(p-1) and would otherwise demand absurd digits.
    abs_tols = np.array([settings.abs_tol] +
                        ([100.0 * settings.abs_tol / max(abs(w), 1e-300)]
                         if want_deriv else []))
    s_floor = max(-46.0 / p - 4.0, -690.0)
    s_top = max(42.0, math.log(max(abs(w), 1e-300)) + 38.0)

    def integrand(side):
        def rows_fn(s):
            em = np.exp(-np.maximum(s, 0.0))
            tm = side * np.exp(np.minimum(s, 0.0))
            den = tm - w * em
            kernel = (em + tm * w) / den
            qjac = _softplus(p * s) * 0.5 / np.cosh(s)
            rows = [kernel * qjac]
            if want_deriv:
                ues = np.exp(-0.5 * np.abs(s)) / den
                rows.append(_softplus(p * s) * ues * ues)
            return np.stack(rows)
        return rows_fn

    value = np.zeros(m, dtype=complex)
    error = np.zeros(m)
    evals = 0
    for side in (+1, -1):
        pts = [s_floor] + _herglotz_knots(w, side, s_floor, s_top) + [s_top]
        budget = settings.budget - evals
        if budget < 45:
            raise BudgetExceededError(
                "Herglotz integral ran out of budget",
                QuadratureResult(complex(value[0]), float(error[0]), evals))
        v, e, n, ok = _vadaptive(integrand(side), pts, abs_tols / 2.0,
                                 settings.rel_tol, budget)
        value += v
        error += e
        evals += n
        if not ok:
            raise BudgetExceededError(
                "Herglotz integral did not converge "
                f"(error estimate {float(e.max()):.3g})",
                QuadratureResult(complex(value[0]), float(error[0]), evals))
    if want_deriv:
        return value[0], value[1], float(error[0]), evals
    return value[0], None, float(error[0]), evals


_DEFAULT_SETTINGS = QuadratureSettings()


def g_eval(w, h: float, sign: int = +1,
           settings: QuadratureSettings | None = None) -> complex:
    """Zero-free half-plane solution; real on the positive imaginary axis,
    |g(x)| = sqrt(|x|^{4h/pi} + 1) on the real axis, g_- = -g_+."""
    _check_height(h)
    settings = settings or _DEFAULT_SETTINGS
    w = complex(w)
    if w == 0:
        raise UndefinedPointError("g is undefined at w = 0")
    if w.imag < 0:
        raise DomainError("g is defined on the closed upper half-plane only")
    if w.imag == 0:
        raise BoundaryEvaluationError(
            "real-axis values of g carry the kernel pole; use the strip "
            "boundary extrapolation (boundary_modulus) instead")
    I, _, _, _ = _herglotz(w, 4.0 * h / math.pi, settings)
    return sign * cmath.exp(I / (2.0j * math.pi))


@dataclass(frozen=True)
class PoissonSolution:
    """One of the two strip solutions (sign = +-1) at height h, evaluated by
    quadrature of the Herglotz integral.  Immutable and safe to share."""

    h: float
    sign: int = +1
    settings: QuadratureSettings = field(default_factory=QuadratureSettings)

    def __post_init__(self):
        _check_height(self.h)
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def power(self) -> float:
        return 4.0 * self.h / math.pi

    def halfplane_point(self, z: complex) -> complex:
        e = math.pi * complex(z).real / (2.0 * self.h)
        if abs(e) > _MAX_EXP:
            raise DomainError(
                f"Re z = {complex(z).real:.3g} is outside the representable "
                f"evaluation range for h = {self.h:.3g}")
        return 1j * cmath.exp(math.pi * complex(z) / (2.0 * self.h))


def _check_strip_point(sol: PoissonSolution, z: complex) -> complex:
    z = complex(z)
    tol = 1e-12 * max(1.0, sol.h)
    if z.imag < -tol or z.imag > sol.h + tol:
        raise DomainError(
            f"Im z = {z.imag:.3g} lies outside the strip [0, {sol.h:.3g}]")
    if z.imag >= sol.h - 1e-12 * sol.h:
        raise BoundaryEvaluationError(
            "top-edge values are reached by extrapolation only; "
            "use boundary_modulus")
    return z


def log_f(sol: PoissonSolution, z: complex) -> complex:
    """log of the positive-sign solution (the sign is a prefactor)."""
    z = _check_strip_point(sol, z)
    w = sol.halfplane_point(z)
    I, _, _, _ = _herglotz(w, sol.power, sol.settings)
    return I / (2.0j * math.pi)


def f_eval(sol: PoissonSolution, z: complex) -> complex:
    return sol.sign * cmath.exp(log_f(sol, z))


def f_eval_scaled(sol: PoissonSolution, z: complex, gauge: float) -> complex:
    """f(z) * exp(-gauge); keeps top-coordinate magnitudes near unity when a
    homogeneous lift is rescaled by exp(-max(Re z, 0))."""
    return sol.sign * cmath.exp(log_f(sol, z) - gauge)


def f_and_derivative(sol: PoissonSolution, z: complex,
                     gauge: float = 0.0) -> tuple[complex, complex]:
    """(f, f') * exp(-gauge) from a single adaptive pass computing I and I'."""
    z = _check_strip_point(sol, z)
    w = sol.halfplane_point(z)
    I, Ip, _, _ = _herglotz(w, sol.power, sol.settings, want_deriv=True)
    val = sol.sign * cmath.exp(I / (2.0j * math.pi) - gauge)
    dlog = (math.pi / (2.0 * sol.h)) * w * Ip / (2.0j * math.pi)
    return val, val * dlog


def boundary_modulus(sol: PoissonSolution, x: float, details: bool = False):
    """lim |f(x + i(h - eps))|^2 by Richardson extrapolation over
    eps = {1e-2, 1e-3, 1e-4} * h."""
    eps = [1e-2 * sol.h, 1e-3 * sol.h, 1e-4 * sol.h]
    vals = []
    for e in eps:
        lf = log_f(sol, complex(x, sol.h - e))
        vals.append(math.exp(2.0 * lf.real))
    # Neville interpolation of the quadratic through (eps_k, B_k) at eps = 0.
    p01 = (eps[0] * vals[1] - eps[1] * vals[0]) / (eps[0] - eps[1])
    p12 = (eps[1] * vals[2] - eps[2] * vals[1]) / (eps[1] - eps[2])
    p012 = (eps[0] * p12 - eps[2] * p01) / (eps[0] - eps[2])
    spread = abs(p012 - p12)
    converged = spread <= max(1e-5 * abs(p012), 1e-12)
    if details:
        return p012, {"converged": converged, "spread": spread,
                      "samples": vals}
    return p012


def asymptotic_ratio(sol: PoissonSolution, re_z: float, im_z: float) -> float:
    """|f(z)^2 / (exp(2z) + 1)|; tends to 1 as |Re z| grows."""
    z = complex(re_z, im_z)
    lf = log_f(sol, z)
    two_z = 2.0 * z
    if two_z.real > 0:
        log_den = two_z.real + 0.5 * math.log1p(
            2.0 * cmath.exp(-two_z).real + abs(cmath.exp(-two_z)) ** 2)
    else:
        u = cmath.exp(two_z)
        log_den = 0.5 * math.log1p(2.0 * u.real + abs(u) ** 2)
    return math.exp(2.0 * lf.real - log_den)


# ---------------------------------------------------------------------------
# Blaschke products on the strip

@dataclass(frozen=True)
class BlaschkeData:
    """Zero data for a strip Blaschke product: factors
    (E - a)/(E + conj a) in E = exp(pi z / 2h), with Re a > 0 and the
    multiset of zeros closed under conjugation."""

    alphas: tuple[complex, ...]
    h: float

    def __post_init__(self):
        _check_height(self.h)
        alphas = tuple(complex(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if any(a.real <= 0 for a in alphas):
            raise InvalidBlaschkeDataError(
                "all zero parameters need positive real part")
        left = list(alphas)
        for a in alphas:
            target = a.conjugate()
            hit = min(range(len(left)),
                      key=lambda i: abs(left[i] - target), default=None)
            if hit is None or abs(left[hit] - target) > 1e-9 * (1 + abs(a)):
                raise InvalidBlaschkeDataError(
                    "zero multiset must be closed under conjugation")
            left.pop(hit)


def blaschke_eval(data: BlaschkeData, z):
    """Product over the factors; real on the bottom edge, modulus one on the
    top edge and at both strip ends."""
    z = np.asarray(z, dtype=complex)
    v = math.pi * z / (2.0 * data.h)
    big = v.real > 300.0
    out = np.ones_like(v)
    e_small = np.exp(np.where(big, 0.0, v))
    e_inv = np.exp(np.where(big, -v, 0.0))
    for a in data.alphas:
        c = a.conjugate()
        small_val = (e_small - a) / (e_small + c)
        big_val = (1.0 - a * e_inv) / (1.0 + c * e_inv)
        out = out * np.where(big, big_val, small_val)
    return out if out.shape else complex(out)


def blaschke_log_derivative(data: BlaschkeData, z):
    z = np.asarray(z, dtype=complex)
    v = math.pi * z / (2.0 * data.h)
    big = v.real > 300.0
    e_small = np.exp(np.where(big, 0.0, v))
    e_inv = np.exp(np.where(big, -v, 0.0))
    acc = np.zeros_like(v)
    for a in data.alphas:
        c = a.conjugate()
        small_val = e_small / (e_small - a) - e_small / (e_small + c)
        big_val = 1.0 / (1.0 - a * e_inv) - 1.0 / (1.0 + c * e_inv)
        acc = acc + np.where(big, big_val, small_val)
    scaled = (math.pi / (2.0 * data.h)) * acc
    return scaled if scaled.shape else complex(scaled)


# ---------------------------------------------------------------------------
# zero counting by the argument principle

def winding_number(fmap, rect, *, samples: int = 128,
                   max_doublings: int = 6) -> int:
    """Winding of fmap around 0 along the rectangle boundary (x0, x1, y0, y1),
    equal to the number of interior zeros for holomorphic fmap.  The phase is
    tracked along an adaptively densified boundary polyline, which realizes
    the boundary integral of the logarithmic derivative."""
    x0, x1, y0, y1 = map(float, rect)
    if not (x1 > x0 and y1 > y0):
        raise ValueError("rectangle must have positive width and height")
    n = samples
    for _ in range(max_doublings + 1):
        bottom = np.linspace(x0, x1, n, endpoint=False) + 1j * y0
        right = x1 + 1j * np.linspace(y0, y1, n, endpoint=False)
        top = np.linspace(x1, x0, n, endpoint=False) + 1j * y1
        left = x0 + 1j * np.linspace(y1, y0, n, endpoint=False)
        pts = np.concatenate([bottom, right, top, left])
        try:
            vals = np.asarray(fmap(pts), dtype=complex)
            if vals.shape != pts.shape:
                raise TypeError
        except Exception:
            vals = np.array([fmap(z) for z in pts], dtype=complex)
        if np.min(np.abs(vals)) < 1e-6:
            raise UnreliableContourError(
                "map nearly vanishes on the contour; zero count unreliable")
        steps = np.angle(np.roll(vals, -1) / vals)
        if np.max(np.abs(steps)) < 0.5 * math.pi:
            total = float(np.sum(steps)) / (2.0 * math.pi)
            nearest = round(total)
            if abs(total - nearest) < 0.25:
                return int(nearest)
        n *= 2
    raise UnreliableContourError(
        "phase tracking did not stabilize after refinement")
