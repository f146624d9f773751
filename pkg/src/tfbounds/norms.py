"""Weighted Lebesgue norms, weighted set measures, dispersions, concentration.

Norms over the grid stand in for norms over R (or R^2); the boundary guard in
`grid` bounds the truncation error.  The weight argument is |x| for signals and
the Euclidean |z| = sqrt(x^2 + xi^2) for fields; the mixed set measures M/M'
weight each coordinate separately, as their densities demand.

All reductions run in a numerically safe path: exponents are accumulated in
log space whenever the direct evaluation could overflow, and `*_lognorm`
variants expose the log of a norm directly so verdicts can be decided even
when the norm itself exceeds float range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import FeasibilityError, GridError, ParameterError
from .grid import GridSpec, PhaseSpaceField, SampledSignal
from .report import VerdictRecord, decide_pass, grid_dict
from .weights import WeightFunction

INF = math.inf
_SAFE_EXP = 600.0  # direct path allowed while the largest log-term stays below this


def conjugate_exponent(p: float) -> float:
    if p == 1.0:
        return INF
    if p == INF:
        return 1.0
    if p < 1.0:
        raise ParameterError(f"exponent must satisfy p >= 1, got {p}")
    return p / (p - 1.0)


def two_p_conjugate(p: float) -> float:
    """(2p)' with the convention (2p)' = 1 for p = infinity."""
    if p == INF:
        return 1.0
    if p < 1.0:
        raise ParameterError(f"exponent must satisfy p >= 1, got {p}")
    return 2.0 * p / (2.0 * p - 1.0)


@dataclass(frozen=True)
class WeightedNormParams:
    w: WeightFunction
    lam: float = 0.0
    p: float = 2.0

    def __post_init__(self):
        if self.lam < 0 or not math.isfinite(self.lam):
            raise ParameterError(f"lambda must be finite and >= 0, got {self.lam}")
        if self.p != INF and self.p < 1.0:
            raise ParameterError(f"p must be in [1, inf], got {self.p}")


@lru_cache(maxsize=64)
def _abs_points(grid: GridSpec) -> np.ndarray:
    a = np.abs(grid.points())
    a.flags.writeable = False
    return a


@lru_cache(maxsize=64)
def _radius(xgrid: GridSpec, xigrid: GridSpec) -> np.ndarray:
    r = np.hypot(xgrid.points()[:, None], xigrid.points()[None, :])
    r.flags.writeable = False
    return r


_OMEGA_CACHE: dict = {}


def omega_on(w: WeightFunction, xgrid: GridSpec, xigrid: GridSpec | None = None) -> np.ndarray:
    """omega(|x|) on a grid, or omega(|z|) on a product grid; memoized."""
    key = (w.name, xgrid, xigrid)
    out = _OMEGA_CACHE.get(key)
    if out is None:
        pts = _abs_points(xgrid) if xigrid is None else _radius(xgrid, xigrid)
        out = w(pts)
        out.flags.writeable = False
        if len(_OMEGA_CACHE) > 48:
            _OMEGA_CACHE.clear()
        _OMEGA_CACHE[key] = out
    return out


def _obj_parts(obj):
    if isinstance(obj, SampledSignal):
        return obj.values, obj.grid.dx, obj.grid, None
    if isinstance(obj, PhaseSpaceField):
        return obj.values, obj.quad_weight, obj.xgrid, obj.xigrid
    raise ParameterError(f"expected SampledSignal or PhaseSpaceField, got {type(obj)!r}")


def _log_reduce(logterms: np.ndarray, p: float, logquad: float) -> float:
    """log of ( sum quad * exp(p*logterms) )^(1/p), or max for p = inf."""
    if p == INF:
        return float(np.max(logterms)) if logterms.size else -INF
    scaled = p * logterms
    m = float(np.max(scaled))
    if m == -INF:
        return -INF
    s = float(np.sum(np.exp(scaled - m)))
    return (m + math.log(s) + logquad) / p


def weighted_lp_lognorm(obj, params: WeightedNormParams,
                        extra_logweight: np.ndarray | None = None) -> float:
    """log of || e^{lam omega} obj ||_p; -inf for the zero input."""
    vals, quad, g1, g2 = _obj_parts(obj)
    om = omega_on(params.w, g1, g2)
    with np.errstate(divide="ignore"):
        logterms = np.log(np.abs(vals)) + params.lam * om
    if extra_logweight is not None:
        logterms = logterms + extra_logweight
    return _log_reduce(np.ravel(logterms), params.p, math.log(quad))


def weighted_lp_norm(obj, params: WeightedNormParams) -> float:
    """|| e^{lam omega(|.|)} obj ||_p with the grid quadrature; p = inf is the grid max.

    Values beyond float range come back as inf; use `weighted_lp_lognorm` for
    overflow-proof comparisons.
    """
    vals, quad, g1, g2 = _obj_parts(obj)
    om = omega_on(params.w, g1, g2)
    peak = params.lam * float(om.max()) if om.size else 0.0
    if peak < _SAFE_EXP:
        wv = np.exp(params.lam * om) * np.abs(vals)
        if params.p == INF:
            return float(wv.max())
        return float((quad * np.sum(wv ** params.p)) ** (1.0 / params.p))
    ln = weighted_lp_lognorm(obj, params)
    if ln == -INF:
        return 0.0
    return math.exp(ln) if ln < 709.0 else INF


def exp_weight_norm(w: WeightFunction, mu: float, p: float,
                    xgrid: GridSpec, xigrid: GridSpec | None = None) -> float:
    """|| e^{-mu omega} ||_p over a grid (1-D) or product grid (2-D)."""
    om = omega_on(w, xgrid, xigrid)
    quad = xgrid.dx if xigrid is None else xgrid.dx * xigrid.dx
    if p == INF:
        return float(np.exp(-mu * om).max())
    return float((quad * np.sum(np.exp(-p * mu * om))) ** (1.0 / p))


@dataclass(frozen=True)
class SetMask:
    """Boolean mask over a grid (1-D) or product grid (2-D), a union of cells."""

    mask: np.ndarray
    xgrid: GridSpec
    xigrid: GridSpec | None = None

    def __post_init__(self):
        m = np.asarray(self.mask, dtype=bool)
        want = (self.xgrid.M,) if self.xigrid is None else (self.xgrid.M, self.xigrid.M)
        if m.shape != want:
            raise GridError(f"mask shape {m.shape} != {want}")
        m = np.ascontiguousarray(m)
        m.flags.writeable = False
        object.__setattr__(self, "mask", m)

    @property
    def ndim(self) -> int:
        return 1 if self.xigrid is None else 2

    @property
    def quad_weight(self) -> float:
        return self.xgrid.dx if self.xigrid is None else self.xgrid.dx * self.xigrid.dx

    def measure(self) -> float:
        return float(self.quad_weight * np.count_nonzero(self.mask))

    @classmethod
    def full(cls, xgrid: GridSpec, xigrid: GridSpec | None = None) -> "SetMask":
        shape = (xgrid.M,) if xigrid is None else (xgrid.M, xigrid.M)
        return cls(np.ones(shape, dtype=bool), xgrid, xigrid)

    @classmethod
    def empty(cls, xgrid: GridSpec, xigrid: GridSpec | None = None) -> "SetMask":
        shape = (xgrid.M,) if xigrid is None else (xgrid.M, xigrid.M)
        return cls(np.zeros(shape, dtype=bool), xgrid, xigrid)

    @classmethod
    def interval(cls, grid: GridSpec, a: float, b: float) -> "SetMask":
        x = grid.points()
        return cls((x >= a) & (x <= b), grid)

    @classmethod
    def rect(cls, xgrid: GridSpec, xigrid: GridSpec,
             x0: float, x1: float, xi0: float, xi1: float) -> "SetMask":
        mx = (xgrid.points() >= x0) & (xgrid.points() <= x1)
        mxi = (xigrid.points() >= xi0) & (xigrid.points() <= xi1)
        return cls(mx[:, None] & mxi[None, :], xgrid, xigrid)

    @classmethod
    def superlevel(cls, fld: PhaseSpaceField, frac: float) -> "SetMask":
        a = np.abs(fld.values)
        return cls(a > frac * a.max(), fld.xgrid, fld.xigrid)

    def reinterpret(self, other: GridSpec) -> "SetMask":
        """The same region of R, re-sampled on another 1-D grid.

        A point of `other` belongs to the new mask when it falls inside a cell
        [x_j - dx/2, x_j + dx/2) of a masked source point.
        """
        if self.ndim != 1:
            raise GridError("reinterpret is defined for 1-D masks only")
        u = other.points()
        j = np.round((u - self.xgrid.x0) / self.xgrid.dx).astype(int)
        ok = (j >= 0) & (j < self.xgrid.M)
        out = np.zeros(other.M, dtype=bool)
        out[ok] = self.mask[j[ok]]
        return SetMask(out, other)


def weighted_set_measure(kind: str, E: SetMask, w: WeightFunction,
                         mu: float, lam: float = 0.0) -> float:
    """Quadrature of a named weighted density over the mask.

    kind 'D'      (1-D)  integral_E e^{-2 mu omega(xi)} dxi
    kind 'Dprime' (2-D)  integral_E e^{-mu omega(x,xi)} dx dxi
    kind 'M'      (2-D)  integral_E e^{K lam omega(xi) - mu omega(x)} dx dxi
    kind 'Mprime' (2-D)  same with the roles of x and xi swapped
    """
    if kind == "D":
        if E.ndim != 1:
            raise ParameterError("measure kind 'D' needs a 1-D mask")
        om = omega_on(w, E.xgrid)
        dens = np.exp(-2.0 * mu * om)
        return float(E.xgrid.dx * np.sum(dens[E.mask]))
    if E.ndim != 2:
        raise ParameterError(f"measure kind {kind!r} needs a 2-D mask")
    if kind == "Dprime":
        om = omega_on(w, E.xgrid, E.xigrid)
        dens = np.exp(-mu * om)
    elif kind in ("M", "Mprime"):
        omx = omega_on(w, E.xgrid)
        omxi = omega_on(w, E.xigrid)
        if kind == "M":
            logd = w.K * lam * omxi[None, :] - mu * omx[:, None]
        else:
            logd = w.K * lam * omx[:, None] - mu * omxi[None, :]
        dens = np.exp(logd)
    else:
        raise ParameterError(f"unknown measure kind {kind!r}")
    return float(E.quad_weight * np.sum(np.where(E.mask, dens, 0.0)))


def dispersion(obj, zbar, alpha: float, params: WeightedNormParams) -> float:
    """|| |point - zbar|^alpha e^{lam omega(|point|)} obj ||_p  (p from params)."""
    if alpha <= 0 or not math.isfinite(alpha):
        raise ParameterError(f"dispersion exponent must be positive, got {alpha}")
    vals, quad, g1, g2 = _obj_parts(obj)
    if g2 is None:
        dist = np.abs(g1.points() - float(zbar))
    else:
        xb, xib = zbar
        dist = np.hypot(g1.points()[:, None] - float(xb),
                        g2.points()[None, :] - float(xib))
    om = omega_on(params.w, g1, g2)
    with np.errstate(divide="ignore"):
        logterms = np.log(np.abs(vals)) + params.lam * om + alpha * np.log(dist)
    ln = _log_reduce(np.ravel(logterms), params.p, math.log(quad))
    if ln == -INF:
        return 0.0
    return math.exp(ln) if ln < 709.0 else INF


def energy_centroid(obj):
    """Center of mass of |obj|^2; 0 (or (0,0)) for the zero input."""
    vals, quad, g1, g2 = _obj_parts(obj)
    dens = np.abs(vals) ** 2
    total = dens.sum()
    if total == 0.0:
        return 0.0 if g2 is None else (0.0, 0.0)
    if g2 is None:
        return float(np.sum(g1.points() * dens) / total)
    xs = float(np.sum(g1.points() * dens.sum(axis=1)) / total)
    xis = float(np.sum(g2.points() * dens.sum(axis=0)) / total)
    return (xs, xis)


def epsilon_concentration(f: SampledSignal, V: SetMask) -> float:
    """Smallest eps in [0,1] with integral_V |f|^2 >= (1 - eps^2) ||f||_2^2."""
    if V.ndim != 1 or V.xgrid != f.grid:
        raise GridError("mask must live on the signal's grid")
    total = float(np.sum(np.abs(f.values) ** 2))
    if total == 0.0:
        raise ParameterError("epsilon_concentration needs a nonzero signal")
    inside = float(np.sum(np.abs(f.values[V.mask]) ** 2))
    frac = min(max(inside / total, 0.0), 1.0)
    return math.sqrt(1.0 - frac)


def lq_from_linf_check(F: PhaseSpaceField, w: WeightFunction, lam: float,
                       q: float, mu: float) -> VerdictRecord:
    """Check || e^{lam omega} F ||_q <= || e^{-mu omega} ||_q || e^{(lam+mu) omega} F ||_inf.

    Needs mu > 2N/(b q) (N = 1) so the weight norm is finite.
    """
    thr = 2.0 / (w.b * q)
    if not mu > thr:
        raise FeasibilityError(f"need mu > 2N/(b q) = {thr:g}, got {mu}")
    lhs = weighted_lp_norm(F, WeightedNormParams(w, lam, q))
    cnorm = exp_weight_norm(w, mu, q, F.xgrid, F.xigrid)
    sup = weighted_lp_norm(F, WeightedNormParams(w, lam + mu, INF))
    rhs = cnorm * sup
    return VerdictRecord(
        case_id="LQ_FROM_LINF",
        lhs=lhs, rhs=rhs, constant=cnorm,
        passed=decide_pass(lhs, rhs),
        params={"omega": w.name, "lambda": lam, "q": q, "mu": mu},
        rhs_norms={"exp_weight_q": cnorm, "weighted_sup": sup},
        grid={"x": grid_dict(F.xgrid), "xi": grid_dict(F.xigrid)},
    )
