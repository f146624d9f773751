"""Weight functions for the exponentially weighted Lebesgue norms.

A weight is a continuous increasing omega: [0, inf) -> [0, inf) with

  (alpha)  omega(2t) <= K (1 + omega(t))          for some K >= 1,
  (beta)   omega(t) = o(t)                        (checked via a sampled proxy),
  (gamma)  omega(t) >= a + b log(1+t)             for some a, b > 0,
  (delta)  t -> omega(e^t) convex.

Two builtin families are provided, both truncated to vanish on [0, 1]:

  log      omega(t) = max(0, log((1+t)/2)),   K = 1,   a = -log 2, b = 1
  power:s  omega(t) = max(0, t^s - 1),        K = 2^s, b = 1,
           a = min_{t>=0} (t^s - 1 - log(1+t)) computed numerically

The certified constants (K, a, b) feed every constant formula downstream, so
they are stored closed-form and validated by `check_weight_conditions` rather
than estimated.  Condition (beta) cannot be verified on a finite grid; the
report carries the sampled proxy omega(T)/T at the largest grid point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ParameterError

CONDITION_TOL = 1e-12
BETA_PROXY_BOUND = 0.01
#: upper end of the search bracket for the Young conjugate (t-domain of
#: omega(e^t); e^30 ~ 1e13 keeps every builtin evaluation overflow-free).
YOUNG_T_CAP = 30.0
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class WeightFunction:
    """A weight omega with its certified condition constants.

    `fn` maps nonnegative t to omega(t) and must accept numpy arrays.  The
    extension to R^N is omega(|z|), applied by callers on |z|.  Instances are
    immutable and safe to share across threads.
    """

    name: str
    fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    K: float
    a: float
    b: float
    gamma_prime: bool
    vanishes_on_unit: bool = True

    def __call__(self, t) -> np.ndarray:
        return self.fn(np.abs(np.asarray(t, dtype=np.float64)))


@dataclass(frozen=True)
class WeightConditionReport:
    weight: str
    monotone_ok: bool
    zero_at_zero_ok: bool
    alpha_ok: bool
    alpha_margin: float
    gamma_ok: bool
    gamma_margin: float
    delta_ok: bool
    delta_margin: float
    beta_proxy_ok: bool
    beta_ratio: float
    grid_max: float
    violations: tuple = ()

    @property
    def passed(self) -> bool:
        return (self.monotone_ok and self.zero_at_zero_ok and self.alpha_ok
                and self.gamma_ok and self.delta_ok and self.beta_proxy_ok)

    def to_dict(self) -> dict:
        return {
            "weight": self.weight,
            "passed": self.passed,
            "monotone_ok": self.monotone_ok,
            "zero_at_zero_ok": self.zero_at_zero_ok,
            "alpha": {"ok": self.alpha_ok, "margin": self.alpha_margin},
            "gamma": {"ok": self.gamma_ok, "margin": self.gamma_margin},
            "delta": {"ok": self.delta_ok, "margin": self.delta_margin},
            "beta_proxy": {"ok": self.beta_proxy_ok, "ratio": self.beta_ratio},
            "grid_max": self.grid_max,
            "violations": [list(v) for v in self.violations],
        }


def _log_weight(t: np.ndarray) -> np.ndarray:
    return np.maximum(0.0, np.log((1.0 + t) / 2.0))


def _power_additive_constant(s: float) -> float:
    """min over t >= 0 of  t^s - 1 - log(1+t), by dense sampling + golden refine."""
    ts = np.concatenate(([0.0], np.logspace(-6, 10, 4000)))
    g = ts ** s - 1.0 - np.log1p(ts)
    i = int(np.argmin(g))
    lo = ts[max(i - 1, 0)]
    hi = ts[min(i + 1, len(ts) - 1)]
    if hi <= lo:
        return float(g[i])
    obj = lambda t: t ** s - 1.0 - math.log1p(t)
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = obj(x1), obj(x2)
    for _ in range(200):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = obj(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = obj(x2)
        if hi - lo < 1e-12 * (1.0 + abs(lo)):
            break
    return min(float(g[i]), obj(0.5 * (lo + hi)))


def builtin_weight(name: str, s: float | None = None) -> WeightFunction:
    """Builtin weights `log` and `power` (exponent s in (0,1))."""
    if name == "log":
        return WeightFunction(name="log", fn=_log_weight, K=1.0,
                              a=-math.log(2.0), b=1.0, gamma_prime=False)
    if name == "power":
        if s is None or not (0.0 < s < 1.0):
            raise ParameterError(f"power exponent must lie in (0,1), got {s}")
        s = float(s)

        def fn(t, _s=s):
            return np.maximum(0.0, t ** _s - 1.0)

        return WeightFunction(name=f"power:{s:g}", fn=fn, K=2.0 ** s,
                              a=_power_additive_constant(s), b=1.0,
                              gamma_prime=True)
    raise ParameterError(f"unknown weight {name!r}")


def parse_weight_spec(spec: str) -> WeightFunction:
    """CLI weight selector: `log` or `power:0.5`."""
    name, _, rest = spec.partition(":")
    if name == "power":
        return builtin_weight("power", s=float(rest))
    if rest:
        raise ParameterError(f"weight {name!r} takes no parameter")
    return builtin_weight(name)


def default_condition_grid() -> np.ndarray:
    return np.concatenate(([0.0], np.logspace(-3, 4, 600)))


def check_weight_conditions(w: WeightFunction,
                            grid: np.ndarray | None = None) -> WeightConditionReport:
    """Evaluate the condition battery on a sampled grid.

    Violations are reported as data, not raised: a failing sample appears in
    `violations` as (condition, t, lhs, rhs).
    """
    t = default_condition_grid() if grid is None else np.asarray(grid, dtype=np.float64)
    if t.size == 0 or t[0] != 0.0 or np.any(np.diff(t) <= 0):
        raise ParameterError("condition grid must be nonempty, strictly increasing, starting at 0")
    om = w(t)
    violations: list[tuple] = []

    dif = np.diff(om)
    monotone_ok = bool(np.all(dif >= -CONDITION_TOL))
    if not monotone_ok:
        for i in np.nonzero(dif < -CONDITION_TOL)[0][:10]:
            violations.append(("monotone", float(t[i + 1]), float(om[i + 1]), float(om[i])))
    zero_ok = bool(abs(float(om[0])) <= CONDITION_TOL)

    alpha_gap = w.K * (1.0 + om) - w(2.0 * t)
    alpha_margin = float(alpha_gap.min())
    alpha_ok = alpha_margin >= -CONDITION_TOL
    if not alpha_ok:
        for i in np.nonzero(alpha_gap < -CONDITION_TOL)[0][:10]:
            violations.append(("alpha", float(t[i]), float(w(2 * t[i])), float(w.K * (1 + om[i]))))

    gamma_gap = om - (w.a + w.b * np.log1p(t))
    gamma_margin = float(gamma_gap.min())
    gamma_ok = gamma_margin >= -CONDITION_TOL
    if not gamma_ok:
        for i in np.nonzero(gamma_gap < -CONDITION_TOL)[0][:10]:
            violations.append(("gamma", float(t[i]), float(om[i]), float(w.a + w.b * math.log1p(t[i]))))

    # (delta): midpoint convexity of phi(u) = omega(e^u) on a uniform u-grid
    u = np.linspace(-8.0, math.log(max(t[-1], 10.0)), 801)
    phi = w(np.exp(u))
    delta_gap = 0.5 * (phi[:-2] + phi[2:]) - phi[1:-1]
    delta_margin = float(delta_gap.min())
    delta_ok = delta_margin >= -CONDITION_TOL
    if not delta_ok:
        for i in np.nonzero(delta_gap < -CONDITION_TOL)[0][:10]:
            violations.append(("delta", float(np.exp(u[i + 1])), float(phi[i + 1]),
                               float(0.5 * (phi[i] + phi[i + 2]))))

    T = float(t[-1])
    beta_ratio = float(w(T) / T) if T > 0 else 0.0
    beta_ok = beta_ratio < BETA_PROXY_BOUND

    return WeightConditionReport(
        weight=w.name, monotone_ok=monotone_ok, zero_at_zero_ok=zero_ok,
        alpha_ok=alpha_ok, alpha_margin=alpha_margin,
        gamma_ok=gamma_ok, gamma_margin=gamma_margin,
        delta_ok=delta_ok, delta_margin=delta_margin,
        beta_proxy_ok=beta_ok, beta_ratio=beta_ratio,
        grid_max=T, violations=tuple(violations),
    )


def young_conjugate(w: WeightFunction, s: float) -> float:
    """sup_{t >= 0} (s*t - omega(e^t)), by bracketed golden-section maximization.

    The objective is concave (condition (delta)), so an interior bracket pins
    the sup.  The search domain is capped at t = YOUNG_T_CAP; if the objective
    is still nondecreasing there (log-type weights with s >= b) the capped
    supremum is returned -- the same documented domain any brute-force check
    must use.
    """
    if s < 0 or not math.isfinite(s):
        raise ParameterError(f"young_conjugate needs s >= 0, got {s}")
    obj = lambda t: s * t - float(w(math.exp(t)))
    best_t, best_v = 0.0, 0.0
    prev_t, prev_v = 0.0, 0.0
    t = 0.25
    bracket = None
    while t <= YOUNG_T_CAP:
        v = obj(t)
        if v < best_v:
            bracket = (prev_t, best_t, t)
            break
        if v >= best_v:
            prev_t, prev_v = best_t, best_v
            best_t, best_v = t, v
        t *= 2.0
    else:
        cap_v = obj(YOUNG_T_CAP)
        if cap_v >= best_v:
            return max(0.0, cap_v)
        bracket = (prev_t, best_t, YOUNG_T_CAP)
    lo, _, hi = bracket
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = obj(x1), obj(x2)
    while hi - lo > 1e-11 * (1.0 + hi):
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = obj(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = obj(x2)
    return max(0.0, best_v, obj(0.5 * (lo + hi)))
