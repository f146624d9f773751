"""Uniform 1-D grids, sampled signals, phase-space fields, and the Fourier transform.

The transform convention is angular-frequency with no 2*pi in the exponent,

    F(f)(xi) = integral e^{-i x xi} f(x) dx,

and the inverse carries the factor 1/(2*pi).  All transforms are computed as
quadrature-scaled, phase-corrected FFTs so that sampled values approximate the
integrals, not the raw DFT.  Parseval then reads ||Ff||_2 = sqrt(2*pi) ||f||_2.

Signals are immutable values on a grid; a boundary-decay guard (max modulus on
the outer 5% of samples below 1e-8 of the peak) keeps quadrature and aliasing
errors quantifiable for everything in the test battery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AliasingError, GridError, ParameterError

TAIL_FRACTION = 0.05
TAIL_GUARD = 1e-8


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid x_j = x0 + j*dx for j = 0..M-1, M a power of two."""

    x0: float
    dx: float
    M: int

    def __post_init__(self):
        if not (self.dx > 0 and math.isfinite(self.dx) and math.isfinite(self.x0)):
            raise GridError(f"bad grid origin/step: x0={self.x0}, dx={self.dx}")
        if self.M < 8 or not _is_power_of_two(self.M):
            raise GridError(f"M must be a power of two >= 8, got {self.M}")

    @classmethod
    def centered(cls, halfwidth: float, M: int) -> "GridSpec":
        """Grid covering [-halfwidth, halfwidth) with M samples."""
        return cls(-float(halfwidth), 2.0 * float(halfwidth) / M, M)

    def points(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.M)

    def dual(self) -> "GridSpec":
        """Centered frequency grid induced by this grid (step 2*pi/(M*dx))."""
        dxi = 2.0 * np.pi / (self.M * self.dx)
        return GridSpec(-np.pi / self.dx, dxi, self.M)

    @property
    def length(self) -> float:
        return self.M * self.dx

    def index_of(self, x: float) -> int:
        """Nearest sample index of x; raises if x is off the grid."""
        j = int(round((x - self.x0) / self.dx))
        if not 0 <= j < self.M:
            raise GridError(f"{x} outside grid [{self.x0}, {self.x0 + self.length})")
        return j


DEFAULT_GRID = GridSpec.centered(20.0, 1024)
# Counterexample-scan grid.  Wide enough that the broadest scanned signal
# (std 16) passes the tail guard; the induced xi-range still resolves the
# narrow component's spectrum to ~1e-4.
SCAN_GRID = GridSpec.centered(120.0, 4096)


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.complex128)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SampledSignal:
    """Complex samples of a rapidly decreasing function on a uniform grid."""

    grid: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != (self.grid.M,):
            raise GridError(f"values shape {v.shape} != ({self.grid.M},)")
        if not np.all(np.isfinite(v.view(np.float64) if v.dtype == np.complex128 else v)):
            raise ParameterError("signal contains non-finite samples")
        object.__setattr__(self, "values", _freeze(v))

    def l2norm(self) -> float:
        return float(np.sqrt(self.grid.dx * np.sum(np.abs(self.values) ** 2)))

    def tail_ratio(self) -> float:
        """Peak modulus on the outer 5% of samples relative to the global peak."""
        m = int(np.ceil(TAIL_FRACTION * self.grid.M / 2))
        a = np.abs(self.values)
        peak = a.max()
        if peak == 0.0:
            return 0.0
        return float(max(a[:m].max(), a[-m:].max()) / peak)

    def require_guard(self, tol: float = TAIL_GUARD) -> None:
        r = self.tail_ratio()
        if r > tol:
            raise AliasingError(
                f"boundary-decay guard failed: tail/peak = {r:.3e} > {tol:.1e}"
            )


@dataclass(frozen=True)
class PhaseSpaceField:
    """Complex samples F(x_j, xi_k) on the product of two uniform grids."""

    xgrid: GridSpec
    xigrid: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != (self.xgrid.M, self.xigrid.M):
            raise GridError(f"field shape {v.shape} != ({self.xgrid.M}, {self.xigrid.M})")
        if not np.all(np.isfinite(v)):
            raise ParameterError("field contains non-finite samples")
        object.__setattr__(self, "values", _freeze(v))

    @property
    def quad_weight(self) -> float:
        return self.xgrid.dx * self.xigrid.dx

    def l2norm(self) -> float:
        return float(np.sqrt(self.quad_weight * np.sum(np.abs(self.values) ** 2)))


def _quad_dft(values: np.ndarray, src: GridSpec, dst: GridSpec, sign: int,
              axis: int = -1) -> np.ndarray:
    """Quadrature DFT  src.dx * sum_j v_j e^{sign * i * a_j * b_k}  between dual grids.

    Requires src.dx * dst.dx * M = 2*pi (the grids are a dual pair); the double
    sum then factors through one FFT with boundary phase corrections.
    """
    M = src.M
    if dst.M != M:
        raise GridError("dual grids must have equal sample counts")
    if abs(src.dx * dst.dx * M - 2.0 * np.pi) > 1e-9:
        raise GridError("grids are not a dual pair (dx * dxi * M != 2*pi)")
    j = np.arange(M)
    pre = np.exp(sign * 1j * dst.x0 * src.dx * j)
    post = src.dx * np.exp(sign * 1j * src.x0 * (dst.x0 + dst.dx * j))
    shape = [1] * values.ndim
    shape[axis] = M
    v = values * pre.reshape(shape)
    if sign < 0:
        t = np.fft.fft(v, axis=axis)
    else:
        t = np.fft.ifft(v, axis=axis) * M
    return t * post.reshape(shape)


def fourier_transform(f: SampledSignal, guard: bool = True) -> SampledSignal:
    """Samples of F(f) on the induced centered frequency grid."""
    if guard:
        f.require_guard()
    dst = f.grid.dual()
    return SampledSignal(dst, _quad_dft(f.values, f.grid, dst, -1))


def inverse_fourier_transform(F: SampledSignal, guard: bool = True) -> SampledSignal:
    """Inverse transform (2*pi)^{-1} integral e^{+i x xi} F(xi) dxi."""
    if guard:
        F.require_guard()
    dst = F.grid.dual()
    return SampledSignal(dst, _quad_dft(F.values, F.grid, dst, +1) / (2.0 * np.pi))


def refine(f: SampledSignal, r: int) -> SampledSignal:
    """Trigonometric refinement: same signal on the grid (x0, dx/r, M*r).

    Zero-padding in frequency; exact at the original nodes.  The Nyquist bin is
    split symmetrically so real signals stay real.
    """
    if r < 1 or not _is_power_of_two(r):
        raise ParameterError(f"refinement factor must be a power of two >= 1, got {r}")
    if r == 1:
        return f
    M = f.grid.M
    spec = np.fft.fftshift(np.fft.fft(f.values))
    out = np.zeros(M * r, dtype=np.complex128)
    lo = (M * r - M) // 2
    out[lo:lo + M] = spec
    out[lo] = 0.5 * spec[0]
    out[lo + M] = 0.5 * spec[0]
    vals = np.fft.ifft(np.fft.ifftshift(out)) * r
    fine = GridSpec(f.grid.x0, f.grid.dx / r, M * r)
    return SampledSignal(fine, vals)


def _hermite_poly(n: int, x: np.ndarray) -> np.ndarray:
    # physicists' recursion H_{k+1} = 2x H_k - 2k H_{k-1}
    h0 = np.ones_like(x)
    if n == 0:
        return h0
    h1 = 2.0 * x
    for k in range(1, n):
        h0, h1 = h1, 2.0 * x * h1 - 2.0 * k * h0
    return h1


def make_signal(kind: str, grid: GridSpec, guard: bool = True, **params) -> SampledSignal:
    """Test-signal generator.

    kinds:
      gaussian(center, width, height, chirp, modulation)
          height * exp(-(x-center)^2/(2 width^2)) * exp(i (chirp x^2 + modulation x))
      hermite(n)        H_n(x) exp(-x^2/2), physicists' H_n, n <= 6
      two_gaussian(s)   s^2 exp(-s^4 x^2/2) + exp(-x^2/(2 s^4)),  s >= 1
    """
    x = grid.points()
    if kind == "gaussian":
        c = float(params.pop("center", 0.0))
        w = float(params.pop("width", 1.0))
        h = float(params.pop("height", 1.0))
        chirp = float(params.pop("chirp", 0.0))
        mod = float(params.pop("modulation", 0.0))
        if params:
            raise ParameterError(f"unknown gaussian parameters {sorted(params)}")
        if not (w > 0 and all(map(math.isfinite, (c, w, h, chirp, mod)))):
            raise ParameterError("gaussian parameters must be finite with width > 0")
        vals = h * np.exp(-((x - c) ** 2) / (2.0 * w * w)) * np.exp(1j * (chirp * x * x + mod * x))
    elif kind == "hermite":
        n = int(params.pop("n", 0))
        if params:
            raise ParameterError(f"unknown hermite parameters {sorted(params)}")
        if not 0 <= n <= 6:
            raise ParameterError(f"hermite order must be in 0..6, got {n}")
        vals = _hermite_poly(n, x) * np.exp(-x * x / 2.0)
    elif kind == "two_gaussian":
        s = float(params.pop("s", 1.0))
        if params:
            raise ParameterError(f"unknown two_gaussian parameters {sorted(params)}")
        if not (s >= 1.0 and math.isfinite(s)):
            raise ParameterError(f"two_gaussian scale must be >= 1, got {s}")
        s2, s4 = s * s, s ** 4
        vals = s2 * np.exp(-s4 * x * x / 2.0) + np.exp(-x * x / (2.0 * s4))
    else:
        raise ParameterError(f"unknown signal kind {kind!r}")
    sig = SampledSignal(grid, vals)
    if guard:
        try:
            sig.require_guard()
        except AliasingError as e:
            raise AliasingError(f"grid too small for signal {kind}: {e}") from e
    return sig


def parse_signal_spec(spec: str, grid: GridSpec) -> SampledSignal:
    """Build a signal from a CLI string such as

    gaussian:c=0,w=1,h=1,chirp=0,mod=0   |   hermite:3   |   two_gaussian:s=2
    """
    name, _, rest = spec.partition(":")
    name = name.strip()
    if name == "hermite":
        return make_signal("hermite", grid, n=int(rest))
    keymap = {"c": "center", "w": "width", "h": "height",
              "chirp": "chirp", "mod": "modulation", "s": "s",
              "center": "center", "width": "width", "height": "height",
              "modulation": "modulation"}
    params = {}
    if rest:
        for part in rest.split(","):
            k, _, v = part.partition("=")
            k = k.strip()
            if k not in keymap:
                raise ParameterError(f"unknown signal parameter {k!r} in {spec!r}")
            params[keymap[k]] = float(v)
    return make_signal(name, grid, **params)


def reverse(f: SampledSignal) -> SampledSignal:
    """Samples of x -> f(-x) on the same centered grid.

    The leftmost node has no mirror partner; its slot gets 0 (negligible under
    the tail guard).
    """
    vals = np.zeros_like(f.values)
    vals[1:] = f.values[:0:-1]
    return SampledSignal(f.grid, vals)


def shift(f: SampledSignal, n: int) -> SampledSignal:
    """Translate by n grid steps with zero fill."""
    vals = np.zeros_like(f.values)
    if n >= 0:
        vals[n:] = f.values[: f.grid.M - n]
    else:
        vals[:n] = f.values[-n:]
    return SampledSignal(f.grid, vals)


#: Default verification battery: name -> constructor kwargs.
BATTERY_SPECS = (
    ("gaussian", {"kind": "gaussian"}),
    ("hermite:1", {"kind": "hermite", "n": 1}),
    ("hermite:2", {"kind": "hermite", "n": 2}),
    ("gaussian:c=2,w=0.8", {"kind": "gaussian", "center": 2.0, "width": 0.8}),
    ("gaussian:chirp=0.2,mod=1", {"kind": "gaussian", "chirp": 0.2, "modulation": 1.0}),
)


def default_battery(grid: GridSpec = DEFAULT_GRID) -> list[tuple[str, SampledSignal]]:
    out = []
    for name, kw in BATTERY_SPECS:
        kw = dict(kw)
        kind = kw.pop("kind")
        out.append((name, make_signal(kind, grid, **kw)))
    return out
