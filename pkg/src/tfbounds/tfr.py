"""Time-frequency representations and convention calibration.

Everything is computed under the transform convention of `grid`:

  stft          V_g f(x,xi)  = integral f(y) conj(g(y-x)) e^{-i y xi} dy
  spectrogram   Sp_g f       = |V_g f|^2
  rihaczek      R f(x,xi)    = e^{-i x xi} f(x) conj(F f(xi))
  tau_wigner    W_tau f(x,xi)= integral e^{-i t xi} f(x+tau t) conj(f(x-(1-tau)t)) dt
  wigner        W_{1/2}
  born_jordan   integral_0^1 W_tau f dtau        (Gauss-Legendre in tau)
  cohen_apply   Q_sigma f = sigma * W_{1/2} f    (Fourier-multiplier form)

Identities that the literature states without normalization constants hold
here with calibrated constants, fixed once from Gaussian closed forms and kept
in a ConventionRegistry:

  * Sp_g f = c_spwig * (W_{1-tau} g~ ) * (W_tau f)   with c_spwig = (2 pi)^-N;
  * |V_g f(x,xi)| = (2 pi)^-N |V_{Fg} Ff (xi, -x)|   (modulus level; the exact
    identity carries an extra phase e^{-i x xi}, recorded by the
    c_fundgabor_phase flag);
  * the Born-Jordan Fourier-multiplier path agrees with the tau-quadrature
    path after scaling by c_bj_multiplier (= 1 in this convention).

tau-Wigner evaluation off the grid uses trigonometric refinement (factor r,
default 4) with nearest-fine-node lookup; dyadic tau with tau*r integral is
then exact, and arbitrary tau (Born-Jordan nodes) lands within half a fine
step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import ConventionError, GridError, KernelError, ParameterError
from .grid import (DEFAULT_GRID, GridSpec, PhaseSpaceField, SampledSignal,
                   _quad_dft, fourier_transform, make_signal, refine, reverse)

TWO_PI = 2.0 * math.pi


def _window_rows(g: SampledSignal) -> np.ndarray:
    """rows[j, i] = g(y_i - x_j) with zero fill, as a strided view."""
    grid = g.grid
    off = -grid.x0 / grid.dx
    offi = int(round(off))
    if abs(off - offi) > 1e-9:
        raise GridError("grid origin must be an integer multiple of the step")
    M = grid.M
    gpad = np.zeros(3 * M, dtype=np.complex128)
    gpad[M:2 * M] = g.values
    sw = sliding_window_view(gpad, M)
    starts = M + offi - np.arange(M)
    return sw[starts]


def stft(f: SampledSignal, g: SampledSignal, guard: bool = True) -> PhaseSpaceField:
    """Windowed transform V_g f on (x-grid) x (induced xi-grid)."""
    if f.grid != g.grid:
        raise GridError("signal and window must share a grid")
    if g.l2norm() == 0.0:
        raise ParameterError("zero window")
    if guard:
        f.require_guard()
        g.require_guard()
    rows = _window_rows(g)
    H = f.values[None, :] * np.conj(rows)
    dst = f.grid.dual()
    V = _quad_dft(H, f.grid, dst, -1, axis=1)
    return PhaseSpaceField(f.grid, dst, V)


def stft_inverse(V: PhaseSpaceField, g: SampledSignal) -> SampledSignal:
    """Reconstruction f(y) = (2 pi)^-1 ||g||_2^-2 iint V(z) e^{i y xi} g(y-x) dz."""
    if V.xgrid != g.grid or V.xigrid != g.grid.dual():
        raise GridError("field grids do not match the window grid")
    ng2 = g.l2norm() ** 2
    if ng2 == 0.0:
        raise ParameterError("zero window")
    A = _quad_dft(V.values, V.xigrid, g.grid, +1, axis=1)
    rows = _window_rows(g)
    vals = (g.grid.dx / (TWO_PI * ng2)) * np.sum(A * rows, axis=0)
    return SampledSignal(g.grid, vals)


def spectrogram(f: SampledSignal, g: SampledSignal, guard: bool = True) -> PhaseSpaceField:
    V = stft(f, g, guard=guard)
    return PhaseSpaceField(V.xgrid, V.xigrid, np.abs(V.values) ** 2)


def rihaczek(f: SampledSignal, guard: bool = True) -> PhaseSpaceField:
    fh = fourier_transform(f, guard=guard)
    phase = np.exp(-1j * np.outer(f.grid.points(), fh.grid.points()))
    vals = phase * f.values[:, None] * np.conj(fh.values)[None, :]
    return PhaseSpaceField(f.grid, fh.grid, vals)


def rihaczek_star(f: SampledSignal, guard: bool = True) -> PhaseSpaceField:
    R = rihaczek(f, guard=guard)
    return PhaseSpaceField(R.xgrid, R.xigrid, np.conj(R.values))


def _tau_wigner_fine(fine: SampledSignal, grid: GridSpec, tau: float) -> PhaseSpaceField:
    M = grid.M
    r = fine.grid.M // M
    tgrid = GridSpec(-M * grid.dx / 2.0, grid.dx, M)
    dst = grid.dual()
    tcoef = np.arange(M) - M // 2
    off1 = np.rint(tau * r * tcoef).astype(np.int64)
    off2 = np.rint((1.0 - tau) * r * tcoef).astype(np.int64)
    jr = (r * np.arange(M)).astype(np.int64)
    fv = fine.values
    Mr = fine.grid.M
    out = np.empty((M, M), dtype=np.complex128)
    chunk = max(1, (1 << 22) // M)
    for a in range(0, M, chunk):
        b = min(a + chunk, M)
        i1 = jr[a:b, None] + off1[None, :]
        i2 = jr[a:b, None] - off2[None, :]
        v1 = np.where((i1 >= 0) & (i1 < Mr), fv[np.clip(i1, 0, Mr - 1)], 0.0)
        v2 = np.where((i2 >= 0) & (i2 < Mr), fv[np.clip(i2, 0, Mr - 1)], 0.0)
        out[a:b] = _quad_dft(v1 * np.conj(v2), tgrid, dst, -1, axis=1)
    return PhaseSpaceField(grid, dst, out)


def tau_wigner(f: SampledSignal, tau: float, r: int = 4, guard: bool = True) -> PhaseSpaceField:
    """W_tau f; tau in [0,1].  tau = 0 is the Rihaczek form, tau = 1 its conjugate."""
    if not 0.0 <= tau <= 1.0:
        raise ParameterError(f"tau must lie in [0, 1], got {tau}")
    if guard:
        f.require_guard()
    return _tau_wigner_fine(refine(f, r), f.grid, tau)


def wigner(f: SampledSignal, r: int = 4, guard: bool = True) -> PhaseSpaceField:
    return tau_wigner(f, 0.5, r=r, guard=guard)


def born_jordan(f: SampledSignal, quadrature_nodes: int = 64, r: int = 4,
                guard: bool = True) -> PhaseSpaceField:
    """tau-average of W_tau over [0,1] by Gauss-Legendre quadrature."""
    if quadrature_nodes < 8:
        raise ParameterError(f"need at least 8 quadrature nodes, got {quadrature_nodes}")
    if guard:
        f.require_guard()
    nodes, wts = np.polynomial.legendre.leggauss(quadrature_nodes)
    fine = refine(f, r)
    acc = np.zeros((f.grid.M, f.grid.M), dtype=np.complex128)
    dst = f.grid.dual()
    for t, wt in zip(0.5 * (nodes + 1.0), 0.5 * wts):
        acc += wt * _tau_wigner_fine(fine, f.grid, float(t)).values
    return PhaseSpaceField(f.grid, dst, acc)


# ---------------------------------------------------------------------------
# 2-D transforms and the Cohen class


def field_fourier(fld: PhaseSpaceField) -> PhaseSpaceField:
    tg, eg = fld.xgrid.dual(), fld.xigrid.dual()
    v = _quad_dft(fld.values, fld.xgrid, tg, -1, axis=0)
    v = _quad_dft(v, fld.xigrid, eg, -1, axis=1)
    return PhaseSpaceField(tg, eg, v)


def field_inverse_fourier(fld: PhaseSpaceField) -> PhaseSpaceField:
    xg, xig = fld.xgrid.dual(), fld.xigrid.dual()
    v = _quad_dft(fld.values, fld.xgrid, xg, +1, axis=0)
    v = _quad_dft(v, fld.xigrid, xig, +1, axis=1)
    return PhaseSpaceField(xg, xig, v / TWO_PI ** 2)


def convolve_fields(A: PhaseSpaceField, B: PhaseSpaceField) -> PhaseSpaceField:
    """(A * B)(z) = iint A(y) B(z-y) dy, via the constant-free convolution theorem."""
    if A.xgrid != B.xgrid or A.xigrid != B.xigrid:
        raise GridError("convolution needs matching grids")
    FA, FB = field_fourier(A), field_fourier(B)
    return field_inverse_fourier(
        PhaseSpaceField(FA.xgrid, FA.xigrid, FA.values * FB.values))


@dataclass(frozen=True)
class CohenKernel:
    """A convolution kernel sigma given by its Fourier multiplier on the dual grid."""

    name: str
    tgrid: GridSpec
    etagrid: GridSpec
    multiplier: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.multiplier, dtype=np.complex128)
        if m.shape != (self.tgrid.M, self.etagrid.M):
            raise GridError("multiplier shape does not match its dual grid")
        if not np.all(np.isfinite(m)):
            raise KernelError("multiplier must be finite everywhere")
        m = np.ascontiguousarray(m)
        m.flags.writeable = False
        object.__setattr__(self, "multiplier", m)

    @property
    def min_abs_multiplier(self) -> float:
        return float(np.min(np.abs(self.multiplier)))


def _dual_grids(grid: GridSpec) -> tuple[GridSpec, GridSpec]:
    return grid.dual(), grid.dual().dual()


def identity_kernel(grid: GridSpec) -> CohenKernel:
    tg, eg = _dual_grids(grid)
    return CohenKernel("identity", tg, eg, np.ones((tg.M, eg.M)))


def _bj_kernel_raw(grid: GridSpec) -> CohenKernel:
    tg, eg = _dual_grids(grid)
    a = np.outer(tg.points(), eg.points())
    small = np.abs(a) < 1e-12
    safe = np.where(small, 1.0, a)
    vals = np.where(small, 1.0, 2.0 * np.sin(safe / 2.0) / safe)
    return CohenKernel("born_jordan", tg, eg, vals)


def bj_kernel(grid: GridSpec, registry: "ConventionRegistry | None" = None) -> CohenKernel:
    """sinc-type multiplier 2 sin(t eta / 2)/(t eta), scaled so the kernel path
    reproduces `born_jordan` (the scale calibrates to 1 in this convention)."""
    raw = _bj_kernel_raw(grid)
    scale = (registry or get_conventions()).c_bj_multiplier
    return CohenKernel(raw.name, raw.tgrid, raw.etagrid, scale * raw.multiplier)


def dirac_plus_gaussian_kernel(grid: GridSpec, a: float = 1.0,
                               c: float = 0.25, d: float = 0.25) -> CohenKernel:
    """sigma = a delta + exp(-c t^2 - d eta^2); multiplier a + pi/sqrt(cd) e^{-x^2/4c - xi^2/4d}."""
    if c <= 0 or d <= 0:
        raise KernelError("gaussian kernel needs c, d > 0")
    if -1.0 <= a <= 0.0:
        raise KernelError("dirac coefficient a must avoid [-1, 0]")
    tg, eg = _dual_grids(grid)
    t = tg.points()[:, None]
    e = eg.points()[None, :]
    vals = a + (math.pi / math.sqrt(c * d)) * np.exp(-t * t / (4 * c) - e * e / (4 * d))
    return CohenKernel(f"dirac_plus_gaussian:a={a:g},c={c:g},d={d:g}", tg, eg, vals)


def polynomial_kernel(grid: GridSpec) -> CohenKernel:
    """Non-vanishing polynomial multiplier 1 + t^2 + eta^2 (a differential operator)."""
    tg, eg = _dual_grids(grid)
    t = tg.points()[:, None]
    e = eg.points()[None, :]
    return CohenKernel("polynomial:1+x2+xi2", tg, eg, 1.0 + t * t + e * e)


def kernel_from_field(name: str, fld: PhaseSpaceField) -> CohenKernel:
    F = field_fourier(fld)
    return CohenKernel(name, F.xgrid, F.xigrid, F.values)


@lru_cache(maxsize=8)
def gauss_wigner_kernel(grid: GridSpec, r: int = 4) -> CohenKernel:
    """sigma_1 = Wigner transform of the unit Gaussian (a rapidly decreasing kernel)."""
    g0 = make_signal("gaussian", grid)
    return kernel_from_field("gauss_wigner", wigner(g0, r=r))


_SPACE_SIDE_CACHE: dict = {}


def kernel_space_side(k: CohenKernel) -> PhaseSpaceField:
    """sigma itself (inverse 2-D transform of the multiplier); memoized by name+grids.

    Distributional parts render as grid spikes whose quadrature mass matches
    the distribution (a delta becomes one cell of height 1/(dx dxi)).
    """
    key = (k.name, k.tgrid, k.etagrid)
    out = _SPACE_SIDE_CACHE.get(key)
    if out is None:
        out = field_inverse_fourier(PhaseSpaceField(k.tgrid, k.etagrid, k.multiplier))
        if len(_SPACE_SIDE_CACHE) > 16:
            _SPACE_SIDE_CACHE.clear()
        _SPACE_SIDE_CACHE[key] = out
    return out


def cohen_apply(k: CohenKernel, f: SampledSignal, r: int = 4,
                wig: PhaseSpaceField | None = None) -> PhaseSpaceField:
    """Q_sigma f = F^{-1}( multiplier . F(W_{1/2} f) ); constant-free in this convention."""
    W = wig if wig is not None else wigner(f, r=r)
    FW = field_fourier(W)
    if FW.xgrid != k.tgrid or FW.xigrid != k.etagrid:
        raise GridError("kernel multiplier grid does not match the field's dual grid")
    return field_inverse_fourier(
        PhaseSpaceField(FW.xgrid, FW.xigrid, FW.values * k.multiplier))


# ---------------------------------------------------------------------------
# Convention calibration


@dataclass(frozen=True)
class ConventionRegistry:
    """Calibration constants fixed once from Gaussian closed forms."""

    c_spwig: float
    c_fundgabor_phase: bool
    c_bj_multiplier: float
    grid: GridSpec
    spwig_max_rel_dev: float
    fundgabor_max_abs_err: float
    bj_max_rel_dev: float

    def to_dict(self) -> dict:
        return {
            "c_spwig": self.c_spwig,
            "c_fundgabor_phase": self.c_fundgabor_phase,
            "c_bj_multiplier": self.c_bj_multiplier,
            "spwig_max_rel_dev": self.spwig_max_rel_dev,
            "fundgabor_max_abs_err": self.fundgabor_max_abs_err,
            "bj_max_rel_dev": self.bj_max_rel_dev,
        }


def calibrate_conventions(grid: GridSpec = DEFAULT_GRID, r: int = 4,
                          bj_nodes: int = 64, tau: float = 0.5) -> ConventionRegistry:
    """Fix the convention constants with a unit-Gaussian signal and window.

    Raises ConventionError when a calibration ratio is not constant across the
    grid -- that signals an implementation bug, not a convention gap.
    """
    f = make_signal("gaussian", grid)
    g = f
    i0 = grid.index_of(0.0)
    k0 = grid.dual().index_of(0.0)

    Sp = spectrogram(f, g)
    conv = convolve_fields(tau_wigner(reverse(g), 1.0 - tau, r=r),
                           tau_wigner(f, tau, r=r))
    c = Sp.values[i0, k0] / conv.values[i0, k0]
    if abs(c.imag) > 1e-8 * abs(c):
        raise ConventionError(f"spectrogram calibration ratio is not real: {c}")
    c_spwig = float(c.real)
    dev = float(np.max(np.abs(Sp.values - c_spwig * conv.values)) / np.max(np.abs(Sp.values)))
    if dev > 1e-4:
        raise ConventionError(f"spectrogram/Wigner ratio varies over the grid: {dev:.2e}")

    fh = fourier_transform(f)
    gh = fourier_transform(g)
    B = stft(fh, gh)
    V = stft(f, g)
    lhs = np.abs(V.values[1:, :])
    mirrored = np.abs(B.values).T[1:][::-1]   # row j -> |V_gh fh(xi_k, -x_j)|
    fg_err = float(np.max(np.abs(lhs - mirrored / TWO_PI)))

    BJ1 = born_jordan(f, quadrature_nodes=bj_nodes, r=r)
    BJ2 = cohen_apply(_bj_kernel_raw(grid), f, r=r)
    cb = BJ1.values[i0, k0] / BJ2.values[i0, k0]
    c_bj = float(cb.real)
    bj_dev = float(np.max(np.abs(BJ1.values - c_bj * BJ2.values)) / np.max(np.abs(BJ1.values)))
    if bj_dev > 5e-3:
        raise ConventionError(f"Born-Jordan paths disagree beyond quadrature error: {bj_dev:.2e}")

    return ConventionRegistry(
        c_spwig=c_spwig, c_fundgabor_phase=True, c_bj_multiplier=c_bj,
        grid=grid, spwig_max_rel_dev=dev, fundgabor_max_abs_err=fg_err,
        bj_max_rel_dev=bj_dev,
    )


_REGISTRY: ConventionRegistry | None = None


def get_conventions() -> ConventionRegistry:
    """The registry, calibrated once on the default grid and then read-only."""
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = calibrate_conventions()
    return _REGISTRY


REPRESENTATION_NAMES = ("stft", "spectrogram", "rihaczek", "rihaczek*", "wigner",
                        "tau_wigner", "born_jordan", "cohen")


def make_representation(spec: str, f: SampledSignal,
                        g: SampledSignal | None = None, r: int = 4) -> PhaseSpaceField:
    """Representation selector for the CLI: `wigner`, `tau_wigner:0.25`,
    `cohen:<kernel-name>`, etc.  Window-based selectors default g to the unit
    Gaussian."""
    name, _, arg = spec.partition(":")
    if name in ("stft", "spectrogram") and g is None:
        g = make_signal("gaussian", f.grid)
    if name == "stft":
        return stft(f, g)
    if name == "spectrogram":
        return spectrogram(f, g)
    if name == "rihaczek":
        return rihaczek(f)
    if name == "rihaczek*":
        return rihaczek_star(f)
    if name == "wigner":
        return wigner(f, r=r)
    if name == "tau_wigner":
        return tau_wigner(f, float(arg), r=r)
    if name == "born_jordan":
        return born_jordan(f, r=r)
    if name == "cohen":
        kern = make_kernel(arg or "identity", f.grid)
        return cohen_apply(kern, f, r=r)
    raise ParameterError(f"unknown representation {spec!r}")


def make_kernel(spec: str, grid: GridSpec) -> CohenKernel:
    name, _, arg = spec.partition(":")
    if name == "identity":
        return identity_kernel(grid)
    if name == "born_jordan":
        return bj_kernel(grid)
    if name == "gauss_wigner":
        return gauss_wigner_kernel(grid)
    if name == "polynomial":
        return polynomial_kernel(grid)
    if name == "dirac_plus_gaussian":
        params = {}
        if arg:
            for part in arg.split(","):
                k, _, v = part.partition("=")
                params[k.strip()] = float(v)
        return dirac_plus_gaussian_kernel(grid, **params)
    raise ParameterError(f"unknown kernel {spec!r}")
