"""Finite exponentially-weighted measures and their transforms.

A measure is a list of atoms plus a gridded density (uniform grid, trapezoid
quadrature). The declared weight `omega` certifies that the exponentially
weighted total variation integral is grid-finite; a tail flag marks densities
that have not decayed at the grid ends.

Also here: the sech Fourier pair, the deconvolution kernel phi, bounded
variation profiles on [-1,1] and their principal-value transforms (computed
in closed form through the complex sine integral, so they stay accurate on
the huge sampling grids used by the norm machinery).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from . import regions as rg
from .errors import NotEven, OrderViolation, StripViolation, WeightExceedsDeclared
from .special import sine_integral
from .symbols import Symbol

DEFAULT_GRID_POINTS = 2**15 + 1
TAIL_TOL = 1e-10


class ExpWeightedMeasure:
    """Atoms + gridded density with a declared exponential weight."""

    def __init__(self, atoms=(), grid: np.ndarray | None = None,
                 density: np.ndarray | None = None, omega: float = 0.0):
        self.atoms = tuple((float(s), complex(w)) for s, w in atoms)
        if (grid is None) != (density is None):
            raise ValueError("grid and density must be supplied together")
        if grid is not None:
            grid = np.asarray(grid, dtype=float)
            density = np.asarray(density, dtype=complex)
            if grid.shape != density.shape:
                raise ValueError("grid/density shape mismatch")
            if len(grid) >= 2:
                steps = np.diff(grid)
                if not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
                    raise ValueError("uniform grid required")
        self.grid = grid
        self.density = density
        self.omega = float(omega)
        self.tail_flag = self._tail_flag()

    # -- constructors -------------------------------------------------------

    @classmethod
    def delta(cls, s0: float = 0.0, weight: complex = 1.0, omega: float = 0.0):
        return cls(atoms=[(s0, weight)], omega=omega)

    @classmethod
    def from_atoms(cls, atoms, omega: float = 0.0):
        return cls(atoms=atoms, omega=omega)

    @classmethod
    def from_density(cls, fn, omega: float, S: float | None = None,
                     n: int = DEFAULT_GRID_POINTS, atoms=()):
        """Sample a density callable on the default grid for weight omega.

        S defaults to 30/omega (30 when omega = 0); the tail flag reports
        whether exp(omega S) |density(+-S)| stayed below 1e-10.
        """
        if S is None:
            S = 30.0 / omega if omega > 0 else 30.0
        grid = np.linspace(-S, S, n)
        return cls(atoms=atoms, grid=grid, density=np.asarray(fn(grid), dtype=complex),
                   omega=omega)

    # -- basics --------------------------------------------------------------

    @property
    def h(self) -> float:
        return float(self.grid[1] - self.grid[0]) if self.grid is not None else 0.0

    def _tail_flag(self) -> bool:
        if self.grid is None or len(self.grid) < 2:
            return False
        s_end = abs(self.grid[-1])
        edge = max(abs(self.density[0]), abs(self.density[-1]))
        return bool(edge * np.exp(self.omega * s_end) > TAIL_TOL)

    def support_radius(self) -> float:
        r = max((abs(s) for s, _ in self.atoms), default=0.0)
        if self.grid is not None:
            nz = np.abs(self.density) > 0
            if np.any(nz):
                r = max(r, float(np.max(np.abs(self.grid[nz]))))
        return r

    def map_weights(self, wfn) -> "ExpWeightedMeasure":
        """Pointwise reweighting s -> wfn(s) * (measure); caller sets omega."""
        atoms = [(s, w * complex(wfn(np.array([s]))[0])) for s, w in self.atoms]
        grid, density = self.grid, self.density
        if grid is not None:
            density = density * wfn(grid)
        m = ExpWeightedMeasure(atoms, grid, density, self.omega)
        return m

    def with_omega(self, omega: float) -> "ExpWeightedMeasure":
        return ExpWeightedMeasure(self.atoms, self.grid, self.density, omega)

    def reflected(self) -> "ExpWeightedMeasure":
        atoms = [(-s, w) for s, w in self.atoms]
        grid, density = self.grid, self.density
        if grid is not None:
            grid, density = -grid[::-1].copy(), density[::-1].copy()
        return ExpWeightedMeasure(atoms, grid, density, self.omega)

    def __repr__(self):
        gridinfo = "none" if self.grid is None else f"[{self.grid[0]:g},{self.grid[-1]:g}]x{len(self.grid)}"
        return f"ExpWeightedMeasure(atoms={len(self.atoms)}, grid={gridinfo}, omega={self.omega:g})"


def _trapz(values: np.ndarray, h: float, axis: int = 0):
    if values.shape[axis] < 2:
        return 0.0 * values.sum(axis=axis)
    first = np.take(values, 0, axis=axis)
    last = np.take(values, -1, axis=axis)
    return h * (values.sum(axis=axis) - 0.5 * (first + last))


def mw_norm(mu: ExpWeightedMeasure, omega: float) -> float:
    """Exponentially weighted total variation: sum + trapezoid integral."""
    if omega > mu.omega + 1e-12:
        raise WeightExceedsDeclared(f"omega={omega} > declared {mu.omega}")
    total = sum(abs(w) * np.exp(omega * abs(s)) for s, w in mu.atoms)
    if mu.grid is not None:
        total += float(_trapz(np.abs(mu.density) * np.exp(omega * np.abs(mu.grid)), mu.h).real)
    return float(total)


def fourier_stieltjes(mu: ExpWeightedMeasure, z) -> np.ndarray:
    """mu-hat(z) = int e^{-isz} mu(ds), holomorphic on Strip(mu.omega)."""
    z = np.asarray(z, dtype=complex)
    zf = np.atleast_1d(z)
    if np.any(np.abs(zf.imag) > mu.omega + 1e-12):
        raise StripViolation(f"|Im z| exceeds declared weight {mu.omega}")
    out = np.zeros(zf.shape, dtype=complex)
    for s, w in mu.atoms:
        out += w * np.exp(-1j * s * zf)
    if mu.grid is not None:
        # chunk the outer product to bound memory on long grids
        step = max(1, int(4e6 // max(len(mu.grid), 1)))
        for i in range(0, len(zf), step):
            zz = zf[i:i + step]
            kernel = np.exp(-1j * np.outer(mu.grid, zz))
            out[i:i + step] += _trapz(kernel * mu.density[:, None], mu.h)
    return out.reshape(z.shape) if z.shape else out[0]


def cosh_weight(mu: ExpWeightedMeasure, omega: float) -> ExpWeightedMeasure:
    """Pointwise cosh(omega s) weighting; new declared weight mu.omega - omega."""
    if omega > mu.omega + 1e-12:
        raise WeightExceedsDeclared(f"omega={omega} > declared {mu.omega}")
    out = mu.map_weights(lambda s: np.cosh(omega * s))
    return out.with_omega(max(mu.omega - omega, 0.0))


def tilt(mu: ExpWeightedMeasure, a: float) -> ExpWeightedMeasure:
    """e^{a s} mu(ds); declared weight shrinks by |a|."""
    if abs(a) > mu.omega + 1e-12:
        raise WeightExceedsDeclared(f"|a|={abs(a)} > declared {mu.omega}")
    out = mu.map_weights(lambda s: np.exp(a * s))
    return out.with_omega(max(mu.omega - abs(a), 0.0))


def modulate(mu: ExpWeightedMeasure, t: float) -> ExpWeightedMeasure:
    """e^{-i t s} mu(ds); transform shifts by t, weight unchanged."""
    return mu.map_weights(lambda s: np.exp(-1j * t * s))


def convolve(mu: ExpWeightedMeasure, nu: ExpWeightedMeasure) -> ExpWeightedMeasure:
    """Convolution; declared weight is the minimum of the two."""
    omega = min(mu.omega, nu.omega)
    atoms = [(s1 + s2, w1 * w2) for s1, w1 in mu.atoms for s2, w2 in nu.atoms]
    grids = [m.grid for m in (mu, nu) if m.grid is not None]
    if not grids:
        return ExpWeightedMeasure(atoms, omega=omega)
    h = min(float(g[1] - g[0]) for g in grids)
    S = sum(float(abs(g[-1])) for g in grids) + sum(
        m.support_radius() for m in (mu, nu) if m.grid is None)
    n = int(round(2 * S / h)) + 1
    grid = np.linspace(-S, S, n)
    hh = grid[1] - grid[0]
    density = np.zeros(n, dtype=complex)

    def resampled(m):
        re = np.interp(grid, m.grid, m.density.real, left=0.0, right=0.0)
        im = np.interp(grid, m.grid, m.density.imag, left=0.0, right=0.0)
        return re + 1j * im

    if mu.grid is not None and nu.grid is not None:
        a, b = resampled(mu), resampled(nu)
        full = np.convolve(a, b) * hh
        center = (len(full) - 1) // 2
        lo = center - (n - 1) // 2
        density += full[lo:lo + n]
    for other, gridded in ((nu, mu), (mu, nu)):
        if gridded.grid is None:
            continue
        for s0, w in other.atoms:
            re = np.interp(grid - s0, gridded.grid, gridded.density.real, left=0.0, right=0.0)
            im = np.interp(grid - s0, gridded.grid, gridded.density.imag, left=0.0, right=0.0)
            density += w * (re + 1j * im)
    return ExpWeightedMeasure(atoms, grid, density, omega)


# ---------------------------------------------------------------------------
# inverse transforms


def inverse_fourier_symbol(f: Symbol, alpha: float | None = None,
                           n: int = DEFAULT_GRID_POINTS) -> ExpWeightedMeasure:
    """Density g with g-hat = f, for quadratically decaying strip symbols.

    Uses the symbol's closed-form inverse transform when it carries one
    (rational residues, sech pair, Gaussians); otherwise a tail-corrected
    FFT inversion. Declared weight alpha defaults to 0.95 * strip width,
    capped below the symbol's actual decay rate when pole data is present.
    """
    from .symbols import require_decay
    require_decay(f)
    theta = f.region.theta
    decay = f.inverse_decay if f.inverse_decay is not None else theta
    if alpha is None:
        alpha = 0.95 * min(theta, decay)
    if f.inverse_fourier is not None:
        gap = decay - alpha
        if np.isfinite(gap):
            S = min(max(28.0 / max(gap, 1e-3), 30.0 / max(alpha, 1.0)), 4000.0)
        else:
            S = 30.0 / max(alpha, 1.0)
        n_eff = min(int(n * max(1.0, S / 30.0)), 2**18 + 1)
        grid = np.linspace(-S, S, n_eff)
        return ExpWeightedMeasure(grid=grid, density=f.inverse_fourier(grid), omega=alpha)
    return _numeric_inverse_fourier(f, alpha, n)


def _numeric_inverse_fourier(f: Symbol, alpha: float, n: int) -> ExpWeightedMeasure:
    """FFT inversion with a fitted 1/t^2 tail model (quadratic-decay symbols)."""
    T, m = 2048.0, 2**21
    t = -T + (2 * T / m) * np.arange(m)
    vals = f(t + 0j)
    # fit c/t^2 on the outer quarters and subtract before transforming
    right = t >= T / 2
    left = t <= -T / 2
    c_r = np.mean(vals[right] * t[right] ** 2)
    c_l = np.mean(vals[left] * t[left] ** 2)
    model = np.zeros_like(vals)
    model[t >= 1.0] = c_r / t[t >= 1.0] ** 2
    model[t <= -1.0] = c_l / t[t <= -1.0] ** 2
    resid = vals - model
    # g(s_k) = (1/2pi) sum resid(t_j) e^{i s_k t_j} dt  on FFT frequencies
    spec = np.fft.ifft(resid) * m  # sum_j resid_j e^{+2pi i jk/m}
    k = np.arange(m)
    s_grid = np.where(k <= m // 2, k, k - m) * (np.pi / T)
    phase = np.exp(1j * s_grid * (-T))
    g_fft = (2 * T / m) * phase * spec / (2 * np.pi)
    order = np.argsort(s_grid)
    s_sorted, g_sorted = s_grid[order], g_fft[order]
    S = 30.0 / max(alpha, 1.0)
    grid = np.linspace(-S, S, n)
    g = (np.interp(grid, s_sorted, g_sorted.real)
         + 1j * np.interp(grid, s_sorted, g_sorted.imag))
    g = g + _tail_model_transform(grid, c_r, c_l)
    return ExpWeightedMeasure(grid=grid, density=g, omega=alpha)


def _tail_model_transform(s: np.ndarray, c_r: complex, c_l: complex) -> np.ndarray:
    """(1/2pi) int of the 1/t^2 tail models against e^{ist}, in closed form.

    int_1^inf e^{ist}/t^2 dt = e^{is} + is * (-Ci(|s|) + i sign(s)(pi/2 - Si(|s|)))
    and the mirrored piece for t <= -1.
    """
    import scipy.special
    a = np.abs(s)
    si, ci = scipy.special.sici(a)
    ci = np.where(a == 0, 0.0, ci)  # weight is zero at s=0 anyway
    base = np.exp(1j * a) + 1j * a * (-ci + 1j * (np.pi / 2 - si))
    plus = np.where(s >= 0, base, np.conj(base))       # int_1^inf at |s|, sign via conj
    minus = np.conj(plus)                               # int_{-inf}^{-1} e^{ist}/t^2 dt
    return (c_r * plus + c_l * minus) / (2 * np.pi)


# ---------------------------------------------------------------------------
# the sech pair and the deconvolution kernel


def sech_transform_exact(omega: float, z) -> np.ndarray:
    """(pi/omega) / cosh((pi/2 omega) z): transform of sech(omega s)."""
    z = np.asarray(z, dtype=complex)
    return (np.pi / omega) / np.cosh(np.pi / (2 * omega) * z)


def sech_transform_quadrature(omega: float, z, S: float | None = None,
                              h: float | None = None) -> np.ndarray:
    """Trapezoid quadrature of int e^{-isz} sech(omega s) ds on a wide grid.

    Valid for |Im z| < omega; defaults resolve 1e-9 residuals at |Im z| up
    to 0.9 omega (the integrand decays like e^{-(omega - |Im z|)|s|}).
    """
    if S is None:
        S = 260.0 / omega
    if h is None:
        h = 0.05 / omega
    s = np.arange(-S, S + h / 2, h)
    z = np.asarray(z, dtype=complex)
    zf = np.atleast_1d(z)
    out = np.empty(zf.shape, dtype=complex)
    sech = 1.0 / np.cosh(omega * s)
    step = max(1, int(4e6 // len(s)))
    for i in range(0, len(zf), step):
        kernel = np.exp(-1j * np.outer(s, zf[i:i + step]))
        out[i:i + step] = _trapz(kernel * sech[:, None], h)
    return out.reshape(z.shape) if z.shape else out[0]


def transference_phi(omega: float, alpha: float):
    """Deconvolution kernel: phi with phi * sech(alpha .) = sech(omega .).

    phi(t) = (2 alpha/pi) cos(pi omega/2 alpha) cosh(omega t)
             / (cos(pi omega/alpha) + cosh(2 omega t)),  alpha > omega > 0.
    """
    if not (alpha > omega > 0):
        raise OrderViolation(f"need alpha > omega > 0, got alpha={alpha}, omega={omega}")
    c0 = (2 * alpha / np.pi) * np.cos(np.pi * omega / (2 * alpha))
    c1 = np.cos(np.pi * omega / alpha)

    def phi(t):
        t = np.asarray(t, dtype=float)
        return c0 * np.cosh(omega * t) / (c1 + np.cosh(2 * omega * t))

    return phi


def deconvolution_residual(omega: float, s_points, alpha: float | None = None,
                           S: float = None, h: float = None) -> np.ndarray:
    """| (phi * sech(alpha .))(s) - sech(omega s) | at the given points."""
    alpha = 2 * omega if alpha is None else alpha
    phi = transference_phi(omega, alpha)
    if S is None:
        S = 40.0 / omega
    if h is None:
        h = 0.01 / omega
    u = np.arange(-S, S + h / 2, h)
    phi_u = phi(u)
    s_points = np.atleast_1d(np.asarray(s_points, dtype=float))
    out = np.empty(s_points.shape)
    for i, s in enumerate(s_points):
        conv = _trapz(phi_u / np.cosh(alpha * (s - u)), h)
        out[i] = abs(conv - 1.0 / np.cosh(omega * s))
    return out


# ---------------------------------------------------------------------------
# bounded-variation profiles and principal-value transforms


@dataclass(frozen=True)
class BVFunction:
    """Even profile on [-1,1]: piecewise-constant pieces + optional piecewise
    linear absolutely-continuous part, both described on [0,1]."""

    edges: tuple = (1.0,)          # right endpoints of the constant pieces, ending at 1
    values: tuple = (1.0,)         # one value per piece
    ac_grid: tuple = ()            # optional AC knots in [0,1] (increasing)
    ac_values: tuple = ()
    even: bool = True

    def __post_init__(self):
        if not self.even:
            raise NotEven("only even profiles are supported")
        if len(self.edges) != len(self.values):
            raise ValueError("edges/values length mismatch")
        if abs(self.edges[-1] - 1.0) > 1e-12:
            raise ValueError("last edge must be 1")
        if len(self.ac_grid) != len(self.ac_values):
            raise ValueError("ac_grid/ac_values length mismatch")

    @classmethod
    def constant(cls, c: float = 1.0):
        return cls((1.0,), (float(c),))

    @classmethod
    def steps(cls, edges, values):
        return cls(tuple(float(e) for e in edges), tuple(float(v) for v in values))

    @classmethod
    def smooth(cls, fn, n: int = 257):
        s = np.linspace(0.0, 1.0, n)
        return cls((1.0,), (0.0,), tuple(s), tuple(float(fn(x)) for x in s))

    def __call__(self, s) -> np.ndarray:
        s = np.abs(np.asarray(s, dtype=float))
        out = np.zeros_like(s)
        lo = 0.0
        for e, v in zip(self.edges, self.values):
            out = np.where((s >= lo) & (s <= e), v, out)
            lo = e
        if self.ac_grid:
            out = out + np.interp(s, self.ac_grid, self.ac_values)
        return out

    def variation(self) -> float:
        """Var over [0,1]: piece jumps plus total variation of the AC part."""
        var = sum(abs(self.values[k + 1] - self.values[k])
                  for k in range(len(self.values) - 1))
        if self.ac_values:
            var += float(np.sum(np.abs(np.diff(self.ac_values))))
        return float(var)

    def value_at_one(self) -> float:
        v = self.values[-1]
        if self.ac_grid:
            v = v + np.interp(1.0, self.ac_grid, self.ac_values)
        return float(v)

    def l1_norm(self) -> float:
        """L^1 norm over (-1,1) (piecewise exact)."""
        total = 0.0
        lo = 0.0
        for e, v in zip(self.edges, self.values):
            total += abs(v) * (e - lo)
            lo = e
        if self.ac_grid:
            s = np.asarray(self.ac_grid)
            a = np.asarray(self.ac_values)
            total += float(np.trapz(np.abs(a), s))  # linear-interp magnitude, adequate
        return 2 * total


def _pc_cells(g: BVFunction):
    lo = 0.0
    for e, v in zip(g.edges, g.values):
        yield lo, e, v
        lo = e


def _ac_cells(g: BVFunction):
    for k in range(len(g.ac_grid) - 1):
        s0, s1 = g.ac_grid[k], g.ac_grid[k + 1]
        if s1 > s0:
            yield s0, s1, g.ac_values[k], g.ac_values[k + 1]


def _I1(a, b, z, small):
    """int_a^b sin(sz) ds."""
    out = np.where(small, z * (b**2 - a**2) / 2 - z**3 * (b**4 - a**4) / 24
                   + z**5 * (b**6 - a**6) / 720,
                   (np.cos(a * zs(z, small)) - np.cos(b * zs(z, small))) / zs(z, small))
    return out


def zs(z, small):
    return np.where(small, 1.0, z)  # avoid division warnings on the series branch


def _J0(a, b, z, small):
    """int_a^b cos(sz) ds."""
    return np.where(small, (b - a) - z**2 * (b**3 - a**3) / 6 + z**4 * (b**5 - a**5) / 120,
                    (np.sin(b * zs(z, small)) - np.sin(a * zs(z, small))) / zs(z, small))


def _J1(a, b, z, small):
    """int_a^b s cos(sz) ds."""
    zz = zs(z, small)
    direct = ((np.cos(b * zz) - np.cos(a * zz)) / zz**2
              + (b * np.sin(b * zz) - a * np.sin(a * zz)) / zz)
    series = (b**2 - a**2) / 2 - z**2 * (b**4 - a**4) / 8 + z**4 * (b**6 - a**6) / 144
    return np.where(small, series, direct)


_SMALL_Z = 1e-3


def pv_symbol(g: BVFunction, theta: float = 1.0) -> Symbol:
    """Transform of the first-order distribution carried by g(s)/s.

    f(z) = -2i int_0^1 sin(sz)/s g(s) ds, entire, odd, f(0) = 0; supplied with
    the exact derivative f'(z) = -2i int_0^1 cos(sz) g(s) ds. All integrals are
    closed forms in the (complex) sine integral, so evaluation stays accurate
    for arbitrarily large |Re z| on any strip of half-width <= ~6.
    """
    if not g.even:
        raise NotEven("pv_symbol needs an even profile")
    pc = list(_pc_cells(g))
    ac = list(_ac_cells(g))

    def fn(z):
        z = np.asarray(z, dtype=complex)
        total = np.zeros_like(z)
        for a, b, v in pc:
            if v != 0:
                total = total + v * (sine_integral(b * z) - sine_integral(a * z))
        small = np.abs(z) < _SMALL_Z
        for s0, s1, c0, c1 in ac:
            slope = (c1 - c0) / (s1 - s0)
            base = c0 - slope * s0
            if base != 0:
                total = total + base * (sine_integral(s1 * z) - sine_integral(s0 * z))
            if slope != 0:
                total = total + slope * _I1(s0, s1, z, small)
        return -2j * total

    def ghat(z):
        z = np.asarray(z, dtype=complex)
        small = np.abs(z) < _SMALL_Z
        total = np.zeros_like(z)
        for a, b, v in pc:
            if v != 0:
                total = total + v * _J0(a, b, z, small)
        for s0, s1, c0, c1 in ac:
            slope = (c1 - c0) / (s1 - s0)
            base = c0 - slope * s0
            if base != 0:
                total = total + base * _J0(s0, s1, z, small)
            if slope != 0:
                total = total + slope * _J1(s0, s1, z, small)
        return 2 * total

    return Symbol(rg.strip(theta), fn, deriv=lambda z: -1j * ghat(np.asarray(z, dtype=complex)),
                  metadata=f"pv_transform[{len(pc)}pc,{len(ac)}ac]", source=g)


def pv_even_transform(g: BVFunction, z) -> np.ndarray:
    """g-hat(z) = 2 int_0^1 cos(sz) g(s) ds (= i f'(z) for f = pv_symbol(g))."""
    f = pv_symbol(g)
    return 1j * f.deriv(np.asarray(z, dtype=complex))


@functools.lru_cache(maxsize=64)
def _sine_integral_strip_sup(theta_key: int) -> float:
    theta = theta_key / 1e6
    region = rg.strip(theta)
    pts = np.concatenate([region.boundary_points(4096), region.inset_curves(1024)])
    return float(np.max(np.abs(sine_integral(pts))))


def sine_integral_strip_sup(theta: float) -> float:
    """c'_theta: sampled sup of |int_0^1 sin(sz)/s ds| on Strip(theta)."""
    return _sine_integral_strip_sup(int(round(theta * 1e6)))


def bv_hinf1_bound(g: BVFunction, theta: float) -> float:
    """Explicit first-order norm bound 2(e^theta + c'_theta)(Var + g(1))."""
    budget = g.variation() + g.value_at_one()
    return float(2 * (np.exp(theta) + sine_integral_strip_sup(theta)) * budget)


def pv_pairing(g: BVFunction, phi, n: int = 4096) -> complex:
    """<PV - g(s)/s, phi> = int_0^1 g(s) (phi(s) - phi(-s))/s ds (quadrature)."""
    s = np.linspace(1e-9, 1.0, n)
    vals = g(s) * (phi(s) - phi(-s)) / s
    return complex(np.trapz(vals, s))
