"""Symbols: holomorphic functions on declared regions.

A Symbol bundles a vectorized evaluation map with its region, an optional
closed-form derivative and optional analytic extras (closed-form inverse
Fourier transform, pole data) that the calculus engines exploit when present.
When no derivative is supplied it is produced by Cauchy-circle quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import regions as rg
from .errors import DecayClassRequired

QUADRATIC_DECAY = "quadratic"

_CAUCHY_NODES = 32
_CAUCHY_RADIUS_FACTOR = 0.4


@dataclass(frozen=True)
class Symbol:
    region: rg.Region
    fn: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray] | None = None
    decay_class: str | None = None
    metadata: str = ""
    # optional analytic extras (not part of equality/ordering semantics)
    inverse_fourier: Callable[[np.ndarray], np.ndarray] | None = field(
        default=None, compare=False)
    inverse_decay: float | None = field(default=None, compare=False)
    poles: tuple = field(default=(), compare=False)  # (location, mult, coef)
    source: object = field(default=None, compare=False)

    def __call__(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return np.asarray(self.fn(z), dtype=complex)

    def derivative(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if self.deriv is not None:
            return np.asarray(self.deriv(z), dtype=complex)
        return cauchy_derivative(self, z)

    def shifted(self, r: complex) -> "Symbol":
        """z -> f(z + r); same region (strips are shift invariant)."""
        f, df = self.fn, self.deriv
        return Symbol(
            region=self.region,
            fn=lambda z: f(z + r),
            deriv=None if df is None else (lambda z: df(z + r)),
            decay_class=self.decay_class,
            metadata=f"({self.metadata})shift[{r}]",
        )

    def __mul__(self, other: "Symbol") -> "Symbol":
        f, g = self.fn, other.fn
        df, dg = self.deriv, other.deriv
        deriv = None
        if df is not None and dg is not None:
            deriv = lambda z: df(z) * g(z) + f(z) * dg(z)  # noqa: E731
        decay = self.decay_class or other.decay_class
        return Symbol(self.region, lambda z: f(z) * g(z), deriv, decay,
                      metadata=f"({self.metadata})*({other.metadata})")


def cauchy_derivative(f: Symbol, z: np.ndarray, nodes: int = _CAUCHY_NODES) -> np.ndarray:
    """f'(z) by trapezoid on a Cauchy circle inside the region.

    Radius 0.4 * dist(z, boundary); spectrally accurate for holomorphic f,
    no step-size tuning.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    r = _CAUCHY_RADIUS_FACTOR * f.region.distance_to_boundary(z)
    if np.any(r <= 0):
        raise ValueError("Cauchy derivative requested on or outside the boundary")
    ang = np.exp(2j * np.pi * np.arange(nodes) / nodes)
    pts = z[..., None] + r[..., None] * ang  # (..., nodes)
    vals = f(pts.ravel()).reshape(pts.shape)
    return np.sum(vals / ang, axis=-1) / (nodes * r)


def check_quadratic_decay(f: Symbol, scale: float = 1e4) -> bool:
    """|f(z)| |z|^2 bounded along the region spine at large |Re z| (sampled)."""
    t = np.array([1.0, 2.0, 4.0, 8.0]) * scale
    t = np.concatenate([t, -t])
    vals = np.abs(f(t + 0j)) * t * t
    return bool(np.all(np.isfinite(vals)) and np.max(vals) < 1e6)


# ---------------------------------------------------------------------------
# builtin catalogue


def const(c: complex, region: rg.Region) -> Symbol:
    return Symbol(region, lambda z: np.full_like(z, c, dtype=complex),
                  lambda z: np.zeros_like(z, dtype=complex), metadata=f"const[{c}]")


def exp_line(s: float, region: rg.Region) -> Symbol:
    """z -> exp(-i s z); bounded on every horizontal strip."""
    return Symbol(region, lambda z: np.exp(-1j * s * z),
                  lambda z: -1j * s * np.exp(-1j * s * z), metadata=f"exp_line[s={s}]")


def rational(poles, region: rg.Region, const_term: complex = 0.0) -> Symbol:
    """f(z) = const_term + sum coef / (loc - z)^mult.

    Decay class is detected: quadratic iff the constant term vanishes and the
    simple-pole coefficients cancel. The exact inverse Fourier transform lives
    on the symbol (residue formula), which feeds the Phillips route.
    """
    poles = tuple((complex(loc), int(m), complex(c)) for loc, m, c in poles)

    def fn(z):
        out = np.full_like(z, complex(const_term), dtype=complex)
        for loc, m, c in poles:
            out = out + c / (loc - z) ** m
        return out

    def deriv(z):
        out = np.zeros_like(z, dtype=complex)
        for loc, m, c in poles:
            out = out + m * c / (loc - z) ** (m + 1)
        return out

    simple_sum = sum(c for _, m, c in poles if m == 1)
    decay = QUADRATIC_DECAY if (const_term == 0 and abs(simple_sum) < 1e-14) else None

    def inv_fourier(s):
        # residue route for g(s) = (1/2pi) int f(t) e^{ist} dt: close the
        # contour upward for s > 0 (poles with Im > 0) and downward for s < 0.
        s = np.asarray(s, dtype=float)
        out = np.zeros(s.shape, dtype=complex)
        for loc, m, c in poles:
            contrib = (1j * c * (-1.0) ** m * (1j * s) ** (m - 1)
                       * np.exp(1j * s * loc) / _factorial(m - 1))
            if loc.imag > 0:
                out = out + np.where(s > 0, contrib, 0.0)
            elif loc.imag < 0:
                out = out - np.where(s < 0, contrib, 0.0)
            else:
                raise ValueError("rational inverse transform needs poles off the real axis")
        return out

    desc = "+".join(f"{c}/({loc}-z)^{m}" for loc, m, c in poles)
    return Symbol(region, fn, deriv, decay, metadata=f"rational[{desc}]",
                  inverse_fourier=inv_fourier if decay else None,
                  inverse_decay=min(abs(loc.imag) for loc, _, _ in poles) if poles else None,
                  poles=poles)


def elementary(lam: complex, region: rg.Region) -> Symbol:
    """(lam - z)^-1, the elementary rational symbol."""
    return rational([(lam, 1, 1.0)], region)


def tau_n(n: float, region: rg.Region) -> Symbol:
    """in/(in - z): the regularizing family converging to 1 on compacts."""
    return rational([(1j * n, 1, 1j * n)], region)


def tau_n_squared(n: float, region: rg.Region) -> Symbol:
    """[in/(in - z)]^2; quadratic decay, so contour-ready."""
    return rational([(1j * n, 2, -n * n)], region)


def cosh_pair(omega: float, region: rg.Region) -> Symbol:
    """(pi/omega) / cosh((pi/2 omega) z): Fourier transform of sech(omega s).

    Holomorphic on Strip(omega); supplied with its exact inverse transform.
    """
    a = np.pi / (2 * omega)

    def fn(z):
        return (np.pi / omega) / np.cosh(a * z)

    def deriv(z):
        return -(np.pi / omega) * a * np.sinh(a * z) / np.cosh(a * z) ** 2

    return Symbol(region, fn, deriv, QUADRATIC_DECAY,
                  metadata=f"cosh_pair[omega={omega}]",
                  inverse_fourier=lambda s: 1.0 / np.cosh(omega * np.asarray(s)),
                  inverse_decay=omega)


def gauss_decay(a: float, region: rg.Region) -> Symbol:
    """exp(-a z^2); superexponential decay along strips, Gaussian inverse."""
    return Symbol(region, lambda z: np.exp(-a * z * z),
                  lambda z: -2 * a * z * np.exp(-a * z * z),
                  QUADRATIC_DECAY, metadata=f"gauss_decay[a={a}]",
                  inverse_fourier=lambda s: np.exp(-np.asarray(s) ** 2 / (4 * a))
                  / (2 * np.sqrt(np.pi * a)),
                  inverse_decay=np.inf)


def indicator_smoothed(a: float, b: float, eps: float, region: rg.Region) -> Symbol:
    """Smoothed indicator of [a, b] via tanh ramps of width eps.

    Holomorphic on Strip(theta) for theta < eps * pi/2 (tanh poles).
    """
    if region.kind == rg.STRIP and region.theta >= eps * np.pi / 2:
        raise ValueError("strip too wide for the tanh smoothing width")

    def fn(z):
        return 0.5 * (np.tanh((z - a) / eps) - np.tanh((z - b) / eps))

    def deriv(z):
        return 0.5 / eps * (1 / np.cosh((z - a) / eps) ** 2
                            - 1 / np.cosh((z - b) / eps) ** 2)

    return Symbol(region, fn, deriv, metadata=f"indicator_smoothed[{a},{b},eps={eps}]")


def imag_power(a: float, region: rg.Region) -> Symbol:
    """z^{ia} (principal branch), bounded on sectors."""
    return Symbol(region, lambda z: np.exp(1j * a * np.log(z)),
                  lambda z: 1j * a * np.exp(1j * a * np.log(z)) / z,
                  metadata=f"imag_power[a={a}]")


def moebius(k: float, region: rg.Region) -> Symbol:
    """z/(k + z), bounded on sectors for k > 0."""
    return Symbol(region, lambda z: z / (k + z),
                  lambda z: k / (k + z) ** 2, metadata=f"moebius[k={k}]")


def sector_regularizer(region: rg.Region) -> Symbol:
    """z/(1+z)^2: order-one decay at 0 and infinity on sectors."""
    return Symbol(region, lambda z: z / (1 + z) ** 2,
                  lambda z: (1 - z) / (1 + z) ** 3, metadata="sector_regularizer")


# ---------------------------------------------------------------------------
# pullbacks


def square_pullback(f: Symbol) -> Symbol:
    """f(z^2) on the strip of the same parameter as f's parabola."""
    if f.region.kind != rg.PARABOLA:
        raise ValueError("square_pullback needs a parabola symbol")
    df = f.deriv
    return Symbol(
        region=rg.strip(f.region.theta),
        fn=lambda z: f.fn(z * z),
        deriv=None if df is None else (lambda z: 2 * z * df(z * z)),
        decay_class=None,
        metadata=f"({f.metadata})osq",
    )


def square_pushforward(q: Symbol, omega: float) -> Symbol:
    """f(w) := q(sqrt(w)) for even q on Strip(omega); lives on Parabola(omega)."""
    dq = q.deriv
    return Symbol(
        region=rg.parabola(omega),
        fn=lambda w: q.fn(np.sqrt(w)),
        deriv=None if dq is None else (lambda w: dq(np.sqrt(w)) / (2 * np.sqrt(w))),
        metadata=f"({q.metadata})osqrt",
    )


def log_pullback(f: Symbol) -> Symbol:
    """f(e^z) on the strip matching f's sector half-angle."""
    if f.region.kind != rg.SECTOR:
        raise ValueError("log_pullback needs a sector symbol")
    df = f.deriv
    return Symbol(
        region=rg.strip(f.region.theta),
        fn=lambda z: f.fn(np.exp(z)),
        deriv=None if df is None else (lambda z: np.exp(z) * df(np.exp(z))),
        metadata=f"({f.metadata})oexp",
    )


def log_pushforward(q: Symbol, phi: float) -> Symbol:
    """f(w) := q(log w) on Sector(phi) for q on Strip(phi)."""
    dq = q.deriv
    return Symbol(
        region=rg.sector(phi),
        fn=lambda w: q.fn(np.log(w)),
        deriv=None if dq is None else (lambda w: dq(np.log(w)) / w),
        metadata=f"({q.metadata})olog",
    )


def require_decay(f: Symbol):
    if f.decay_class != QUADRATIC_DECAY:
        raise DecayClassRequired(f"symbol {f.metadata!r} lacks quadratic decay")


def _factorial(k: int) -> float:
    out = 1.0
    for i in range(2, k + 1):
        out *= i
    return out
