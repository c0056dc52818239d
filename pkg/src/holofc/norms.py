"""Sampled symbol norms: sup norms, first-order strip norms, logarithmic
sector norms, Mikhlin constants, and region-embedding ratios.

Every reported value is the maximum over a declared finite grid and therefore
a lower bound of the true supremum (lower_bound_flag). For bounded holomorphic
symbols the boundary (or near-boundary inset curves) suffices by the maximum
principle; interior samples are kept as a safety net.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import regions as rg
from .errors import NonFiniteSample, SectorRequired
from .symbols import Symbol, log_pullback, square_pullback

DEFAULT_GRID_N = 4096


@dataclass(frozen=True)
class NormReport:
    value: float
    grid_spec: str
    attained_at: complex
    lower_bound_flag: bool = True
    diverged: bool = False


@dataclass(frozen=True)
class EmbeddingReport:
    ratio: float
    numerator: NormReport      # sup |z f'(z)| on the inner region
    denominator: NormReport    # sup |f| on the outer region


@dataclass(frozen=True)
class TailReport:
    bounded: bool
    right_limit_defect: float  # sup |f(z)-a| |z| on sampled right rays
    left_limit_defect: float
    hinf1: NormReport | None   # on the requested smaller strip, when bounded


def _finite_or_raise(vals: np.ndarray, what: str):
    if not np.all(np.isfinite(vals)):
        raise NonFiniteSample(f"non-finite sample in {what}")


def _report(vals: np.ndarray, pts: np.ndarray, spec: str) -> NormReport:
    k = int(np.argmax(vals))
    return NormReport(float(vals[k]), spec, complex(pts[k]))


def hinf_norm(f: Symbol, grid_n: int = DEFAULT_GRID_N) -> NormReport:
    """Sampled sup of |f| over boundary curves plus interior spot checks."""
    pts = np.concatenate([f.region.boundary_points(grid_n),
                          f.region.inset_curves(grid_n // 4, etas=(0.0, 0.5, 0.9))])
    vals = np.abs(f(pts))
    _finite_or_raise(vals, f"hinf_norm of {f.metadata}")
    return _report(vals, pts, f"boundary+interior n={grid_n}")


def hinf1_norm(f: Symbol, grid_n: int = DEFAULT_GRID_N) -> NormReport:
    """Sampled sup of |f(z)| + |z f'(z)| on a strip (or parabola, through the
    square map: |w f'(w)| = |z d/dz f(z^2)| / 2)."""
    if f.region.kind == rg.PARABOLA:
        q = square_pullback(f)
        return _hinf1_strip(q, grid_n, half_weight=True,
                            spec=f"parabola-pullback n={grid_n}")
    if f.region.kind != rg.STRIP:
        raise ValueError("hinf1_norm needs a strip or parabola symbol")
    return _hinf1_strip(f, grid_n, spec=f"strip-inset n={grid_n}")


def _hinf1_strip(f: Symbol, grid_n: int, half_weight: bool = False,
                 spec: str = "") -> NormReport:
    pts = f.region.inset_curves(grid_n)
    w = 0.5 if half_weight else 1.0
    vals = np.abs(f(pts)) + w * np.abs(pts * f.derivative(pts))
    _finite_or_raise(vals, f"hinf1_norm of {f.metadata}")
    return _report(vals, pts, spec)


def hinflog_norm(f: Symbol, grid_n: int = DEFAULT_GRID_N) -> NormReport:
    """Sampled sup of |f(z)| + |z log(z) f'(z)| on a sector (principal log)."""
    if f.region.kind != rg.SECTOR:
        raise SectorRequired("hinflog_norm needs a sector symbol")
    pts = f.region.inset_curves(grid_n)
    vals = np.abs(f(pts)) + np.abs(pts * np.log(pts) * f.derivative(pts))
    _finite_or_raise(vals, f"hinflog_norm of {f.metadata}")
    return _report(vals, pts, f"sector-inset n={grid_n}")


def mikhlin_constant(m: Symbol, grid_n: int = DEFAULT_GRID_N,
                     decades: float = 8.0) -> NormReport:
    """c_m = sup |m(t)| + sup |t m'(t)| over a log-spaced real grid.

    Derivatives use the symbol's own derivative when present, otherwise
    central differences with h = 1e-6 (1 + |t|). If |t m'| is still climbing
    at the grid edge the report is flagged diverged.
    """
    t = np.logspace(-decades, decades, grid_n)
    t = np.concatenate([-t[::-1], t])
    mv = np.abs(m(t + 0j))
    if m.deriv is not None:
        dv = m.derivative(t + 0j)
    else:
        h = 1e-6 * (1 + np.abs(t))
        dv = (m(t + h + 0j) - m(t - h + 0j)) / (2 * h)
    tdv = np.abs(t * dv)
    _finite_or_raise(mv, "mikhlin |m|")
    _finite_or_raise(tdv, "mikhlin |t m'|")
    k0, k1 = int(np.argmax(mv)), int(np.argmax(tdv))
    value = float(mv[k0] + tdv[k1])
    at = complex(t[k1])
    # divergence heuristic: sup |t m'| attained at the grid edge and still
    # growing across the last decade
    edge = (k1 <= grid_n // 16) or (k1 >= len(t) - 1 - grid_n // 16)
    last_decade = tdv[-grid_n // 8:]
    growing = bool(last_decade[-1] > 2.0 * last_decade[0] > 0)
    return NormReport(value, f"log grid 1e-{decades:g}..1e{decades:g} n={2*grid_n}",
                      at, True, diverged=bool(edge and growing))


def venturi_embedding_check(f: Symbol, inner: rg.Region,
                            grid_n: int = DEFAULT_GRID_N) -> EmbeddingReport:
    """sup |z f'(z)| on the smaller region over sup |f| on the larger one.

    A per-instance lower bound for the embedding constant; never a claim
    about the universal one.
    """
    denom = hinf_norm(f, grid_n)
    pts = inner.inset_curves(grid_n)
    vals = np.abs(pts * f.derivative(pts))
    _finite_or_raise(vals, "embedding numerator")
    num = _report(vals, pts, f"inner-inset n={grid_n}")
    ratio = num.value / denom.value if denom.value > 0 else 0.0
    return EmbeddingReport(ratio, num, denom)


def tail_class_check(f: Symbol, a: complex, b: complex, theta: float | None = None,
                     grid_n: int = 1024) -> TailReport:
    """Check |f(z)-a| = O(1/z) to the right and |f(z)-b| = O(1/z) to the left.

    When both sampled products |f-a||z|, |f-b||z| stay bounded, reports the
    first-order strip norm on Strip(theta) (default 0.8 * the region width).
    """
    if f.region.kind != rg.STRIP:
        raise ValueError("tail_class_check needs a strip symbol")
    omega = f.region.theta
    theta = 0.8 * omega if theta is None else theta
    t = np.logspace(1, 7, grid_n)
    heights = np.array([0.0, 0.5, -0.5]) * theta
    right = (t[:, None] + 1j * heights[None, :]).ravel()
    left = -right
    dr = np.abs((f(right) - a) * right)
    dl = np.abs((f(left) - b) * left)
    bounded = bool(np.all(np.isfinite(dr)) and np.all(np.isfinite(dl))
                   and _tail_bounded(dr) and _tail_bounded(dl))
    norm = None
    if bounded:
        g = Symbol(rg.strip(theta), f.fn, f.deriv, metadata=f"({f.metadata})|tail")
        norm = hinf1_norm(g)
    return TailReport(bounded, float(np.max(dr)), float(np.max(dl)), norm)


def _tail_bounded(vals: np.ndarray) -> bool:
    # growth across the sampled decades signals an unbounded tail
    n = len(vals)
    head = np.max(vals[: n // 4]) if n >= 4 else np.max(vals)
    tail = np.max(vals[-n // 4:])
    return tail <= 4.0 * max(head, 1e-12)


def hinflog_pullback_match(f: Symbol, grid_n: int = DEFAULT_GRID_N) -> tuple[float, float]:
    """(hinflog_norm(f), hinf1_norm(f o exp)) — isometric by the log map."""
    a = hinflog_norm(f, grid_n).value
    b = hinf1_norm(log_pullback(f), grid_n).value
    return a, b
