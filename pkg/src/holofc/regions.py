"""Geometry of strips, sectors, double sectors, parabolas and Venturi regions.

All regions are open. Strips, parabolas and sectors are linked by the square
and exponential maps: Parabola(w) is the image of Strip(w) under z -> z^2 and
Sector(w) the image under z -> e^z; membership tests are written through those
maps so the equivalences hold by construction. Principal branches throughout,
cut on (-inf, 0].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

STRIP = "strip"
SECTOR = "sector"
DOUBLE_SECTOR = "double_sector"
PARABOLA = "parabola"
VENTURI = "venturi"
REAL_LINE = "real_line"

# boundary parameter grid: t = tan(u) compactifies the line
DEFAULT_BOUNDARY_N = 4096


@dataclass(frozen=True)
class Region:
    kind: str
    theta: float = 0.0  # strip/parabola half-width, sector/double-sector half-angle
    phi: float = 0.0    # venturi: double-sector half-angle (theta is the strip part)

    def __post_init__(self):
        if self.kind == STRIP and not self.theta > 0:
            raise ValueError("strip needs theta > 0")
        if self.kind == SECTOR and not (0 < self.theta <= np.pi):
            raise ValueError("sector needs theta in (0, pi]")
        if self.kind == DOUBLE_SECTOR and not (0 < self.theta < np.pi / 2):
            raise ValueError("double sector needs theta in (0, pi/2)")
        if self.kind == PARABOLA and not self.theta > 0:
            raise ValueError("parabola needs theta > 0")
        if self.kind == VENTURI and not (self.theta > 0 and 0 < self.phi < np.pi / 2):
            raise ValueError("venturi needs theta > 0 and phi in (0, pi/2)")

    # -- membership ---------------------------------------------------------

    def contains(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if self.kind == STRIP:
            return np.abs(z.imag) < self.theta
        if self.kind == PARABOLA:
            return np.abs(np.sqrt(z).imag) < self.theta
        if self.kind == SECTOR:
            return (z != 0) & (np.abs(np.angle(z)) < self.theta)
        if self.kind == DOUBLE_SECTOR:
            a = np.abs(np.angle(z))
            return (z != 0) & (np.minimum(a, np.pi - a) < self.theta)
        if self.kind == VENTURI:
            return strip(self.theta).contains(z) | double_sector(self.phi).contains(z)
        if self.kind == REAL_LINE:
            return z.imag == 0
        raise ValueError(self.kind)

    # -- sampling -----------------------------------------------------------

    def boundary_points(self, n: int = DEFAULT_BOUNDARY_N) -> np.ndarray:
        """Points on the region boundary, tan-compactified along each curve."""
        t = _tan_grid(n)
        if self.kind == STRIP:
            return np.concatenate([t + 1j * self.theta, t - 1j * self.theta])
        if self.kind == PARABOLA:
            return (np.concatenate([t + 1j * self.theta, t - 1j * self.theta])) ** 2
        if self.kind == SECTOR:
            r = _log_radius_grid(n)
            pts = [r * np.exp(1j * self.theta), r * np.exp(-1j * self.theta)]
            return np.concatenate(pts)
        if self.kind == DOUBLE_SECTOR:
            s = sector(self.theta).boundary_points(n)
            return np.concatenate([s, -s])
        if self.kind == VENTURI:
            cand = np.concatenate([
                strip(self.theta).boundary_points(n),
                double_sector(self.phi).boundary_points(n),
            ])
            return cand[~self.contains(cand)]
        if self.kind == REAL_LINE:
            return _tan_grid(n) + 0j
        raise ValueError(self.kind)

    def inset_curves(self, n: int = DEFAULT_BOUNDARY_N,
                     etas=(0.0, 0.5, 0.9, 0.99, 0.999)) -> np.ndarray:
        """Sampling curves pushed into the region (eta = 0 is the spine).

        Interior sup-sampling for norms whose integrands need a derivative:
        boundary values are approached but never evaluated on the boundary.
        """
        t = _tan_grid(n)
        curves = []
        if self.kind == STRIP:
            for eta in etas:
                for sgn in (1, -1) if eta else (1,):
                    curves.append(t + sgn * 1j * eta * self.theta)
        elif self.kind == PARABOLA:
            for eta in etas:
                for sgn in (1, -1) if eta else (1,):
                    curves.append((t + sgn * 1j * eta * self.theta) ** 2)
        elif self.kind in (SECTOR, DOUBLE_SECTOR):
            r = _log_radius_grid(n)
            for eta in etas:
                for sgn in (1, -1) if eta else (1,):
                    ray = r * np.exp(sgn * 1j * eta * self.theta)
                    curves.append(ray)
                    if self.kind == DOUBLE_SECTOR:
                        curves.append(-ray)
        elif self.kind == VENTURI:
            inner = np.concatenate([
                strip(self.theta).inset_curves(n, etas),
                double_sector(self.phi).inset_curves(n, etas),
            ])
            return inner[self.contains(inner)]
        elif self.kind == REAL_LINE:
            curves.append(t + 0j)
        else:
            raise ValueError(self.kind)
        return np.concatenate(curves)

    def distance_to_boundary(self, z) -> np.ndarray:
        """Distance from interior points to the boundary (exact per kind)."""
        z = np.asarray(z, dtype=complex)
        if self.kind == STRIP:
            return self.theta - np.abs(z.imag)
        if self.kind == PARABOLA:
            w = np.sqrt(z)
            # safe inscribed radius through the square map: a disc of radius
            # d around w stays in Strip(theta), and its image contains a disc
            # of radius d*max(2|w|-d, d/2) around z (the d/2 floor covers the
            # degenerate vertex where w ~ 0).
            d = self.theta - np.abs(w.imag)
            return d * np.maximum(2 * np.abs(w) - d, 0.5 * d)
        if self.kind == SECTOR:
            r = np.abs(z)
            gap = self.theta - np.abs(np.angle(z))
            return r * np.sin(np.minimum(gap, np.pi / 2))
        if self.kind == DOUBLE_SECTOR:
            a = np.abs(np.angle(z))
            gap = self.theta - np.minimum(a, np.pi - a)
            return np.abs(z) * np.sin(np.minimum(gap, np.pi / 2))
        if self.kind == VENTURI:
            return np.maximum(strip(self.theta).distance_to_boundary(z),
                              double_sector(self.phi).distance_to_boundary(z))
        raise ValueError(self.kind)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        obj = {"kind": self.kind}
        if self.kind != REAL_LINE:
            obj["theta"] = self.theta
        if self.kind == VENTURI:
            obj["phi"] = self.phi
        return obj


def region_from_json(obj: dict) -> Region:
    kind = obj["kind"]
    if kind == REAL_LINE:
        return real_line()
    if kind == VENTURI:
        return Region(VENTURI, theta=float(obj["theta"]), phi=float(obj["phi"]))
    return Region(kind, theta=float(obj["theta"]))


def strip(theta: float) -> Region:
    return Region(STRIP, theta=float(theta))


def sector(omega: float) -> Region:
    return Region(SECTOR, theta=float(omega))


def double_sector(omega: float) -> Region:
    return Region(DOUBLE_SECTOR, theta=float(omega))


def parabola(omega: float) -> Region:
    return Region(PARABOLA, theta=float(omega))


def venturi(phi: float, theta: float) -> Region:
    return Region(VENTURI, theta=float(theta), phi=float(phi))


def real_line() -> Region:
    return Region(REAL_LINE, theta=0.0)


def _tan_grid(n: int, half: float = np.pi / 2 * 0.9995) -> np.ndarray:
    """tan-compactified grid on the real line (avoids the poles of tan)."""
    u = np.linspace(-half, half, n)
    return np.tan(u)


def _log_radius_grid(n: int, decades: float = 8.0) -> np.ndarray:
    """Log-spaced radii covering [10^-decades, 10^decades]."""
    return np.logspace(-decades, decades, n)
