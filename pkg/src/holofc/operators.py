"""Finite-dimensional model operators, their resolvents, group orbits and
the spectral oracle.

Everything here is a dense complex matrix; the spectral decomposition is the
independent oracle against which every contour/quadrature route is checked.
All objects are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NonDiagonalizable, RegionViolation, SpectrumHit

# Eigenvector condition number beyond which the spectral route is refused.
SPECTRAL_COND_LIMIT = 1e6
# Scaled proximity threshold for declaring a resolvent point spectral.
SPECTRUM_HIT_RTOL = 1e-12


def _as_square_complex(entries) -> np.ndarray:
    a = np.array(entries, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"square matrix required, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise ValueError("matrix entries must be finite")
    return a


class MatrixOperator:
    """Dense complex square matrix with spectral bookkeeping."""

    def __init__(self, entries):
        self._a = _as_square_complex(entries)
        self._a.flags.writeable = False
        self._eigvals = None
        self._spectral = None

    @property
    def entries(self) -> np.ndarray:
        return self._a

    @property
    def dim(self) -> int:
        return self._a.shape[0]

    @classmethod
    def diagonal(cls, diag) -> "MatrixOperator":
        return cls(np.diag(np.asarray(diag, dtype=complex)))

    @classmethod
    def identity(cls, n: int) -> "MatrixOperator":
        return cls(np.eye(n, dtype=complex))

    def norm(self, p: float = 2) -> float:
        return operator_norm(self._a, p)

    def spectrum(self) -> np.ndarray:
        if self._eigvals is None:
            self._eigvals = np.linalg.eigvals(self._a)
            self._eigvals.flags.writeable = False
        return self._eigvals

    def spectral_radius(self) -> float:
        return float(np.max(np.abs(self.spectrum()))) if self.dim else 0.0

    def shifted(self, r: complex) -> "MatrixOperator":
        """A + r."""
        return MatrixOperator(self._a + r * np.eye(self.dim))

    def __repr__(self):
        return f"MatrixOperator(dim={self.dim})"


@dataclass(frozen=True)
class SpectralData:
    """Eigendecomposition A = V diag(lambda) V^-1 for diagonalizable A."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    inverse_eigenvectors: np.ndarray
    condition_number: float

    def apply(self, values) -> np.ndarray:
        """Assemble V diag(values) V^-1."""
        vals = np.asarray(values, dtype=complex)
        return (self.eigenvectors * vals) @ self.inverse_eigenvectors


def spectral_data(op: MatrixOperator, cond_limit: float = SPECTRAL_COND_LIMIT) -> SpectralData:
    """Eigendecomposition with a diagonalizability certificate.

    Raises NonDiagonalizable when the eigenvector basis is so ill-conditioned
    that V diag V^-1 fails to reconstruct the matrix (defective or nearly so).
    """
    if op._spectral is not None:
        return op._spectral
    lam, v = np.linalg.eig(op.entries)
    cond = float(np.linalg.cond(v))
    if not np.isfinite(cond) or cond > cond_limit:
        raise NonDiagonalizable(f"eigenvector condition number {cond:.3e}")
    vinv = np.linalg.inv(v)
    scale = max(1.0, float(np.linalg.norm(op.entries, 2)))
    recon = (v * lam) @ vinv
    err = np.linalg.norm(recon - op.entries, 2)
    if err > 1e-10 * cond * scale:
        raise NonDiagonalizable(f"reconstruction residual {err:.3e} (cond {cond:.3e})")
    sd = SpectralData(lam, v, vinv, cond)
    op._spectral = sd
    return sd


def is_diagonalizable(op: MatrixOperator) -> bool:
    try:
        spectral_data(op)
        return True
    except NonDiagonalizable:
        return False


def resolvent(op: MatrixOperator, lam: complex) -> np.ndarray:
    """(lam - A)^-1 by direct solve; rejects spectral points."""
    scale = max(float(np.max(np.abs(op.entries))), 1e-300)
    gap = float(np.min(np.abs(lam - op.spectrum())))
    if gap <= SPECTRUM_HIT_RTOL * scale:
        raise SpectrumHit(f"lambda={lam} within {gap:.3e} of the spectrum")
    n = op.dim
    return np.linalg.solve(lam * np.eye(n) - op.entries, np.eye(n, dtype=complex))


def resolvent_many(op: MatrixOperator, lams: np.ndarray) -> np.ndarray:
    """Stack of resolvents (k, n, n); no proximity guard (internal use)."""
    lams = np.asarray(lams, dtype=complex)
    n = op.dim
    shifted = lams[:, None, None] * np.eye(n) - op.entries[None, :, :]
    return np.linalg.solve(shifted, np.broadcast_to(np.eye(n, dtype=complex), shifted.shape))


@dataclass(frozen=True)
class GroupBounds:
    """Certified growth data for U(s) = exp(-isA).

    M and omega0 satisfy ||U(s)|| <= M cosh(omega0 s) on the sampling grid;
    theta_U is the group type (max |Im eigenvalue| when diagonalizable).
    grid_only marks bounds that were fitted rather than derived from spectra.
    """

    M: float
    omega0: float
    theta_U: float
    s_max: float
    grid_n: int
    grid_only: bool = False


class GroupModel:
    """Orbit map s -> exp(-isA) together with certified growth bounds."""

    def __init__(self, generator: MatrixOperator, bounds: GroupBounds | None = None):
        self.generator = generator
        self.bounds = bounds

    @property
    def dim(self) -> int:
        return self.generator.dim

    def __call__(self, s: float) -> np.ndarray:
        return group_at(self, s)

    def certified(self, s_max: float = 6.0, grid_n: int = 129) -> "GroupModel":
        return GroupModel(self.generator, estimate_group_bounds(self, s_max, grid_n))


def make_group(generator: MatrixOperator, s_max: float = 6.0, grid_n: int = 129) -> GroupModel:
    """Group model with bounds certified on a default grid."""
    return GroupModel(generator).certified(s_max, grid_n)


def group_at(g: GroupModel, s: float) -> np.ndarray:
    """U(s) = exp(-isA); spectral route when well-conditioned, expm otherwise."""
    a = g.generator
    try:
        sd = spectral_data(a)
    except NonDiagonalizable:
        return scipy.linalg.expm(-1j * s * a.entries)
    return sd.apply(np.exp(-1j * s * sd.eigenvalues))


def group_orbit(g: GroupModel, s_values: np.ndarray) -> np.ndarray:
    """Stack U(s_j) for many s; vectorized over the spectral route."""
    s_values = np.asarray(s_values, dtype=float)
    a = g.generator
    try:
        sd = spectral_data(a)
    except NonDiagonalizable:
        return np.stack([scipy.linalg.expm(-1j * s * a.entries) for s in s_values])
    phases = np.exp(-1j * np.outer(s_values, sd.eigenvalues))  # (k, n)
    return np.einsum("ij,kj,jl->kil", sd.eigenvectors, phases, sd.inverse_eigenvectors)


def estimate_group_bounds(
    g: GroupModel, s_max: float, grid_n: int, omega0: float | None = None
) -> GroupBounds:
    """Least grid constant M for ||U(s)|| <= M cosh(omega0 s).

    For diagonalizable generators theta_U = max |Im eigenvalue| and omega0
    defaults to it; otherwise both come from a log-growth fit on the grid and
    the bounds are flagged grid_only.
    """
    if s_max <= 0:
        raise ValueError("s_max must be positive")
    if grid_n < 16:
        raise ValueError("grid_n >= 16 required")
    s = np.linspace(-s_max, s_max, grid_n)
    norms = np.array([np.linalg.norm(u, 2) for u in group_orbit(g, s)])
    grid_only = False
    if omega0 is None:
        try:
            sd = spectral_data(g.generator)
            theta = float(np.max(np.abs(sd.eigenvalues.imag)))
            omega0 = theta
        except NonDiagonalizable:
            grid_only = True
            # slope of log ||U|| against |s| on the outer half of the grid
            mask = np.abs(s) >= s_max / 2
            slope = np.polyfit(np.abs(s[mask]), np.log(np.maximum(norms[mask], 1e-300)), 1)[0]
            theta = max(float(slope), 0.0)
            omega0 = theta
    else:
        try:
            sd = spectral_data(g.generator)
            theta = float(np.max(np.abs(sd.eigenvalues.imag)))
        except NonDiagonalizable:
            grid_only = True
            theta = omega0
        if omega0 < theta:
            raise ValueError(f"omega0={omega0} below group type estimate {theta}")
    m = float(np.max(norms / np.cosh(omega0 * s)))
    return GroupBounds(M=max(m, 1.0), omega0=float(omega0), theta_U=theta,
                       s_max=float(s_max), grid_n=int(grid_n), grid_only=grid_only)


def spectral_fc(sd: SpectralData, f) -> np.ndarray:
    """Oracle route: V diag(f(lambda_i)) V^-1.

    `f` is a Symbol (or any callable with an optional `region` attribute);
    eigenvalues must lie strictly inside the region when one is declared.
    """
    lam = sd.eigenvalues
    region = getattr(f, "region", None)
    if region is not None:
        inside = region.contains(lam)
        if not np.all(inside):
            bad = lam[~inside]
            raise RegionViolation(f"eigenvalues outside symbol region: {bad}")
    return sd.apply(f(lam))


# ---------------------------------------------------------------------------
# operator norms on C^n fibers


def operator_norm(mat: np.ndarray, p: float = 2, probes: int = 64, seed: int = 1297) -> float:
    """Operator norm of a matrix acting on (C^n, l^p).

    p in {1, 2, inf} is exact; other p is a probed lower bound (seeded, hence
    reproducible), documented as such in the calling reports.
    """
    mat = np.asarray(mat, dtype=complex)
    if p == 2:
        return float(np.linalg.norm(mat, 2))
    if p == 1:
        return float(np.max(np.sum(np.abs(mat), axis=0)))
    if p in (np.inf, float("inf")):
        return float(np.max(np.sum(np.abs(mat), axis=1)))
    rng = np.random.default_rng(seed)
    n = mat.shape[1]
    best = 0.0
    # basis vectors first: exact for diagonal-ish action, cheap lower bounds
    for j in range(n):
        e = np.zeros(n, dtype=complex)
        e[j] = 1.0
        best = max(best, _vec_pnorm(mat @ e, p))
    for _ in range(probes):
        x = rng.normal(size=n) + 1j * rng.normal(size=n)
        best = max(best, _vec_pnorm(mat @ x, p) / _vec_pnorm(x, p))
    return best


def _vec_pnorm(x: np.ndarray, p: float) -> float:
    if p in (np.inf, float("inf")):
        return float(np.max(np.abs(x)))
    return float(np.sum(np.abs(x) ** p) ** (1.0 / p))


# ---------------------------------------------------------------------------
# seeded generators and JSON interchange


def random_diagonalizable(
    seed: int,
    dim: int,
    strip_height: float = 0.3,
    real_spread: float = 2.0,
    cond_target: float = 30.0,
) -> MatrixOperator:
    """Seeded diagonalizable matrix with spectrum inside Strip(strip_height).

    The eigenvector basis is built with a controlled condition number so the
    spectral oracle stays trustworthy (cond <= cond_target, roughly).
    """
    rng = np.random.default_rng(np.uint64(seed))
    lam = (rng.uniform(-real_spread, real_spread, dim)
           + 1j * rng.uniform(-strip_height, strip_height, dim))
    q1, _ = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    q2, _ = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    sing = np.exp(rng.uniform(0.0, np.log(max(cond_target, 1.0 + 1e-9)), dim))
    sing = np.sort(sing)[::-1] / sing.max()
    v = q1 @ np.diag(sing) @ q2
    a = v @ np.diag(lam) @ np.linalg.inv(v)
    return MatrixOperator(a)


def random_negative_definite(seed: int, dim: int, scale: float = 2.0,
                             skew: float = 0.0) -> MatrixOperator:
    """Seeded A with spectrum on the negative real axis, optionally perturbed
    by a small skew part (cosine-generator corpus)."""
    rng = np.random.default_rng(np.uint64(seed))
    q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    d = -rng.uniform(0.2, scale, dim)
    a = q @ np.diag(d) @ q.T
    if skew:
        s = rng.normal(size=(dim, dim)) * skew
        a = a + (s - s.T) / 2
    return MatrixOperator(a)


def operator_to_json(op: MatrixOperator) -> dict:
    return {
        "dim": op.dim,
        "entries": [[{"re": float(z.real), "im": float(z.imag)} for z in row]
                    for row in op.entries],
    }


def operator_from_json(obj: dict) -> MatrixOperator:
    n = int(obj["dim"])
    rows = obj["entries"]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError("entries shape does not match dim")
    a = np.array([[complex(c["re"], c["im"]) for c in row] for row in rows])
    return MatrixOperator(a)
