"""Independent numerical ground truth for the real-parameter regime.

Two solvers, deliberately unrelated to the closed forms:

* a symmetric finite-difference eigensolver for the linear nonrelativistic
  problem, Richardson-extrapolated over two grids;
* a shooting integrator for the full energy-nonlinear reduced equation,
  with bracketing and bisection on the far-boundary mismatch (bisection is
  unconditionally convergent, which no fixed-point linearization of the
  E-nonlinearity guarantees).

Only the Real regime is handled here; complex regimes are checked through
algebraic identities instead (see the spectra tests).
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from . import potentials
from ._kernels import frobenius_start, g_laurent_q1, rk4_sweep
from .errors import (
    NonConvergentError,
    NotConvergedError,
    PoleOnGridError,
    ShootingOverflowError,
    StepTooCoarseError,
    ValidationError,
)
from .potentials import MassConfig, PotentialParams, Regime

FROBENIUS_ORDER = 16
DECAY_EXPONENT = 16.0          # kappa * x_max at the adaptive refinement stage
X_MAX_CAP_ALPHA = 2000.0       # hard cap on alpha * x_max


@dataclass(frozen=True)
class EffectiveProblem:
    """Shooting setup for the reduced equation psi'' + g(x; E) psi = 0.

    g(x; E) = 2 mu [ (E - V(x)) + (V(x) - E)^2 / (2 m_tilde) ] with V taken
    from the potentials module (single source of truth). Defaults keep
    alpha * x_max >= 25 and alpha * h <= 0.01.
    """

    params: PotentialParams
    masses: MassConfig
    x_max: float = field(default=0.0)
    h: float = field(default=0.0)

    def __post_init__(self):
        if self.params.regime is not Regime.REAL:
            raise ValidationError("the oracle handles the Real regime only")
        alpha = self.params.alpha
        if self.x_max <= 0.0:
            object.__setattr__(self, "x_max", 25.0 / alpha)
        if self.h <= 0.0:
            object.__setattr__(self, "h", 0.01 / alpha)
        if self.h * alpha > 0.05:
            raise StepTooCoarseError(f"h * alpha = {self.h * alpha:.3g} > 0.05")
        if self.params.q > 1.0:
            raise PoleOnGridError("potential pole inside the integration domain for q > 1")

    def g_coefficients(self, energy: float):
        """(g0, g1, g2) of g = g0 + g1 r + g2 r^2, r = s/(1 - q s)."""
        mu, mt = self.masses.mu, self.masses.m_tilde
        v0 = self.params.v0
        g0 = 2.0 * mu * (energy + energy * energy / (2.0 * mt))
        g1 = 2.0 * mu * v0 * (1.0 + energy / mt)
        g2 = mu * v0 * v0 / mt
        return g0, g1, g2

    def g_values(self, energy: float, xs):
        """g(x; E) composed through potentials.evaluate, for cross-checks."""
        v = potentials._values(self.params, xs).real
        mu, mt = self.masses.mu, self.masses.m_tilde
        w = v - energy
        return 2.0 * mu * (-w + w * w / (2.0 * mt))

    def start_state(self, energy: float):
        """Initial (x0, psi, psi') honoring psi(0) = 0.

        For q = 1 the origin is a pole of the potential and the regular
        solution behaves like x^nu; the integration then starts from a
        Frobenius series evaluated at x0 = 0.5/alpha.
        """
        if self.params.q == 1.0:
            g0, g1, g2 = self.g_coefficients(energy)
            coeffs = g_laurent_q1(g0, g1, g2, self.params.alpha, FROBENIUS_ORDER)
            x0 = 0.5 / self.params.alpha
            try:
                u0, v0 = frobenius_start(coeffs, x0, FROBENIUS_ORDER)
            except ValueError as exc:
                raise NonConvergentError(
                    "supercritical attractive 1/x^2 tail at the origin; "
                    "the Dirichlet spectrum is not well defined") from exc
            return x0, u0, v0
        return 0.0, 0.0, 1.0


def fd_eigenvalues(params: PotentialParams, mu: float, count: int,
                   h: float = 0.0, x_max: float = 0.0, target: float = 1e-6):
    """Lowest eigenvalues of -psi''/(2 mu) + V psi = E psi, Dirichlet ends.

    Symmetric tridiagonal discretization on two grids (h and h/2) with
    Richardson extrapolation of the O(h^2) error. Raises NotConverged when
    the two-grid difference exceeds 10x the accuracy target.
    """
    if params.regime is not Regime.REAL:
        raise ValidationError("the oracle handles the Real regime only")
    if count < 1:
        raise ValidationError("count must be >= 1")
    alpha = params.alpha
    if x_max <= 0.0:
        x_max = 25.0 / alpha
    if h <= 0.0:
        h = 0.01 / alpha

    def eigs(step):
        npts = int(round(x_max / step))
        xs = step * np.arange(1, npts)
        v = potentials._values(params, xs)
        if np.max(np.abs(v.imag)) > 1e-12 * (1.0 + np.max(np.abs(v.real))):
            raise ValidationError("potential is not real on the grid")
        diag = 1.0 / (mu * step * step) + v.real
        off = np.full(npts - 2, -1.0 / (2.0 * mu * step * step))
        return eigvalsh_tridiagonal(diag, off, select="i", select_range=(0, count - 1))

    coarse = eigs(h)
    fine = eigs(h / 2.0)
    # |fine - coarse|/3 is the classical error estimate of the fine grid;
    # the extrapolated value below is better still
    estimate = np.max(np.abs(fine - coarse)) / 3.0
    if estimate > 10.0 * max(target, 1e-12) * max(1.0, np.max(np.abs(fine))):
        raise NotConvergedError("two-grid error estimate exceeds 10x the accuracy target")
    return list((4.0 * fine - coarse) / 3.0)


def _mismatch_batch(problem: EffectiveProblem, energies, backend=None):
    energies = np.atleast_1d(np.asarray(energies, dtype=float))
    n = energies.size
    g0s = np.empty(n)
    g1s = np.empty(n)
    x0s = np.empty(n)
    u0s = np.empty(n)
    v0s = np.empty(n)
    g2 = 0.0
    for i, e in enumerate(energies):
        g0s[i], g1s[i], g2 = problem.g_coefficients(e)
        x0s[i], u0s[i], v0s[i] = problem.start_state(e)
    nsteps = int(round((problem.x_max - x0s[0]) / problem.h))
    out = rk4_sweep(g0s, g1s, g2, problem.params.q, problem.params.alpha,
                    x0s, u0s, v0s, problem.h, nsteps, backend=backend)
    if not np.all(np.isfinite(out)):
        raise ShootingOverflowError("non-finite shooting mismatch")
    return out


def shooting_mismatch(params: PotentialParams, masses: MassConfig, energy: float,
                      h: float = 0.0, x_max: float = 0.0, backend=None) -> float:
    """psi(x_max) for the outward integration, rescaled by its running maximum."""
    problem = EffectiveProblem(params, masses, x_max=x_max, h=h)
    return float(_mismatch_batch(problem, [energy], backend=backend)[0])


def _bisect(problem, lo, hi, f_lo, backend, iters=90, xtol=1e-12):
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        f_mid = float(_mismatch_batch(problem, [mid], backend=backend)[0])
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo < xtol * max(1.0, abs(mid)):
            break
    return 0.5 * (lo + hi)


def salpeter_levels(params: PotentialParams, masses: MassConfig, window=None,
                    scan_points: int = 240, h: float = 0.0, x_max: float = 0.0,
                    backend=None, refine: bool = True):
    """Eigenvalues of the energy-nonlinear reduced equation inside the window.

    Scans the shooting mismatch, brackets its sign changes, bisects each
    bracket, then re-bisects with a domain extended to kappa * x_max >= 16
    so shallow levels are not shifted by the Dirichlet truncation. Returns
    the sorted roots.
    """
    if scan_points < 100:
        raise ValidationError("scan_points must be >= 100")
    mt = masses.m_tilde
    if window is None:
        edge = min(masses.total, 2.0 * mt)
        delta = 1e-8 * max(1.0, edge)
        window = (-edge + delta, -delta)
    lo, hi = window
    if not lo < hi < 0.0:
        raise ValidationError("window must satisfy lo < hi < 0")
    problem = EffectiveProblem(params, masses, x_max=x_max, h=h)
    energies = np.linspace(lo, hi, scan_points)
    values = _mismatch_batch(problem, energies, backend=backend)
    roots = []
    for i in range(scan_points - 1):
        if values[i] == 0.0:
            roots.append((energies[i], energies[i], energies[i + 1]))
            continue
        if np.sign(values[i]) * np.sign(values[i + 1]) < 0:
            root = _bisect(problem, energies[i], energies[i + 1], values[i], backend)
            roots.append((root, energies[i], energies[i + 1]))
    if not refine:
        return sorted(r for r, _, _ in roots)

    refined = []
    alpha = params.alpha
    for root, blo, bhi in roots:
        g0 = problem.g_coefficients(root)[0]
        kappa = np.sqrt(max(-g0, 1e-30))
        needed = DECAY_EXPONENT / kappa
        x_big = min(max(problem.x_max, needed), X_MAX_CAP_ALPHA / alpha)
        if x_big <= problem.x_max * (1.0 + 1e-12):
            refined.append(root)
            continue
        big = EffectiveProblem(params, masses, x_max=x_big, h=problem.h)
        width = max(4.0 * (bhi - blo), 1e-3 * abs(root), 1e-9)
        wlo, whi = root - width, min(root + width, hi)
        f_lo, f_hi = _mismatch_batch(big, [wlo, whi], backend=backend)
        attempts = 0
        while np.sign(f_lo) == np.sign(f_hi) and attempts < 4:
            width *= 4.0
            wlo, whi = root - width, min(root + width, hi)
            f_lo, f_hi = _mismatch_batch(big, [wlo, whi], backend=backend)
            attempts += 1
        if np.sign(f_lo) == np.sign(f_hi):
            refined.append(root)   # keep the coarse-domain estimate
            continue
        refined.append(_bisect(big, wlo, whi, float(f_lo), backend))
    return sorted(refined)


def mismatch_sweep(params: PotentialParams, masses: MassConfig, energies,
                   h: float = 0.0, x_max: float = 0.0, backend=None):
    """Batch mismatch evaluation (exposed for scans and the backend benchmark)."""
    problem = EffectiveProblem(params, masses, x_max=x_max, h=h)
    return _mismatch_batch(problem, energies, backend=backend)
