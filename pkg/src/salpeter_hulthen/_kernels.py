"""Fixed-step RK4 shooting kernels.

The sweep over trial energies is the only hot loop in the package. Two
interchangeable implementations exist:

* a numba @njit kernel (parallel over energies), used when numba imports
  and the environment does not say otherwise;
* a pure-numpy fallback that vectorizes the same arithmetic over the
  energy batch.

Selection: environment variable SALPETER_BACKEND in {"auto", "numba",
"numpy"} (default auto). SALPETER_THREADS caps the numba thread count
(0 or unset = auto). Both paths perform identical per-element arithmetic;
benchmarks/shooting_benchmark.py compares them.
"""

import math
import os
import warnings

import numpy as np

try:
    import numba
    from numba import njit, prange

    # stale TBB builds downgrade the threading layer with a warning at the
    # first parallel launch; the fallback layer is fine, keep stderr quiet
    warnings.filterwarnings("ignore", message=".*TBB.*",
                            category=numba.NumbaWarning)
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - environment without numba
    HAVE_NUMBA = False

OVERFLOW_GUARD = 1e100


def requested_backend() -> str:
    return os.environ.get("SALPETER_BACKEND", "auto").strip().lower()


def active_backend() -> str:
    """Resolve the backend actually used for the next sweep."""
    choice = requested_backend()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("SALPETER_BACKEND=numba but numba is not importable")
        return "numba"
    return "numba" if HAVE_NUMBA else "numpy"


def _apply_thread_cap():
    cap = os.environ.get("SALPETER_THREADS", "0")
    try:
        cap = int(cap)
    except ValueError:
        return
    if cap > 0 and HAVE_NUMBA:
        try:
            numba.set_num_threads(min(cap, numba.config.NUMBA_NUM_THREADS))
        except ValueError:
            pass


if HAVE_NUMBA:

    @njit(cache=True, fastmath=False)
    def _rk4_single(g0, g1, g2, q, alpha, x0, u0, v0, h, nsteps):
        u = u0
        v = v0
        x = x0
        peak = abs(u)
        s = math.exp(-alpha * x)
        r = s / (1.0 - q * s)
        g_lo = g0 + g1 * r + g2 * r * r
        for _ in range(nsteps):
            s = math.exp(-alpha * (x + 0.5 * h))
            r = s / (1.0 - q * s)
            g_mid = g0 + g1 * r + g2 * r * r
            s = math.exp(-alpha * (x + h))
            r = s / (1.0 - q * s)
            g_hi = g0 + g1 * r + g2 * r * r
            k1u = v
            k1v = -g_lo * u
            k2u = v + 0.5 * h * k1v
            k2v = -g_mid * (u + 0.5 * h * k1u)
            k3u = v + 0.5 * h * k2v
            k3v = -g_mid * (u + 0.5 * h * k2u)
            k4u = v + h * k3v
            k4v = -g_hi * (u + h * k3u)
            u = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
            v = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            x += h
            g_lo = g_hi
            au = abs(u)
            if au > peak:
                peak = au
            m = max(au, abs(v))
            if m > OVERFLOW_GUARD:
                u /= m
                v /= m
                peak /= m
        if peak == 0.0:
            return u
        return u / peak

    @njit(cache=True, parallel=True, fastmath=False)
    def _rk4_sweep_numba(g0s, g1s, g2, q, alpha, x0s, u0s, v0s, h, nsteps):
        out = np.empty(g0s.shape[0])
        for i in prange(g0s.shape[0]):
            out[i] = _rk4_single(g0s[i], g1s[i], g2, q, alpha,
                                 x0s[i], u0s[i], v0s[i], h, nsteps)
        return out


def _rk4_sweep_numpy(g0s, g1s, g2, q, alpha, x0s, u0s, v0s, h, nsteps):
    # same stepping, vectorized over the energy batch
    u = np.array(u0s, dtype=float)
    v = np.array(v0s, dtype=float)
    x = np.array(x0s, dtype=float)
    peak = np.abs(u)

    def g_at(xv):
        s = np.exp(-alpha * xv)
        r = s / (1.0 - q * s)
        return g0s + g1s * r + g2 * r * r

    g_lo = g_at(x)
    for _ in range(nsteps):
        g_mid = g_at(x + 0.5 * h)
        g_hi = g_at(x + h)
        k1u = v
        k1v = -g_lo * u
        k2u = v + 0.5 * h * k1v
        k2v = -g_mid * (u + 0.5 * h * k1u)
        k3u = v + 0.5 * h * k2v
        k3v = -g_mid * (u + 0.5 * h * k2u)
        k4u = v + h * k3v
        k4v = -g_hi * (u + h * k3u)
        u = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        x = x + h
        g_lo = g_hi
        np.maximum(peak, np.abs(u), out=peak)
        m = np.maximum(np.abs(u), np.abs(v))
        mask = m > OVERFLOW_GUARD
        if np.any(mask):
            u[mask] /= m[mask]
            v[mask] /= m[mask]
            peak[mask] /= m[mask]
    safe = np.where(peak == 0.0, 1.0, peak)
    return u / safe


def rk4_sweep(g0s, g1s, g2, q, alpha, x0s, u0s, v0s, h, nsteps, backend=None):
    """Dispatch the RK4 shooting sweep to the selected backend."""
    g0s = np.ascontiguousarray(g0s, dtype=float)
    g1s = np.ascontiguousarray(g1s, dtype=float)
    x0s = np.ascontiguousarray(x0s, dtype=float)
    u0s = np.ascontiguousarray(u0s, dtype=float)
    v0s = np.ascontiguousarray(v0s, dtype=float)
    chosen = backend or active_backend()
    if chosen == "numba":
        _apply_thread_cap()
        return _rk4_sweep_numba(g0s, g1s, float(g2), float(q), float(alpha),
                                x0s, u0s, v0s, float(h), int(nsteps))
    return _rk4_sweep_numpy(g0s, g1s, float(g2), float(q), float(alpha),
                            x0s, u0s, v0s, float(h), int(nsteps))


# ---------------------------------------------------------------------------
# Frobenius start for the singular origin at q = 1 (pole of the potential).

def _exp_ratio_taylor(n_terms: int) -> np.ndarray:
    """Taylor coefficients f_k of t/(e^t - 1)."""
    f = np.zeros(n_terms)
    f[0] = 1.0
    for n in range(2, n_terms + 1):
        acc = 0.0
        for m in range(2, n + 1):
            acc += f[n - m] / math.factorial(m)
        f[n - 1] = -acc
    return f


def g_laurent_q1(g0, g1, g2, alpha, order: int = 16) -> dict:
    """Laurent coefficients {j: G_j} of g(x) about x = 0 for q = 1.

    Uses 1/(e^{alpha x} - 1) = (1/(alpha x)) * sum f_k (alpha x)^k.
    """
    f = _exp_ratio_taylor(order + 3)
    r = {k - 1: f[k] * alpha ** (k - 1) for k in range(order + 3)}
    r2 = {}
    for ja, va in r.items():
        for jb, vb in r.items():
            j = ja + jb
            if -2 <= j <= order:
                r2[j] = r2.get(j, 0.0) + va * vb
    out = {}
    for j in range(-2, order + 1):
        out[j] = (g0 if j == 0 else 0.0) + g1 * r.get(j, 0.0) + g2 * r2.get(j, 0.0)
    return out


def frobenius_coefficients(g_coeffs: dict, order: int = 16):
    """(nu, a_k) of the regular solution psi = x^nu sum a_k x^k at the origin.

    nu is the larger indicial root of nu(nu-1) + G_{-2} = 0; requires the
    subcritical case 1 - 4 G_{-2} >= 0.
    """
    a_m2 = g_coeffs[-2]
    disc = 1.0 - 4.0 * a_m2
    if disc < 0:
        raise ValueError("supercritical inverse-square strength at the origin")
    nu = 0.5 * (1.0 + math.sqrt(disc))
    a = np.zeros(order + 1)
    a[0] = 1.0
    for k in range(1, order + 1):
        acc = 0.0
        for j in range(-1, k - 1):
            acc += g_coeffs.get(j, 0.0) * a[k - 2 - j]
        a[k] = -acc / (k * (k + 2.0 * nu - 1.0))
    return nu, a


def frobenius_values(g_coeffs: dict, xs, order: int = 16):
    """Regular-solution values on a grid inside the series radius."""
    nu, a = frobenius_coefficients(g_coeffs, order)
    xs = np.asarray(xs, dtype=float)
    ks = np.arange(order + 1)
    return xs**nu * np.sum(a * xs[:, None] ** ks, axis=1)


def frobenius_start(g_coeffs: dict, x0: float, order: int = 16):
    """(psi, psi') of the regular solution at x0, from the power-series ansatz."""
    nu, a = frobenius_coefficients(g_coeffs, order)
    ks = np.arange(order + 1)
    powers = x0 ** ks
    u = x0 ** nu * float(np.sum(a * powers))
    v = x0 ** (nu - 1.0) * float(np.sum(a * (nu + ks) * powers))
    return u, v
