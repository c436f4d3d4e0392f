"""Jacobi polynomials with complex parameters, Gauss 2F1, and the Beta function.

Everything here works over complex parameters, which the orthodox library
routines do not cover. Gamma itself is delegated to scipy's complex
implementation (Lanczos-class accuracy, better than 1e-12 on the strip the
normalization integrals need).
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.special import gamma as _scipy_gamma
from scipy.special import rgamma as _scipy_rgamma

from .errors import NonConvergentError, ParameterPoleError, ValidationError

_INT_TOL = 1e-12


def _nonpos_int_order(z) -> int | None:
    """Return m >= 0 when z is (numerically) the nonpositive integer -m."""
    z = complex(z)
    if abs(z.imag) > _INT_TOL * (1.0 + abs(z)):
        return None
    r = round(z.real)
    if r > 0 or abs(z.real - r) > _INT_TOL * (1.0 + abs(z)):
        return None
    return -r


def gamma_fn(z) -> complex:
    """Gamma of a complex argument; raises on nonpositive-integer poles."""
    if _nonpos_int_order(z) is not None:
        raise ParameterPoleError(f"Gamma pole at {z}")
    return complex(_scipy_gamma(complex(z)))


def beta_fn(x, y) -> complex:
    """B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y), with B(x, 1) = 1/x exact."""
    x, y = complex(x), complex(y)
    for arg in (x, y):
        if _nonpos_int_order(arg) is not None:
            raise ParameterPoleError(f"Beta pole at argument {arg}")
    if y == 1:
        return 1.0 / x
    return gamma_fn(x) * gamma_fn(y) / gamma_fn(x + y)


def _series_sum(a, b, c, z, tol, max_terms):
    """Direct power series with a term-ratio tail bound stopping rule."""
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    term = 1.0 + 0j
    total = term
    bound_floor = 2.0 * (abs(a) + abs(b) + abs(c)) + 10.0
    for k in range(max_terms):
        term = term * (a + k) * (b + k) * z / ((c + k) * (k + 1.0))
        total += term
        if k >= bound_floor:
            denom = (k + 2.0) * max(k + 2.0 - abs(c), 1.0)
            ratio_bound = abs(z) * (k + 2.0 + abs(a)) * (k + 2.0 + abs(b)) / denom
            if ratio_bound < 1.0:
                tail = abs(term) * ratio_bound / (1.0 - ratio_bound)
                if tail < tol * max(abs(total), 1e-300):
                    return total
    raise NonConvergentError("2F1 series did not meet the tail bound")


def _terminating_sum(a, b, c, z, n_stop) -> complex:
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    term = 1.0 + 0j
    total = term
    for k in range(n_stop):
        term = term * (a + k) * (b + k) * z / ((c + k) * (k + 1.0))
        total += term
    return total


def gauss_2f1(a, b, c, z, tol: float = 1e-14, max_terms: int = 200000) -> complex:
    """Gauss hypergeometric 2F1(a, b; c; z) for complex parameters, |z| <= 1.

    Terminating series (a or b a nonpositive integer) are summed exactly for
    any z. At z = 1 the Gauss theorem Gamma ratio is used, requiring
    Re(c-a-b) > 0. Otherwise: direct series for |z| <= 0.5 and the Euler
    transformation for 0.5 < |z| < 1.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if _nonpos_int_order(c) is not None:
        raise ParameterPoleError(f"2F1 parameter pole: c = {c}")
    na, nb = _nonpos_int_order(a), _nonpos_int_order(b)
    if na is not None or nb is not None:
        n_stop = min(m for m in (na, nb) if m is not None)
        return _terminating_sum(a, b, c, z, n_stop)
    if z == 0:
        return 1.0 + 0j
    if abs(z) > 1.0 + 1e-14:
        raise NonConvergentError(f"|z| = {abs(z):.6g} > 1 for a non-terminating series")
    if abs(z - 1.0) <= 1e-14:
        if not (c - a - b).real > 0:
            raise NonConvergentError("Gauss value at z = 1 needs Re(c-a-b) > 0")
        return complex(gamma_fn(c) * gamma_fn(c - a - b)
                       * _scipy_rgamma(c - a) * _scipy_rgamma(c - b))
    if abs(z) <= 0.5:
        return _series_sum(a, b, c, z, tol, max_terms)
    # Euler transformation; the transformed series may also terminate
    aa, bb = c - a, c - b
    prefactor = np.exp((c - a - b) * np.log(1.0 - z))
    naa, nbb = _nonpos_int_order(aa), _nonpos_int_order(bb)
    if naa is not None or nbb is not None:
        n_stop = min(m for m in (naa, nbb) if m is not None)
        return prefactor * _terminating_sum(aa, bb, c, z, n_stop)
    return prefactor * _series_sum(aa, bb, c, z, tol, max_terms)


def kummer_1f1(a, c, z, tol: float = 1e-15, max_terms: int = 200000) -> complex:
    """Confluent 1F1(a; c; z) by the same series machinery (always convergent)."""
    a, c, z = complex(a), complex(c), complex(z)
    if _nonpos_int_order(c) is not None:
        raise ParameterPoleError(f"1F1 parameter pole: c = {c}")
    na = _nonpos_int_order(a)
    term = 1.0 + 0j
    total = term
    for k in range(max_terms):
        if na is not None and k >= na:
            return total
        term = term * (a + k) * z / ((c + k) * (k + 1.0))
        total += term
        if abs(term) < tol * max(abs(total), 1e-300) and k > abs(z) + abs(a) + abs(c):
            return total
    raise NonConvergentError("1F1 series did not converge")


@dataclass(frozen=True)
class JacobiPoly:
    """Degree-n Jacobi polynomial P_n^(rho, nu) in the monomial basis of z."""

    n: int
    rho_param: complex
    nu_param: complex
    coeffs: np.ndarray  # ascending in z, length n + 1

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.size != self.n + 1:
            raise ValidationError("coefficient list must have length n + 1")
        object.__setattr__(self, "coeffs", c)

    def __call__(self, z):
        return npoly.polyval(np.asarray(z, dtype=complex), self.coeffs)

    def derivative(self, order: int = 1):
        return npoly.polyder(self.coeffs, m=order)


def _rising(x, m) -> complex:
    out = 1.0 + 0j
    for i in range(m):
        out *= x + i
    return out


def jacobi_coefficients(n: int, rho, nu) -> JacobiPoly:
    """Pole-free monomial coefficients from the Pochhammer expansion.

    P_n(z) = sum_r rise(rho+1+r, n-r) * rise(n+rho+nu+1, r) / (r! (n-r)!) * u^r
    with u = (z-1)/2.
    """
    rho, nu = complex(rho), complex(nu)
    coeffs_u = np.array(
        [_rising(rho + 1 + r, n - r) * _rising(n + rho + nu + 1.0, r)
         / (math.factorial(r) * math.factorial(n - r))
         for r in range(n + 1)],
        dtype=complex,
    )
    # compose with u(z) = (z - 1)/2
    u_poly = np.array([-0.5, 0.5], dtype=complex)
    coeffs_z = np.zeros(n + 1, dtype=complex)
    power = np.array([1.0 + 0j])
    for r in range(n + 1):
        coeffs_z[: power.size] += coeffs_u[r] * power
        power = npoly.polymul(power, u_poly)
    return JacobiPoly(n, rho, nu, coeffs_z)


def jacobi_eval(n: int, rho, nu, z) -> complex:
    """P_n^(rho, nu)(z) by the three-term recurrence.

    Falls back to the closed-form coefficients when a recurrence denominator
    degenerates (possible for special complex parameter combinations).
    """
    if n < 0:
        raise ValidationError("n must be nonnegative")
    rho, nu, z = complex(rho), complex(nu), complex(z)
    if n == 0:
        return 1.0 + 0j
    p_prev = 1.0 + 0j
    p_cur = (rho - nu) / 2.0 + (rho + nu + 2.0) * z / 2.0
    for k in range(2, n + 1):
        c1 = 2.0 * k * (k + rho + nu) * (2.0 * k + rho + nu - 2.0)
        if abs(c1) < 1e-12 * (1.0 + abs(rho) + abs(nu)) ** 3:
            return complex(jacobi_coefficients(n, rho, nu)(z))
        c2 = (2.0 * k + rho + nu - 1.0) * (rho * rho - nu * nu)
        c3 = (2.0 * k + rho + nu - 2.0) * (2.0 * k + rho + nu - 1.0) * (2.0 * k + rho + nu)
        c4 = 2.0 * (k + rho - 1.0) * (k + nu - 1.0) * (2.0 * k + rho + nu)
        p_next = ((c2 + c3 * z) * p_cur - c4 * p_prev) / c1
        p_prev, p_cur = p_cur, p_next
    return p_cur


def jacobi_binomial_form(n: int, rho, nu, z) -> complex:
    """Binomial-sum expansion 2^-n sum_p (-1)^(n-p) C(n+rho,p) C(n+nu,n-p) (1-z)^(n-p) (1+z)^p.

    The generalized binomials are evaluated through rising-factorial
    products, which is the same Gamma-quotient rewritten without the
    cancellation error of two large Gamma values.
    """
    rho, nu, z = complex(rho), complex(nu), complex(z)
    total = 0j
    for p in range(n + 1):
        binom1 = _rising(n + rho - p + 1, p) / math.factorial(p)
        binom2 = _rising(nu + p + 1, n - p) / math.factorial(n - p)
        total += (-1.0) ** (n - p) * binom1 * binom2 * (1.0 - z) ** (n - p) * (1.0 + z) ** p
    return total * 2.0 ** (-n)


def jacobi_gamma_form(n: int, rho, nu, z) -> complex:
    """Gamma-ratio expansion in powers of (z-1)/2.

    Raises ParameterPole when an argument of the defining Gamma quotients
    hits a nonpositive integer; away from those the quotients are evaluated
    as rising factorials for precision.
    """
    rho, nu, z = complex(rho), complex(nu), complex(z)
    for arg in (n + rho + 1, n + rho + nu + 1, rho + 1):
        if _nonpos_int_order(arg) is not None:
            raise ParameterPoleError(f"Gamma pole at {arg}")
    for r in range(n + 1):
        if _nonpos_int_order(r + rho + 1) is not None \
                or _nonpos_int_order(n + rho + nu + r + 1) is not None:
            raise ParameterPoleError("Gamma pole inside the expansion")
    # Gamma(n+rho+1)/Gamma(rho+1) = (rho+1)_n;
    # Gamma(n+rho+nu+r+1)/Gamma(n+rho+nu+1) = (n+rho+nu+1)_r;
    # Gamma(rho+1)/Gamma(r+rho+1) = 1/(rho+1)_r
    pref = _rising(rho + 1, n) / math.factorial(n)
    total = 0j
    for r in range(n + 1):
        total += (math.comb(n, r) * _rising(n + rho + nu + 1, r)
                  / _rising(rho + 1, r) * ((z - 1.0) / 2.0) ** r)
    return pref * total


def jacobi_closed_form(n: int, rho, nu, z) -> complex:
    """Gamma-ratio form, falling back to the binomial sum on parameter poles."""
    try:
        return jacobi_gamma_form(n, rho, nu, z)
    except ParameterPoleError:
        return jacobi_binomial_form(n, rho, nu, z)


def jacobi_shifted_sum_forms(n: int, eps, b_over_q, q, s):
    """The two explicit expansions of P_n^(2 eps, b/q)(1 - 2 q s).

    Returns the pair (mixed-power sum over p, plain-power sum over r); both
    must agree with jacobi_eval at z = 1 - 2 q s.
    """
    eps, w, q, s = complex(eps), complex(b_over_q), complex(q), complex(s)
    sum_p = 0j
    for p in range(n + 1):
        sum_p += ((-1.0) ** p * q ** (n - p)
                  / (math.factorial(p) * math.factorial(n - p)
                     * gamma_fn(p + w + 1) * gamma_fn(n + 2 * eps - p + 1))
                  * s ** (n - p) * (1.0 - q * s) ** p)
    v_mixed = (-1.0) ** n * gamma_fn(n + 2 * eps + 1) * gamma_fn(n + w + 1) * sum_p
    sum_r = 0j
    for r in range(n + 1):
        sum_r += ((-1.0) ** r * q ** r * gamma_fn(n + 2 * eps + w + r + 1)
                  / (math.factorial(r) * math.factorial(n - r) * gamma_fn(2 * eps + r + 1))
                  * s ** r)
    v_plain = gamma_fn(n + 2 * eps + 1) / gamma_fn(n + 2 * eps + w + 1) * sum_r
    return v_mixed, v_plain
