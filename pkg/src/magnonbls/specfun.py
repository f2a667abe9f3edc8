"""Spherical Bessel functions and bracketing root finding.

Every function here accepts a scalar or an array for the argument ``x`` and
returns the same shape.  Orders can be large (several thousand): ``j_l`` is
evaluated by Miller's downward recurrence, ``y_l`` by upward recurrence, both
with running rescaling so intermediate values never overflow.
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy import optimize

from .errors import DomainError, MaxIterationError, NoSignChangeError

_BIG = 1e250
_LOG_BIG = math.log(_BIG)


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self):
        return self.hi - self.lo


def _as_positive_array(x):
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError("spherical Bessel functions need x > 0")
    return x


def _j01(x):
    s, c = np.sin(x), np.cos(x)
    j0 = s / x
    with np.errstate(invalid="ignore", divide="ignore"):
        j1 = (s / x - c) / x
    small = x < 1e-2
    if np.any(small):
        xs = x[small]
        x2 = xs * xs
        j1[small] = xs / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0))
    return j0, j1


def _j_pair(l, x):
    """Return (j_{l-1}(x), j_l(x)) for l >= 1 by normalized downward recurrence."""
    j0, j1 = _j01(x)
    if l == 1:
        return j0, j1
    top = max(l, float(np.max(x)))
    start = int(top + math.sqrt(160.0 * (top + 1.0))) + 20

    f_next = np.zeros_like(x)            # f_{k+1}
    f_cur = np.full_like(x, 1e-300)      # f_k, arbitrary seed
    f_l = np.zeros_like(x)
    f_lm1 = np.zeros_like(x)
    f_1 = np.zeros_like(x)
    for k in range(start, 0, -1):
        # f_{k-1} = (2k+1)/x f_k - f_{k+1}
        f_prev = (2 * k + 1) / x * f_cur - f_next
        f_next, f_cur = f_cur, f_prev
        km1 = k - 1
        if km1 == l:
            f_l = f_cur.copy()
        elif km1 == l - 1:
            f_lm1 = f_cur.copy()
        if km1 == 1:
            f_1 = f_cur.copy()
        big = np.abs(f_cur) > _BIG
        if np.any(big):
            s = np.where(big, 1.0 / _BIG, 1.0)
            f_cur *= s
            f_next *= s
            f_l *= s
            f_lm1 *= s
            f_1 *= s
    f_0 = f_cur
    use_j0 = np.abs(j0) >= np.abs(j1)
    with np.errstate(invalid="ignore", divide="ignore"):
        scale = np.where(use_j0, j0 / f_0, j1 / f_1)
    return f_lm1 * scale, f_l * scale


def spherical_bessel_j(l, x):
    """Spherical Bessel function of the first kind, j_l(x), for x > 0."""
    if l < 0:
        raise DomainError("order must be non-negative")
    xa = _as_positive_array(x)
    flat = np.atleast_1d(xa).ravel()
    if l == 0:
        out = np.sin(flat) / flat
    elif l == 1:
        out = _j01(flat)[1]
    else:
        out = _j_pair(l, flat)[1]
    return out.reshape(xa.shape)[()]


def spherical_bessel_j_derivative(l, x):
    """d/dx j_l(x) = j_{l-1}(x) - (l+1)/x j_l(x); j_0' = -j_1."""
    if l < 0:
        raise DomainError("order must be non-negative")
    xa = _as_positive_array(x)
    flat = np.atleast_1d(xa).ravel()
    if l == 0:
        out = -_j01(flat)[1]
    else:
        jm1, jl = _j_pair(l, flat)
        out = jm1 - (l + 1) / flat * jl
    return out.reshape(xa.shape)[()]


def _y_scaled(l, x):
    """Upward recurrence for y.

    Returns (y_{l-1}, y_l, log_scale) with the true values equal to the
    returned ones times exp(log_scale).  Valid for l >= 1.
    """
    s, c = np.sin(x), np.cos(x)
    y_prev = -c / x
    y_cur = -c / (x * x) - s / x
    log_scale = np.zeros_like(x)
    for k in range(1, l):
        y_next = (2 * k + 1) / x * y_cur - y_prev
        y_prev, y_cur = y_cur, y_next
        big = np.abs(y_cur) > _BIG
        if np.any(big):
            y_cur = np.where(big, y_cur / _BIG, y_cur)
            y_prev = np.where(big, y_prev / _BIG, y_prev)
            log_scale = log_scale + np.where(big, _LOG_BIG, 0.0)
    return y_prev, y_cur, log_scale


def spherical_bessel_y(l, x):
    """Spherical Bessel function of the second kind, y_l(x).

    Overflows to -inf for very large l at small x; use
    :func:`log_abs_spherical_bessel_y` there.
    """
    if l < 0:
        raise DomainError("order must be non-negative")
    xa = _as_positive_array(x)
    flat = np.atleast_1d(xa).ravel()
    if l == 0:
        out = -np.cos(flat) / flat
    else:
        _, yl, ls = _y_scaled(l, flat)
        with np.errstate(over="ignore"):
            out = yl * np.exp(ls)
    return out.reshape(xa.shape)[()]


def log_abs_spherical_bessel_y(l, x):
    """Return (log|y_l(x)|, sign(y_l(x)))."""
    xa = _as_positive_array(x)
    flat = np.atleast_1d(xa).ravel()
    if l == 0:
        yl = -np.cos(flat) / flat
        ls = np.zeros_like(flat)
    else:
        _, yl, ls = _y_scaled(l, flat)
    with np.errstate(divide="ignore"):
        logabs = np.log(np.abs(yl)) + ls
    return logabs.reshape(xa.shape)[()], np.sign(yl).reshape(xa.shape)[()]


def riccati_psi(l, x):
    """Riccati-Bessel psi_l(x) = x j_l(x) and its derivative."""
    xa = _as_positive_array(x)
    flat = np.atleast_1d(xa).ravel()
    if l == 0:
        psi, dpsi = np.sin(flat), np.cos(flat)
    else:
        jm1, jl = _j_pair(l, flat)
        psi = flat * jl
        dpsi = flat * jm1 - l * jl
    return psi.reshape(xa.shape)[()], dpsi.reshape(xa.shape)[()]


def riccati_chi_logderiv(l, x):
    """chi_l'(x) / chi_l(x) for chi_l(x) = x y_l(x), overflow free.

    Has poles at the zeros of y_l, which all lie above x = l.
    """
    xa = _as_positive_array(x)
    flat = np.atleast_1d(xa).ravel()
    if l == 0:
        out = -np.tan(flat)
    else:
        ym1, yl, _ = _y_scaled(l, flat)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = ym1 / yl - l / flat
    return out.reshape(xa.shape)[()]


def find_root(f, bracket, tol=1e-12, maxiter=200):
    """Root of a continuous scalar function inside a sign-changing bracket.

    Brent's method (inverse quadratic interpolation with a bisection
    safeguard).  The returned abscissa lies inside ``bracket``.
    """
    lo, hi = float(bracket.lo), float(bracket.hi)
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise NoSignChangeError(
            f"f({lo:g})={flo:g} and f({hi:g})={fhi:g} have the same sign")
    try:
        x, info = optimize.brentq(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps,
                                  maxiter=maxiter, full_output=True, disp=False)
    except RuntimeError as exc:   # pragma: no cover - disp=False never raises this
        raise MaxIterationError(str(exc)) from exc
    if not info.converged:
        raise MaxIterationError(
            f"no convergence after {info.iterations} iterations in [{lo:g}, {hi:g}]")
    return min(max(x, lo), hi)


def scan_brackets(f, lo, hi, num):
    """Split [lo, hi] into ``num`` cells and return those where ``f`` changes sign.

    ``f`` must accept an array.  Cells where ``f`` is not finite at either end
    are skipped.
    """
    xs = np.linspace(lo, hi, num + 1)
    fs = np.asarray(f(xs), dtype=float)
    ok = np.isfinite(fs[:-1]) & np.isfinite(fs[1:])
    s0, s1 = np.sign(fs[:-1]), np.sign(fs[1:])
    # a zero on a grid node belongs to the cell on its left only
    flips = ok & ((s0 * s1 < 0) | ((s1 == 0) & (s0 != 0)))
    flips[0] |= ok[0] and s0[0] == 0 and s1[0] != 0
    return [Bracket(xs[i], xs[i + 1]) for i in np.nonzero(flips)[0]]
