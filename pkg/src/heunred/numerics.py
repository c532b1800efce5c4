"""Numerical evaluation: Frobenius series at z = 0, the Gauss series for
F(a, b; c; x), and residuals of the defining equation.

The series coefficients follow the three-term recurrence obtained by
substituting sum c_j z^j into the equation multiplied through by
z (z-1) (z-d):

    d (n+1) (n+gamma) c_{n+1}
        = [ n ((n-1)(1+d) + gamma (1+d) + delta d + epsilon) + q ] c_n
          - (n-1+a) (n-1+b) c_{n-1},

with c_0 = 1 (the H(0) = 1 normalization) and c_1 = q / (gamma d).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import numpy.polynomial.polynomial as npoly

from .core import (
    DomainError,
    HeunParams,
    InvalidParameterError,
    LogarithmicCaseError,
    as_complex,
    is_nonpositive_integer,
    validate,
)
from .reduction import HypergeometricForm

DEFAULT_ORDER = 128
EVAL_SAFETY = 0.5          # evaluate only for |z| <= EVAL_SAFETY * radius
GAUSS_SERIES_LIMIT = 0.9   # direct Gauss series for |x| <= 0.9
GAUSS_MAX_TERMS = 4000


@dataclass(frozen=True)
class SeriesSolution:
    """Truncated local solution at z = 0 with H(0) = 1."""

    params: HeunParams
    coefficients: np.ndarray = field(repr=False)
    order: int
    radius: float


class HeunValue(NamedTuple):
    value: complex
    d1: complex
    d2: complex
    truncation: float


def heun_series(p: HeunParams, order: int = DEFAULT_ORDER) -> SeriesSolution:
    """Coefficients c_0..c_order of the H(0) = 1 Frobenius solution."""
    bad = validate(p)
    if bad:
        raise InvalidParameterError("; ".join(bad))
    if order < 2:
        raise InvalidParameterError("series order must be >= 2")
    if is_nonpositive_integer(p.gamma):
        raise LogarithmicCaseError(
            f"gamma = {p.gamma} is a non-positive integer: logarithmic case not supported")
    d, q, a, b, g, dl, ep = p.d, p.q, p.a, p.b, p.gamma, p.delta, p.epsilon
    c = np.zeros(order + 1, dtype=complex)
    c[0] = 1.0
    for n in range(order):
        A = d * (n + 1) * (n + g)
        B = n * ((n - 1) * (1 + d) + g * (1 + d) + dl * d + ep) + q
        C = (n - 1 + a) * (n - 1 + b)
        prev = c[n - 1] if n >= 1 else 0.0
        c[n + 1] = (B * c[n] - C * prev) / A
    return SeriesSolution(p, c, order, min(1.0, abs(d)))


def heun_eval(s: SeriesSolution, z) -> HeunValue:
    """Horner evaluation of the series with its first two derivatives."""
    z = as_complex(z)
    if abs(z) > EVAL_SAFETY * s.radius * (1 + 1e-12):
        raise DomainError(
            f"|z| = {abs(z):.4g} outside safety domain |z| <= {EVAL_SAFETY * s.radius:.4g}")
    c = s.coefficients
    value = complex(npoly.polyval(z, c))
    d1 = complex(npoly.polyval(z, npoly.polyder(c)))
    d2 = complex(npoly.polyval(z, npoly.polyder(c, 2)))
    # geometric tail bound: coefficients grow like radius^(-n), so the
    # dropped tail is ~ |c_N z^N| * rho/(1-rho) with rho = |z|/radius
    rho = abs(z) / s.radius
    head = max(abs(c[-1]), abs(c[-2])) * abs(z) ** s.order
    truncation = head * rho / (1 - rho) if rho < 1 else float("inf")
    return HeunValue(value, d1, d2, truncation)


def _gauss_series(a, b, c, x) -> complex:
    total = term = 1.0 + 0j
    small = 0
    for k in range(GAUSS_MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x
        total += term
        if abs(term) <= 1e-17 * (1 + abs(total)):
            small += 1
            if small >= 2:
                return total
        else:
            small = 0
    raise DomainError(f"Gauss series did not converge for x = {x}")


def gauss_2f1(a2, b2, c2, x) -> complex:
    """F(a2, b2; c2; x) by direct series, falling back on the Pfaff
    transform F = (1-x)^(-a) F(a, c-b; c; x/(x-1)) when |x| > 0.9."""
    a2, b2, c2, x = (as_complex(v) for v in (a2, b2, c2, x))
    if is_nonpositive_integer(c2):
        raise InvalidParameterError(f"degenerate c2 = {c2} (non-positive integer)")
    if abs(x) <= GAUSS_SERIES_LIMIT:
        return _gauss_series(a2, b2, c2, x)
    xp = x / (x - 1)
    if abs(xp) <= GAUSS_SERIES_LIMIT:
        return (1 - x) ** (-a2) * _gauss_series(a2, c2 - b2, c2, xp)
    raise DomainError(
        f"x = {x} outside the series domain (|x| = {abs(x):.3f}, |x/(x-1)| = {abs(xp):.3f})")


def gauss_2f1_admissible(x) -> bool:
    x = complex(x)
    return abs(x) <= GAUSS_SERIES_LIMIT or abs(x / (x - 1)) <= GAUSS_SERIES_LIMIT


def eval_hyp_form(f: HypergeometricForm, z) -> complex:
    """prefactor(z) * F(a2, b2; c2; R(z))."""
    z = as_complex(z)
    x = f.arg_map(z)
    return f.prefactor(z) * gauss_2f1(f.a2, f.b2, f.c2, x)


def hyp_form_admissible(f: HypergeometricForm, z) -> bool:
    """True when the form is evaluable at z (argument in domain, prefactor
    bases away from zero)."""
    try:
        x = f.arg_map(z)
    except (DomainError, ZeroDivisionError):
        return False
    if not gauss_2f1_admissible(x):
        return False
    for fac in f.prefactor.factors:
        if abs(fac.c0 + fac.c1 * complex(z)) < 1e-12:
            return False
    return True


def ode_residual(p: HeunParams, value, d1, d2, z) -> float:
    """|H'' + (gamma/z + delta/(z-1) + epsilon/(z-d)) H' + (abz - q) H / (z(z-1)(z-d))|
    for the supplied value and derivatives at z."""
    z = as_complex(z)
    for s, name in ((0.0, "0"), (1.0, "1"), (p.d, "d")):
        if abs(z - s) <= 1e-12 * (1 + abs(z)):
            raise DomainError(f"residual undefined at the singular point z = {name}")
    lin = p.gamma / z + p.delta / (z - 1) + p.epsilon / (z - p.d)
    rhs = (p.a * p.b * z - p.q) / (z * (z - 1) * (z - p.d))
    return abs(d2 + lin * d1 + rhs * value)
