"""Grid-based numerical certification of reductions, identities and
solutions.  Every pass/fail decision is max_rel_err <= tolerance over an
admissible grid; nothing else enters the verdict.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .core import DomainError, HeunParams, PowerFactor
from .identities import IDENTITY_MAP
from .numerics import (
    DEFAULT_ORDER,
    EVAL_SAFETY,
    SeriesSolution,
    eval_hyp_form,
    heun_eval,
    heun_series,
    hyp_form_admissible,
    ode_residual,
)
from .reduction import HypergeometricForm, QuadratureDescriptor

DEFAULT_TOL = 1e-8
GRID_SPAN_FACTOR = 0.4   # default grid spans [-0.4 rho, 0.4 rho]
FD_STEP = 1e-4           # five-point stencil step for quadrature derivatives


@dataclass(frozen=True)
class GridSpec:
    """Verification grid: n points on [lo, hi] (+ i*imag), Chebyshev-spaced
    by default.  lo/hi default to +-0.4 times the relevant radius."""

    n: int = 21
    lo: float | None = None
    hi: float | None = None
    chebyshev: bool = True
    imag: float = 0.0

    def points(self, span: float) -> list[complex]:
        lo = self.lo if self.lo is not None else -span
        hi = self.hi if self.hi is not None else span
        if self.chebyshev:
            k = np.arange(self.n)
            nodes = np.cos((2 * k + 1) * np.pi / (2 * self.n))
            xs = (lo + hi) / 2 + (hi - lo) / 2 * nodes[::-1]
        else:
            xs = np.linspace(lo, hi, self.n)
        return [complex(x, self.imag) for x in xs]


@dataclass(frozen=True)
class VerificationReport:
    grid: tuple[complex, ...]
    errors: tuple[float, ...]
    max_rel_err: float
    tolerance: float
    passed: bool
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"grid": [[z.real, z.imag] for z in self.grid],
                "errors": list(self.errors),
                "max_rel_err": self.max_rel_err,
                "tolerance": self.tolerance,
                "pass": self.passed,
                "notes": list(self.notes)}


def _report(grid, errors, tol, notes=()) -> VerificationReport:
    mx = max(errors)
    return VerificationReport(tuple(grid), tuple(errors), mx, tol, mx <= tol, tuple(notes))


def _series_admissible(s: SeriesSolution, z: complex) -> bool:
    return abs(z) <= EVAL_SAFETY * s.radius * (1 + 1e-12)


def _form_admissible_path(f: HypergeometricForm, z: complex, samples: int = 24) -> bool:
    """Admissibility along the segment from 0 to z, not just at z: the
    equality H = prefactor * F(R) holds only on the component of 0 where
    R stays clear of the F branch cut, and both safe evaluation regions
    (|x| <= 0.9, |x/(x-1)| <= 0.9) are bounded away from it."""
    return all(hyp_form_admissible(f, z * k / samples) for k in range(1, samples + 1))


def verify_reduction(p: HeunParams, f: HypergeometricForm,
                     grid_spec: GridSpec | None = None,
                     tol: float = DEFAULT_TOL,
                     order: int = DEFAULT_ORDER) -> VerificationReport:
    """Compare the H(0) = 1 series against prefactor * F(R(z)) pointwise."""
    s = heun_series(p, order)
    spec = grid_spec or GridSpec()
    proposed = spec.points(GRID_SPAN_FACTOR * s.radius)
    grid = [z for z in proposed
            if _series_admissible(s, z) and _form_admissible_path(f, z)]
    if not grid:
        raise DomainError("empty admissible grid")
    errors, truncs = [], []
    for z in grid:
        lhs = heun_eval(s, z)
        rhs = eval_hyp_form(f, z)
        errors.append(abs(lhs.value - rhs) / max(1.0, abs(lhs.value)))
        truncs.append(lhs.truncation)
    notes = [f"series order {order}, truncation estimate {max(truncs):.3e}"]
    if len(grid) < len(proposed):
        notes.append(f"{len(proposed) - len(grid)} grid points outside the admissible domain dropped")
    return _report(grid, errors, tol, notes)


def verify_identity(p: HeunParams, identity_id: str,
                    grid_spec: GridSpec | None = None,
                    tol: float = DEFAULT_TOL,
                    order: int = DEFAULT_ORDER) -> VerificationReport:
    """Check H(z) = prefactor(z) * H'(m(z)) for one identity pointwise."""
    t = IDENTITY_MAP[identity_id](p)
    s_left = heun_series(p, order)
    s_right = heun_series(t.params, order)
    spec = grid_spec or GridSpec()
    proposed = spec.points(GRID_SPAN_FACTOR * s_left.radius)

    def admissible(z: complex) -> bool:
        if not _series_admissible(s_left, z):
            return False
        try:
            w = t.arg_map(z)
        except DomainError:
            return False
        if not _series_admissible(s_right, w):
            return False
        return all(abs(fac.c0 + fac.c1 * z) > 1e-12 for fac in t.prefactor.factors)

    grid = [z for z in proposed if admissible(z)]
    if not grid:
        raise DomainError("empty admissible grid: transformed arguments leave the convergence domain")
    errors = []
    for z in grid:
        lhs = heun_eval(s_left, z).value
        rhs = t.prefactor(z) * heun_eval(s_right, t.arg_map(z)).value
        errors.append(abs(lhs - rhs) / max(1.0, abs(lhs)))
    notes = [f"identity {identity_id}, series order {order}"]
    if len(grid) < len(proposed):
        notes.append(f"{len(proposed) - len(grid)} grid points outside the admissible domain dropped")
    return _report(grid, errors, tol, notes)


def verify_values(p: HeunParams, reference: Callable[[complex], complex],
                  grid_spec: GridSpec | None = None,
                  tol: float = DEFAULT_TOL,
                  order: int = DEFAULT_ORDER) -> VerificationReport:
    """Compare the H(0) = 1 series against any reference function pointwise."""
    s = heun_series(p, order)
    spec = grid_spec or GridSpec()
    proposed = spec.points(GRID_SPAN_FACTOR * s.radius)
    grid = [z for z in proposed if _series_admissible(s, z)]
    if not grid:
        raise DomainError("empty admissible grid")
    errors = []
    for z in grid:
        lhs = heun_eval(s, z).value
        errors.append(abs(lhs - reference(z)) / max(1.0, abs(lhs)))
    return _report(grid, errors, tol, [f"series order {order}"])


def verify_solution(p: HeunParams,
                    evaluator: Callable[[complex], tuple[complex, complex, complex]],
                    grid_spec: GridSpec | None = None,
                    tol: float = DEFAULT_TOL) -> VerificationReport:
    """Residual check of any (value, H', H'') supplier against the equation,
    normalized by the local solution magnitude."""
    spec = grid_spec or GridSpec()
    proposed = spec.points(GRID_SPAN_FACTOR * min(1.0, abs(p.d)))

    def regular(z: complex) -> bool:
        return all(abs(z - s) > 1e-9 * (1 + abs(z)) for s in (0.0, 1.0, p.d))

    grid = [z for z in proposed if regular(z)]
    if not grid:
        raise DomainError("empty admissible grid: all points singular")
    errors = []
    for z in grid:
        value, d1, d2 = evaluator(z)
        errors.append(ode_residual(p, value, d1, d2, z) / max(1.0, abs(value)))
    notes = []
    if len(grid) < len(proposed):
        notes.append(f"{len(proposed) - len(grid)} singular grid points rejected")
    return _report(grid, errors, tol, notes)


def series_evaluator(s: SeriesSolution) -> Callable[[complex], tuple[complex, complex, complex]]:
    def ev(z):
        v = heun_eval(s, z)
        return v.value, v.d1, v.d2
    return ev


def quadrature_evaluator(qd: QuadratureDescriptor, basepoint: float,
                         c1: complex = 1.0, c2: complex = 1.0,
                         ) -> Callable[[complex], tuple[complex, complex, complex]]:
    """Evaluator for H = c1 + c2 * integral(integrand) from the basepoint,
    on the real axis: value by adaptive quadrature, H' the integrand itself,
    H'' a five-point stencil of the integrand (step FD_STEP)."""

    def value(x: float) -> complex:
        re = quad(lambda t: qd.integrand(t).real, basepoint, x, limit=200)[0]
        im = quad(lambda t: qd.integrand(t).imag, basepoint, x, limit=200)[0]
        return c1 + c2 * complex(re, im)

    def ev(z: complex):
        x = complex(z).real
        f = qd.integrand
        h = FD_STEP
        d2 = (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)
        return value(x), c2 * f(x), c2 * d2

    return ev


def form_evaluator(f: HypergeometricForm, h: float = 1e-3,
                   ) -> Callable[[complex], tuple[complex, complex, complex]]:
    """Fourth-order finite-difference evaluator for a hypergeometric form,
    for residual checks against the original equation."""

    def ev(z: complex):
        vals = [eval_hyp_form(f, z + k * h) for k in (-2, -1, 0, 1, 2)]
        d1 = (vals[0] - 8 * vals[1] + 8 * vals[3] - vals[4]) / (12 * h)
        d2 = (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4]) / (12 * h * h)
        return vals[2], d1, d2

    return ev
