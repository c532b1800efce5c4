"""Parameter sets for the four-singular-point Fuchsian equation

    H'' + (gamma/z + delta/(z-1) + epsilon/(z-d)) H'
        + (a*b*z - q) / (z (z-1) (z-d)) H = 0,

with regular singular points {0, 1, d, infinity}, d not in {0, 1}, and the
exponent-sum relation a + b + 1 = gamma + delta + epsilon.  Everything in
this package manipulates these seven numbers; ``epsilon`` is always derived
from the other six so the relation can never silently break.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

TOL_EXACT = 1e-12


class HeunError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(HeunError, ValueError):
    """Parameter set violates a structural invariant."""


class DomainError(HeunError, ValueError):
    """Evaluation point outside the admissible domain."""


class ConditionError(HeunError, ValueError):
    """A reduction was requested whose conditions do not hold."""


class LogarithmicCaseError(HeunError, ValueError):
    """Frobenius series at 0 degenerates (gamma a non-positive integer)."""


class UnreachableTargetError(HeunError, ValueError):
    """No composition of the implemented identities reaches the target."""


def as_complex(x) -> complex:
    """Coerce to a finite complex double; reject NaN/Inf components."""
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidParameterError(f"non-finite scalar: {x!r}")
    return z


def close(x: complex, y: complex, tol: float = TOL_EXACT) -> bool:
    """|x - y| <= tol * (1 + |x| + |y|), the package-wide equality test."""
    return abs(x - y) <= tol * (1.0 + abs(x) + abs(y))


def is_nonpositive_integer(z: complex, tol: float = TOL_EXACT) -> bool:
    n = round(z.real)
    return n <= 0 and close(z, complex(n), tol)


def complex_to_json(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def complex_from_json(obj) -> complex:
    if isinstance(obj, dict):
        return complex(float(obj.get("re", 0.0)), float(obj.get("im", 0.0)))
    return as_complex(obj)


@dataclass(frozen=True)
class HeunParams:
    """The seven parameters (d, q; a, b, gamma, delta, epsilon)."""

    d: complex
    q: complex
    a: complex
    b: complex
    gamma: complex
    delta: complex
    epsilon: complex

    def fuchsian_defect(self) -> float:
        lhs = self.a + self.b + 1
        rhs = self.gamma + self.delta + self.epsilon
        return abs(lhs - rhs)

    def swapped(self) -> "HeunParams":
        """Exchange the interchangeable exponent labels a and b."""
        return HeunParams(self.d, self.q, self.b, self.a,
                          self.gamma, self.delta, self.epsilon)

    def to_json(self) -> dict:
        return {k: complex_to_json(getattr(self, k))
                for k in ("d", "q", "a", "b", "gamma", "delta", "epsilon")}

    @staticmethod
    def from_json(obj: dict) -> "HeunParams":
        # epsilon is ignored on input and recomputed
        vals = {k: complex_from_json(obj[k])
                for k in ("d", "q", "a", "b", "gamma", "delta")}
        return make_params(**vals)


def make_params(d, q, a, b, gamma, delta) -> HeunParams:
    """Build a parameter set; epsilon is derived so the exponent-sum
    relation holds exactly by construction."""
    d, q, a, b, gamma, delta = (as_complex(v) for v in (d, q, a, b, gamma, delta))
    scale = 1.0 + abs(d)
    if abs(d) <= TOL_EXACT * scale or abs(d - 1) <= TOL_EXACT * scale:
        raise InvalidParameterError(f"d = {d} coincides with a fixed singular point (0 or 1)")
    epsilon = a + b + 1 - gamma - delta
    return HeunParams(d, q, a, b, gamma, delta, epsilon)


def validate(params: HeunParams, tol_exact: float = TOL_EXACT) -> list[str]:
    """Return the list of violated invariants (empty means valid)."""
    violations = []
    for name in ("d", "q", "a", "b", "gamma", "delta", "epsilon"):
        v = getattr(params, name)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            violations.append(f"{name} is not finite")
    if violations:
        return violations
    scale = 1.0 + abs(params.d)
    if abs(params.d) <= tol_exact * scale:
        violations.append("d at regular singularity 0")
    if abs(params.d - 1) <= tol_exact * scale:
        violations.append("d at regular singularity 1")
    fscale = 1.0 + abs(params.a) + abs(params.b)
    if params.fuchsian_defect() > tol_exact * fscale:
        violations.append(
            f"exponent-sum relation violated: |a+b+1-gamma-delta-epsilon| = {params.fuchsian_defect():.3e}")
    return violations


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b) / (c z + d) with nonzero determinant."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if abs(self.det) <= TOL_EXACT * (1 + abs(self.a) + abs(self.b) + abs(self.c) + abs(self.d)) ** 2:
            raise InvalidParameterError("singular Moebius map")

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def __call__(self, z: complex) -> complex:
        den = self.c * z + self.d
        if den == 0:
            raise DomainError(f"Moebius map has a pole at z = {z}")
        return (self.a * z + self.b) / den

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, inner: "MobiusMap") -> "MobiusMap":
        """(self.compose(inner))(z) == self(inner(z))."""
        return MobiusMap(self.a * inner.a + self.b * inner.c,
                         self.a * inner.b + self.b * inner.d,
                         self.c * inner.a + self.d * inner.c,
                         self.c * inner.b + self.d * inner.d)

    def is_identity(self, tol: float = TOL_EXACT) -> bool:
        # projective: columns proportional to the identity
        return (close(self.b, 0, tol) and close(self.c, 0, tol)
                and close(self.a, self.d, tol))

    @staticmethod
    def identity() -> "MobiusMap":
        return MobiusMap(1.0, 0.0, 0.0, 1.0)

    @staticmethod
    def affine(c0, c1) -> "MobiusMap":
        """z -> c0 + c1 z."""
        return MobiusMap(as_complex(c1), as_complex(c0), 0.0, 1.0)


@dataclass(frozen=True)
class PowerFactor:
    """(c0 + c1 z) ** exponent, principal branch."""

    c0: complex
    c1: complex
    exponent: complex

    def __call__(self, z: complex) -> complex:
        base = self.c0 + self.c1 * z
        if base == 0:
            raise DomainError(f"prefactor base vanishes at z = {z}")
        return cmath.exp(self.exponent * cmath.log(base))

    def to_json(self) -> dict:
        return {"c0": complex_to_json(self.c0), "c1": complex_to_json(self.c1),
                "exponent": complex_to_json(self.exponent)}

    @staticmethod
    def from_json(obj: dict) -> "PowerFactor":
        return PowerFactor(complex_from_json(obj["c0"]), complex_from_json(obj["c1"]),
                           complex_from_json(obj["exponent"]))


@dataclass(frozen=True)
class PowerPrefactor:
    """Product of affine-base complex powers; empty product is 1."""

    factors: tuple[PowerFactor, ...] = ()

    def __call__(self, z: complex) -> complex:
        out = 1.0 + 0j
        for f in self.factors:
            out *= f(z)
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def times(self, other: "PowerPrefactor") -> "PowerPrefactor":
        return PowerPrefactor(self.factors + other.factors).simplified()

    def precompose(self, m: MobiusMap) -> "PowerPrefactor":
        """Prefactor evaluated at m(z), re-expressed with affine bases.

        (c0 + c1 m(z))^e = ((c0 d + c1 b) + (c0 c + c1 a) z)^e * (d + c z)^(-e);
        valid away from the branch cuts of the individual factors, which is
        where all verification grids live.
        """
        out: list[PowerFactor] = []
        for f in self.factors:
            num0 = f.c0 * m.d + f.c1 * m.b
            num1 = f.c0 * m.c + f.c1 * m.a
            if m.c == 0:
                out.append(PowerFactor(num0 / m.d, num1 / m.d, f.exponent))
            else:
                out.append(PowerFactor(num0, num1, f.exponent))
                out.append(PowerFactor(m.d, m.c, -f.exponent))
        return PowerPrefactor(tuple(out)).simplified()

    def simplified(self) -> "PowerPrefactor":
        """Merge factors with identical bases, drop zero exponents."""
        merged: list[PowerFactor] = []
        for f in self.factors:
            for i, g in enumerate(merged):
                if g.c0 == f.c0 and g.c1 == f.c1:
                    merged[i] = PowerFactor(g.c0, g.c1, g.exponent + f.exponent)
                    break
            else:
                merged.append(f)
        kept = tuple(f for f in merged if abs(f.exponent) > 1e-15)
        return PowerPrefactor(kept)

    def to_json(self) -> list:
        return [f.to_json() for f in self.factors]

    @staticmethod
    def from_json(obj: list) -> "PowerPrefactor":
        return PowerPrefactor(tuple(PowerFactor.from_json(o) for o in obj))

    @staticmethod
    def single(c0, c1, exponent) -> "PowerPrefactor":
        return PowerPrefactor((PowerFactor(as_complex(c0), as_complex(c1),
                                           as_complex(exponent)),))
