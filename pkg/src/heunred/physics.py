"""The four quantum-mechanics case studies: parameter maps onto the
four-singular-point equation, closed-form energies, and the reductions
(or computed infeasibility verdicts) each problem admits.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .core import (
    HeunParams,
    InvalidParameterError,
    ConditionError,
    as_complex,
    close,
    make_params,
)
from .reduction import (
    DEFAULT_CONDITION_TOL,
    HypergeometricForm,
    RationalMap,
    reduce_cubic_d4,
)


# ---------------------------------------------------------------------------
# Coulomb problem on a 3-sphere
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoulombSphereInput:
    """Axial quantum number m >= 0, solution parameter gamma, separation
    constant beta, energy."""

    m: int
    gamma: complex = 0.0
    beta: complex = 0.0
    energy: complex = 0.0

    def __post_init__(self):
        if self.m < 0 or self.m != int(self.m):
            raise InvalidParameterError("m must be a non-negative integer")


def coulomb_params(inp: CoulombSphereInput) -> HeunParams:
    """Map (m, gamma, beta, E) to the d = -1 parameter set:

        gamma_H = 1 - sqrt(1 + E + i*gamma),  delta = epsilon = m + 1,
        q = i*beta/2,
        a = 1 + m + (sqrt(1+E-i*gamma) - sqrt(1+E+i*gamma)) / 2,
        b = 1 + m - (sqrt(1+E-i*gamma) + sqrt(1+E+i*gamma)) / 2.

    Principal square roots; the exponent-sum relation holds identically.
    """
    g, E = as_complex(inp.gamma), as_complex(inp.energy)
    sp = cmath.sqrt(1 + E + 1j * g)
    sm = cmath.sqrt(1 + E - 1j * g)
    a = 1 + inp.m + (sm - sp) / 2
    b = 1 + inp.m - (sm + sp) / 2
    return make_params(-1, 1j * as_complex(inp.beta) / 2, a, b, 1 - sp, inp.m + 1)


def coulomb_spectrum(n, m: int, gamma) -> complex:
    """E_n = (n+m)(n+m+2) - gamma^2 / (4 (n+1+m)^2)."""
    n, gamma = as_complex(n), as_complex(gamma)
    return (n + m) * (n + m + 2) - gamma ** 2 / (4 * (n + 1 + m) ** 2)


def coulomb_ground_state_form(inp: CoulombSphereInput,
                              tol: float = DEFAULT_CONDITION_TOL) -> HypergeometricForm:
    """Ground-state reduction with beta = 0 and a*b = 0:

        F((m+1)/2 - (sqrt(C1) - sqrt(C1 - 8 i gamma))/8,
          (m+1)/2 - (sqrt(C1) + sqrt(C1 - 8 i gamma))/8;
          1 - sqrt(C1)/4; z^2),   C1 = 4 (E + i gamma + 1).

    The form may carry a degenerate c2 (flagged, not evaluable).
    """
    p = coulomb_params(inp)
    checks = []
    if not close(inp.beta, 0, tol):
        checks.append("beta = 0")
    if not close(p.a * p.b, 0, tol):
        checks.append("a*b = 0 (energy at the n = 0 spectrum value)")
    if checks:
        raise ConditionError("conditions violated: " + ", ".join(checks))
    g = as_complex(inp.gamma)
    c1 = 4 * (as_complex(inp.energy) + 1j * g + 1)
    r, r8 = cmath.sqrt(c1), cmath.sqrt(c1 - 8j * g)
    return HypergeometricForm((inp.m + 1) / 2 - (r - r8) / 8,
                              (inp.m + 1) / 2 - (r + r8) / 8,
                              1 - r / 4,
                              RationalMap((0.0, 0.0, 1.0)))


def coulomb_reduc_energy(beta, gamma, m: int) -> tuple[complex, complex]:
    """Energy and quantization index of the transported-pair condition
    q = a*b at d = 2:

        E = [-beta^4 + 4 gamma beta^3 - 2(3 gamma^2 + 2(m+1)^2) beta^2
             + 4 (gamma^3 + 2 (m+1)^2 gamma) beta - gamma^4
             + 4 m (m+2) (m+1)^2 gamma^2] / (4 (m+1)^2 (beta-gamma)^2),
        n = -(1+m) beta / (beta - gamma),

    with coulomb_spectrum(n, m, gamma) = E as an algebraic identity.
    """
    beta, gamma = as_complex(beta), as_complex(gamma)
    if close(beta, gamma, 1e-14):
        raise InvalidParameterError("beta = gamma is a pole of the reduction energy")
    mp = (m + 1) ** 2
    num = (-beta ** 4 + 4 * gamma * beta ** 3
           - 2 * (3 * gamma ** 2 + 2 * mp) * beta ** 2
           + 4 * (gamma ** 3 + 2 * mp * gamma) * beta
           - gamma ** 4 + 4 * m * (m + 2) * mp * gamma ** 2)
    e_reduc = num / (4 * mp * (beta - gamma) ** 2)
    n_reduc = -(1 + m) * beta / (beta - gamma)
    return e_reduc, n_reduc


@dataclass(frozen=True)
class QuarticMatchingResult:
    """Solution of the full matching system for the (2, 1) pair reached
    from d = -1: the (beta, gamma, E) values and the matched parameter set
    (which sits on the non-principal branch of the gamma_H square root)."""

    m: int
    beta: complex
    gamma: complex
    energy: complex
    params: HeunParams
    n_reduc: complex
    residual: float


def coulomb_quartic_matching(m: int, tol: float = 1e-10) -> QuarticMatchingResult:
    """Solve the matching conditions for the quartic reduction at d = 2
    after the d = -1 -> 2 identity:

        q' = a'b',  gamma_H = (a'+b'+2)/4,  delta = (a'+b')/2,

    over the square-root branches s+ = +-sqrt(1+E+i gamma),
    s- = +-sqrt(1+E-i gamma) and the separation constant beta.
    """
    dl = m + 1

    def system(x):
        sp = complex(x[0], x[1])
        sm = complex(x[2], x[3])
        beta = complex(x[4], x[5])
        g = 1 - sp
        a = 1 + m + (sm - sp) / 2
        b = 1 + m - (sm + sp) / 2
        q = 1j * beta / 2
        eq1 = 3 * g - (a - b) - dl - 2        # gamma_H = (a'+b'+2)/4
        eq2 = dl - (a - b) - g                # delta = (a'+b')/2
        eq3 = q - a * (b - dl)                # q' = a'b'
        return [eq1.real, eq1.imag, eq2.real, eq2.imag, eq3.real, eq3.imag]

    best = None
    for seed in ((1.0, 0.1, 1.0, -0.1, 0.5, 0.5),
                 (-m / 2 + 0.3, 0.2, m / 2 - 0.3, 0.1, 0.2, -0.4),
                 (0.5, -0.5, -0.5, 0.5, 1.0, 0.0)):
        sol = optimize.root(system, seed, method="hybr", tol=1e-13)
        res = float(np.max(np.abs(system(sol.x))))
        if best is None or res < best[1]:
            best = (sol.x, res)
    x, residual = best
    if residual > tol:
        raise ConditionError(f"matching system did not converge (residual {residual:.2e})")
    sp, sm = complex(x[0], x[1]), complex(x[2], x[3])
    beta = complex(x[4], x[5])
    energy = (sp ** 2 + sm ** 2) / 2 - 1
    gamma = (sp ** 2 - sm ** 2) / (2j)
    a = 1 + m + (sm - sp) / 2
    b = 1 + m - (sm + sp) / 2
    params = make_params(-1, 1j * beta / 2, a, b, 1 - sp, dl)
    # beta and gamma both vanish at the solution; the quantization index
    # -(1+m) beta/(beta-gamma) goes to 0 along beta -> 0 at gamma = 0
    if abs(beta) < 1e-8 and abs(gamma) < 1e-8:
        n_reduc: complex = 0.0
    else:
        n_reduc = -(1 + m) * beta / (beta - gamma)
    return QuarticMatchingResult(m, beta, gamma, energy, params, n_reduc, residual)


# ---------------------------------------------------------------------------
# Attractive inverse-square potential (s-wave bound states)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InverseSquareInput:
    """Effective parameters omega, omega4 in (0,1), kappa > 0."""

    omega: float
    omega4: float
    kappa: float

    def __post_init__(self):
        if not 0 < self.omega4 < 1:
            raise InvalidParameterError("omega4 must lie in (0, 1)")
        if self.kappa <= 0:
            raise InvalidParameterError("kappa must be positive")


def inverse_square_params(inp: InverseSquareInput) -> HeunParams:
    """gamma = 3/2, delta = 1/2 - omega4, epsilon = 2,
    q = 3/2 + kappa/(1-2 omega), d = 2 omega/(2 omega - 1),
    a, b = (3 - omega4 -+ nu)/2 with
    nu = sqrt((omega4-1)^2 - 4 kappa/(1-2 omega))."""
    om, om4, kap = inp.omega, inp.omega4, inp.kappa
    if abs(2 * om - 1) < 1e-12:
        raise InvalidParameterError("2*omega = 1 leaves the singular point d undefined")
    u = kap / (1 - 2 * om)
    nu = cmath.sqrt((om4 - 1) ** 2 - 4 * u)
    a = (3 - om4 - nu) / 2
    b = (3 - om4 + nu) / 2
    return make_params(2 * om / (2 * om - 1), 1.5 + u, a, b, 1.5, 0.5 - om4)


@dataclass(frozen=True)
class FeasibilityVerdict:
    pair: tuple[complex, complex]
    feasible: bool
    reason: str
    omega: float
    kappa: float | None = None
    omega4_threshold: float | None = None

    def to_json(self) -> dict:
        out = {"pair": [self.pair[0].real, self.pair[1].real],
               "feasible": self.feasible, "reason": self.reason,
               "omega": self.omega}
        if self.kappa is not None:
            out["kappa"] = self.kappa
        if self.omega4_threshold is not None:
            out["omega4_threshold"] = self.omega4_threshold
        return out


def inverse_square_feasibility(pair) -> FeasibilityVerdict:
    """Computed verdict on whether a catalog pair (d, p) can be realized
    with kappa > 0 and omega4 in (0, 1).

    q = a*b*p pins kappa/(1-2 omega) as a function of p and omega4; the
    sign constraints rule out every harmonic pair.
    """
    if hasattr(pair, "d") and hasattr(pair, "p"):
        dc, pc = complex(pair.d), complex(pair.p)
    else:
        dc, pc = complex(pair[0]), complex(pair[1])
    om = (dc / (2 * (dc - 1))).real       # solves d = 2 omega/(2 omega - 1)
    if close(pc, 1):
        # q = a*b forces omega4 = 1/2, which is exactly the delta = 0 case
        return FeasibilityVerdict((dc, pc), False,
                                  "q = a*b forces omega4 = 1/2: identical to the "
                                  "delta = 0 trivial case", om, omega4_threshold=0.5)
    if close(pc, 0):
        kap = -1.5 * (1 - 2 * om)
        return FeasibilityVerdict((dc, pc), False,
                                  f"q = 0 requires kappa = {kap:g} <= 0, prohibited",
                                  om, kappa=kap)
    # q = a*b*p with p not in {0, 1}: kappa/(1-2 omega) = (2p - p*omega4 - 3/2)/(1-p)
    pr = pc.real
    thresh = 2 - 3 / (2 * pr)            # kappa = 0 boundary in omega4
    k0 = (1 - 2 * om) * (2 * pr - 3 / 2) / (1 - pr)          # kappa at omega4 = 0
    k1 = (1 - 2 * om) * (2 * pr - pr - 3 / 2) / (1 - pr)     # kappa at omega4 = 1
    if k0 <= 0 and k1 <= 0:
        return FeasibilityVerdict((dc, pc), False,
                                  f"positive kappa requires omega4 beyond {thresh:g}, "
                                  "outside (0, 1)", om, omega4_threshold=thresh)
    return FeasibilityVerdict((dc, pc), True, "sign constraints admit a solution", om)


# ---------------------------------------------------------------------------
# Limit density of the discrete-time quantum walk
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuantumWalkInput:
    d: float = 4.0

    def __post_init__(self):
        if self.d <= 0:
            raise InvalidParameterError("d must be positive")


def quantum_walk_params(inp: QuantumWalkInput | float) -> HeunParams:
    """gamma = 1/2, delta = 2, a = b = 3/2, q = (2d+1)/4 at the given d."""
    d = inp.d if isinstance(inp, QuantumWalkInput) else float(inp)
    if d <= 0:
        raise InvalidParameterError("d must be positive")
    return make_params(d, (2 * d + 1) / 4, 1.5, 1.5, 0.5, 2.0)


def quantum_walk_density(z, d: float, normalized: bool = True) -> complex:
    """Limit density sqrt(1-d) / (pi (1-z) sqrt(d-z)); with normalized=True
    the overall constant is fixed so the value at z = 0 is 1, giving
    sqrt(d) / ((1-z) sqrt(d-z))."""
    z = as_complex(z)
    if d <= 0:
        raise InvalidParameterError("d must be positive")
    if close(z, 1) or z.real >= d:
        raise InvalidParameterError(f"density undefined at z = {z}")
    if normalized:
        return math.sqrt(d) / ((1 - z) * cmath.sqrt(d - z))
    return cmath.sqrt(1 - d) / (math.pi * (1 - z) * cmath.sqrt(d - z))


def quantum_walk_form(d: float = 4.0) -> HypergeometricForm:
    """The cubic reduction of the quantum-walk equation (requires d = 4,
    the only positive singular point compatible with q = a*b*p)."""
    return reduce_cubic_d4(quantum_walk_params(d))


# ---------------------------------------------------------------------------
# Charged particle on a sphere (magnetic field + Coulomb force)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChargedParticleInput:
    """Monopole strength S, spherical-harmonic index m, sphere radius,
    Bohr radius (may be math.inf), quantized energy eps_prime."""

    S: float
    m: int
    radius: float = 1.0
    bohr_radius: float = math.inf
    eps_prime: float = 0.0

    def __post_init__(self):
        if self.radius <= 0:
            raise InvalidParameterError("radius must be positive")
        if not self.bohr_radius > 0:
            raise InvalidParameterError("bohr_radius must be positive (or infinite)")


def charged_particle_offsets(S: float, m: int) -> tuple[float, float]:
    """a' = |S - m|, b' = |S + m|."""
    return abs(S - m), abs(S + m)


def charged_particle_params(inp: ChargedParticleInput, root_sign: int = +1) -> HeunParams:
    """gamma = 2a'+1, delta = epsilon = b'+1, d = -1, q = -4R/l0, and

        a, b = a' + b' + 1 +- sqrt(4 S^2 + 4 eps' + 1)

    (interchangeable; root_sign = -1 swaps them).  A negative radicand
    gives complex a, b, which are allowed and simply reported.
    """
    ap, bp = charged_particle_offsets(inp.S, inp.m)
    q = 0.0 if math.isinf(inp.bohr_radius) else -4 * inp.radius / inp.bohr_radius
    root = cmath.sqrt(4 * inp.S ** 2 + 4 * inp.eps_prime + 1)
    a = ap + bp + 1 + root_sign * root
    b = ap + bp + 1 - root_sign * root
    return make_params(-1, q, a, b, 2 * ap + 1, bp + 1)


def charged_particle_trivial_energy(a_prime: float, b_prime: float, S: float) -> float:
    """eps' = (a'+b')(a'+b'+2)/4 - S^2, the a*b = 0 energy condition."""
    s = a_prime + b_prime
    return s * (s + 2) / 4 - S ** 2
