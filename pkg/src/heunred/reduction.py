"""Detection and construction of the hypergeometric reduction cases.

Five families: four "trivial" condition sets under which one singular point
of the equation drops out, and the rational-substitution reductions
H(t) = prefactor(t) * F(a2, b2; c2; R(t)) available on the harmonic
cross-ratio orbit, with R of degree 2, 3 or 4.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy.polynomial.polynomial as npoly

from .core import (
    ConditionError,
    HeunParams,
    InvalidParameterError,
    MobiusMap,
    PowerPrefactor,
    close,
    complex_from_json,
    complex_to_json,
    is_nonpositive_integer,
    validate,
)
from .identities import TransformResult, identity_transform, transport_routes

DEFAULT_CONDITION_TOL = 1e-10
MAX_RATIONAL_DEGREE = 4


def _trim(coeffs) -> tuple[complex, ...]:
    c = [complex(x) for x in coeffs]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class RationalMap:
    """R(z) = num(z)/den(z), ascending coefficients, degree <= 4."""

    num: tuple[complex, ...]
    den: tuple[complex, ...] = (1.0 + 0j,)

    def __post_init__(self):
        object.__setattr__(self, "num", _trim(self.num))
        object.__setattr__(self, "den", _trim(self.den))
        if all(x == 0 for x in self.den):
            raise InvalidParameterError("rational map with zero denominator")
        if self.degree > MAX_RATIONAL_DEGREE:
            raise InvalidParameterError(f"rational map degree {self.degree} > {MAX_RATIONAL_DEGREE}")

    @property
    def degree(self) -> int:
        return max(len(self.num), len(self.den)) - 1

    def __call__(self, z: complex) -> complex:
        return npoly.polyval(z, self.num) / npoly.polyval(z, self.den)

    def precompose(self, m: MobiusMap) -> "RationalMap":
        """R(m(z)) as a rational map of the same maximal degree."""
        n = self.degree
        lin_num = (m.b, m.a)   # (alpha z + beta) ascending
        lin_den = (m.d, m.c)
        num = [0.0]
        den = [0.0]
        for i, ci in enumerate(self.num):
            term = [ci]
            for _ in range(i):
                term = npoly.polymul(term, lin_num)
            for _ in range(n - i):
                term = npoly.polymul(term, lin_den)
            num = npoly.polyadd(num, term)
        for j, cj in enumerate(self.den):
            term = [cj]
            for _ in range(j):
                term = npoly.polymul(term, lin_num)
            for _ in range(n - j):
                term = npoly.polymul(term, lin_den)
            den = npoly.polyadd(den, term)
        return RationalMap(_trim(num), _trim(den))

    @staticmethod
    def identity() -> "RationalMap":
        return RationalMap((0.0, 1.0))

    @staticmethod
    def from_mobius(m: MobiusMap) -> "RationalMap":
        return RationalMap((m.b, m.a), (m.d, m.c))

    def to_json(self) -> dict:
        return {"num": [complex_to_json(c) for c in self.num],
                "den": [complex_to_json(c) for c in self.den]}

    @staticmethod
    def from_json(obj: dict) -> "RationalMap":
        return RationalMap(tuple(complex_from_json(c) for c in obj["num"]),
                           tuple(complex_from_json(c) for c in obj.get("den", [1.0])))


@dataclass(frozen=True)
class HypergeometricForm:
    """prefactor(z) * F(a2, b2; c2; R(z)) with F the Gauss series."""

    a2: complex
    b2: complex
    c2: complex
    arg_map: RationalMap
    prefactor: PowerPrefactor = PowerPrefactor()

    @property
    def degenerate_c2(self) -> bool:
        return is_nonpositive_integer(self.c2)

    def to_json(self) -> dict:
        return {"a2": complex_to_json(self.a2), "b2": complex_to_json(self.b2),
                "c2": complex_to_json(self.c2),
                "arg_num": [complex_to_json(c) for c in self.arg_map.num],
                "arg_den": [complex_to_json(c) for c in self.arg_map.den],
                "prefactor": self.prefactor.to_json()}

    @staticmethod
    def from_json(obj: dict) -> "HypergeometricForm":
        return HypergeometricForm(
            complex_from_json(obj["a2"]), complex_from_json(obj["b2"]),
            complex_from_json(obj["c2"]),
            RationalMap(tuple(complex_from_json(c) for c in obj["arg_num"]),
                        tuple(complex_from_json(c) for c in obj.get("arg_den", [1.0]))),
            PowerPrefactor.from_json(obj.get("prefactor", [])))


@dataclass(frozen=True)
class QuadratureDescriptor:
    """H = C1 + C2 * integral of z^(-gamma) (z-1)^(-delta) (z-d)^(-epsilon).

    The singular point at infinity is absent in this case.
    """

    exponent_at_zero: complex    # -gamma
    exponent_at_one: complex     # -delta
    exponent_at_d: complex       # -epsilon
    d: complex

    def integrand(self, z: complex) -> complex:
        return (complex(z) ** self.exponent_at_zero
                * (complex(z) - 1) ** self.exponent_at_one
                * (complex(z) - self.d) ** self.exponent_at_d)

    def to_json(self) -> dict:
        return {"exponent_at_zero": complex_to_json(self.exponent_at_zero),
                "exponent_at_one": complex_to_json(self.exponent_at_one),
                "exponent_at_d": complex_to_json(self.exponent_at_d),
                "d": complex_to_json(self.d)}


@dataclass(frozen=True)
class ReductionEntry:
    case: str
    conditions: tuple[str, ...]
    form: HypergeometricForm | None = None
    quadrature: QuadratureDescriptor | None = None
    route: str = "id"
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out: dict = {"case": self.case, "conditions": list(self.conditions),
                     "route": self.route}
        if self.form is not None:
            out["form"] = self.form.to_json()
        if self.quadrature is not None:
            out["quadrature"] = self.quadrature.to_json()
        if self.notes:
            out["notes"] = list(self.notes)
        return out


@dataclass(frozen=True)
class ReductionReport:
    params: HeunParams
    entries: tuple[ReductionEntry, ...]

    @property
    def cases(self) -> tuple[str, ...]:
        return tuple(e.case for e in self.entries)

    def to_json(self) -> dict:
        return {"params": self.params.to_json(),
                "entries": [e.to_json() for e in self.entries]}


@dataclass(frozen=True)
class CatalogPair:
    d: complex
    p: complex
    degree: int | None   # degree of R; None when it depends on the route


def catalog_pairs() -> list[CatalogPair]:
    """Implemented (d, p) pairs for the nontrivial reductions q = a*b*p."""
    return [
        CatalogPair(-1 + 0j, 0 + 0j, 2),
        CatalogPair(0.5 + 0j, 0.5 + 0j, None),  # served by transport; degree 2 or 4
        CatalogPair(2 + 0j, 1 + 0j, 4),
        CatalogPair(4 + 0j, 1 + 0j, 3),
    ]


def _require(p: HeunParams):
    bad = validate(p)
    if bad:
        raise InvalidParameterError("; ".join(bad))


def _failures(pairs, tol) -> list[str]:
    return [msg for ok, msg in pairs if not ok] if any(not ok for ok, _ in pairs) else []


def reduce_case1(p: HeunParams, tol: float = DEFAULT_CONDITION_TOL) -> HypergeometricForm:
    """epsilon = 0 and q = a*b*d: the z - d factor cancels, leaving
    F(a, b; gamma; z) on the singularities {0, 1, inf}."""
    _require(p)
    checks = [(close(p.epsilon, 0, tol), "epsilon = 0"),
              (close(p.q, p.a * p.b * p.d, tol), "q = a*b*d")]
    bad = [msg for ok, msg in checks if not ok]
    if bad:
        raise ConditionError("conditions violated: " + ", ".join(bad))
    return HypergeometricForm(p.a, p.b, p.gamma, RationalMap.identity())


def reduce_case2(p: HeunParams, tol: float = DEFAULT_CONDITION_TOL) -> HypergeometricForm:
    """delta = 0 and q = a*b: the z - 1 factor cancels; singularities
    {0, d, inf} rescale to give F(a, b; gamma; z/d)."""
    _require(p)
    checks = [(close(p.delta, 0, tol), "delta = 0"),
              (close(p.q, p.a * p.b, tol), "q = a*b")]
    bad = [msg for ok, msg in checks if not ok]
    if bad:
        raise ConditionError("conditions violated: " + ", ".join(bad))
    return HypergeometricForm(p.a, p.b, p.gamma, RationalMap((0.0, 1.0 / p.d)))


def reduce_case3(p: HeunParams, tol: float = DEFAULT_CONDITION_TOL) -> HypergeometricForm:
    """gamma = 0 and q = 0: the singularity at 0 becomes ordinary; the form
    F(a, b; delta; (z-1)/(d-1)) solves the equation on {1, d, inf}.

    The returned form is a solution of the equation, not the H(0) = 1
    Frobenius branch (which does not exist at gamma = 0); certify it with a
    residual check rather than a series comparison.
    """
    _require(p)
    checks = [(close(p.gamma, 0, tol), "gamma = 0"),
              (close(p.q, 0, tol), "q = 0")]
    bad = [msg for ok, msg in checks if not ok]
    if bad:
        raise ConditionError("conditions violated: " + ", ".join(bad))
    dm1 = p.d - 1
    return HypergeometricForm(p.a, p.b, p.delta, RationalMap((-1.0 / dm1, 1.0 / dm1)))


def reduce_case4(p: HeunParams, tol: float = DEFAULT_CONDITION_TOL) -> QuadratureDescriptor:
    """a*b = 0 and q = 0: the singularity at infinity is absent and the
    equation is first order in H'; solutions are C1 + C2 * quadrature."""
    _require(p)
    checks = [(close(p.a * p.b, 0, tol), "a*b = 0"),
              (close(p.q, 0, tol), "q = 0")]
    bad = [msg for ok, msg in checks if not ok]
    if bad:
        raise ConditionError("conditions violated: " + ", ".join(bad))
    return QuadratureDescriptor(-p.gamma, -p.delta, -p.epsilon, p.d)


def reduce_harmonic_d_minus1(p: HeunParams, tol: float = DEFAULT_CONDITION_TOL) -> HypergeometricForm:
    """d = -1, q = 0, delta = (a+b-gamma+1)/2: quadratic substitution
    H(z) = F(a/2, b/2; (gamma+1)/2; z^2)."""
    _require(p)
    checks = [(close(p.d, -1, tol), "d = -1"),
              (close(p.q, 0, tol), "q = 0"),
              (close(p.delta, (p.a + p.b - p.gamma + 1) / 2, tol),
               "delta = (a+b-gamma+1)/2")]
    bad = [msg for ok, msg in checks if not ok]
    if bad:
        raise ConditionError("conditions violated: " + ", ".join(bad))
    return HypergeometricForm(p.a / 2, p.b / 2, (p.gamma + 1) / 2,
                              RationalMap((0.0, 0.0, 1.0)))


def reduce_quartic_d2(p: HeunParams, tol: float = DEFAULT_CONDITION_TOL) -> HypergeometricForm:
    """d = 2, q = a*b, gamma = (a+b+2)/4, delta = (a+b)/2: quartic
    substitution H(t) = F(a/4, b/4; (a+b+2)/4; 1 - 4 [t(2-t) - 1/2]^2)."""
    _require(p)
    s = p.a + p.b
    checks = [(close(p.d, 2, tol), "d = 2"),
              (close(p.q, p.a * p.b, tol), "q = a*b"),
              (close(p.gamma, (s + 2) / 4, tol), "gamma = (a+b+2)/4"),
              (close(p.delta, s / 2, tol), "delta = (a+b)/2")]
    bad = [msg for ok, msg in checks if not ok]
    if bad:
        raise ConditionError("conditions violated: " + ", ".join(bad))
    # 1 - 4 [t(2-t) - 1/2]^2 = 8t - 20t^2 + 16t^3 - 4t^4
    return HypergeometricForm(p.a / 4, p.b / 4, (s + 2) / 4,
                              RationalMap((0.0, 8.0, -20.0, 16.0, -4.0)))


def reduce_cubic_d4(p: HeunParams, tol: float = DEFAULT_CONDITION_TOL) -> HypergeometricForm:
    """d = 4, q = a*b, gamma = 1/2, delta = 2(a+b)/3: cubic substitution
    H(z) = F(a/3, b/3; 1/2; 1 - (z-1)^2 (1 - z/4))."""
    _require(p)
    checks = [(close(p.d, 4, tol), "d = 4"),
              (close(p.q, p.a * p.b, tol), "q = a*b"),
              (close(p.gamma, 0.5, tol), "gamma = 1/2"),
              (close(p.delta, 2 * (p.a + p.b) / 3, tol), "delta = 2(a+b)/3")]
    bad = [msg for ok, msg in checks if not ok]
    if bad:
        raise ConditionError("conditions violated: " + ", ".join(bad))
    # 1 - (z-1)^2 (1 - z/4) = 9z/4 - 3z^2/2 + z^3/4
    return HypergeometricForm(p.a / 3, p.b / 3, 0.5,
                              RationalMap((0.0, 2.25, -1.5, 0.25)))


_NONTRIVIAL_TARGETS = [
    (-1 + 0j, 0 + 0j, reduce_harmonic_d_minus1),
    (2 + 0j, 1 + 0j, reduce_quartic_d2),
    (4 + 0j, 1 + 0j, reduce_cubic_d4),
]


def _compose_form(route: TransformResult, reduced: HypergeometricForm) -> HypergeometricForm:
    """H(z) = route.prefactor(z) * reduced evaluated at route.arg_map(z)."""
    return HypergeometricForm(
        reduced.a2, reduced.b2, reduced.c2,
        reduced.arg_map.precompose(route.arg_map),
        route.prefactor.times(reduced.prefactor))


def _nontrivial_tag(p: HeunParams, target_d: complex, target_p: complex,
                    tol: float) -> tuple[complex, complex]:
    """Report the transported target pair, except for inputs sitting on the
    (1/2, 1/2) catalog entry, which has no direct formula and is always
    served through transport."""
    if close(p.d, 0.5, tol) and close(p.q, 0.5 * p.a * p.b, tol):
        return 0.5 + 0j, 0.5 + 0j
    return target_d, target_p


def _fmt(z: complex) -> str:
    if z.imag == 0:
        r = z.real
        return str(int(r)) if r == int(r) else f"{r:g}"
    return f"{z.real:g}{z.imag:+g}j"


def detect_cases(p: HeunParams, tol: float = DEFAULT_CONDITION_TOL) -> ReductionReport:
    """Report every reduction case whose conditions hold within tol."""
    _require(p)
    entries: list[ReductionEntry] = []

    trivial = [
        ("case1_eps0", reduce_case1, ("epsilon = 0", "q = a*b*d")),
        ("case2_delta0", reduce_case2, ("delta = 0", "q = a*b")),
        ("case3_gamma0", reduce_case3, ("gamma = 0", "q = 0")),
        ("case4_trivial", reduce_case4, ("a*b = 0", "q = 0")),
    ]
    for tag, reducer, conds in trivial:
        try:
            out = reducer(p, tol)
        except ConditionError:
            continue
        notes = []
        if isinstance(out, HypergeometricForm):
            if out.degenerate_c2:
                notes.append("degenerate c2 (non-positive integer): not evaluable as a series")
            entries.append(ReductionEntry(tag, conds, form=out, notes=tuple(notes)))
        else:
            notes.append("singularity at infinity absent")
            entries.append(ReductionEntry(tag, conds, quadrature=out, notes=tuple(notes)))

    seen_tags = set()
    for target_d, target_p, reducer in _NONTRIVIAL_TARGETS:
        for candidate in (p, p.swapped()):
            routes = transport_routes(candidate, target_d, tol=max(tol, 1e-12))
            hit = None
            for route in routes:
                t = route.params
                if not close(t.q, t.a * t.b * target_p, tol):
                    continue
                try:
                    reduced = reducer(t, tol)
                except ConditionError:
                    continue
                hit = (route, reduced)
                break
            if hit is None:
                continue
            route, reduced = hit
            tag_d, tag_p = _nontrivial_tag(p, target_d, target_p, tol)
            tag = f"nontrivial({_fmt(tag_d)},{_fmt(tag_p)})"
            if tag in seen_tags:
                continue
            seen_tags.add(tag)
            form = _compose_form(route, reduced)
            conds = [f"q = a*b*p with p = {_fmt(target_p)} at d = {_fmt(target_d)}"]
            if route.identity_id != "id":
                conds.insert(0, f"d transported to {_fmt(target_d)} via {route.identity_id}")
            if candidate is not p:
                conds.append("exponent labels a, b interchanged")
            notes = []
            if form.degenerate_c2:
                notes.append("degenerate c2 (non-positive integer): not evaluable as a series")
            entries.append(ReductionEntry(tag, tuple(conds), form=form,
                                          route=route.identity_id, notes=tuple(notes)))
            break

    return ReductionReport(p, tuple(entries))
