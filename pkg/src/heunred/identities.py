"""Parameter identities that relocate the movable singular point d.

Each identity rewrites a local solution H(z) normalized to H(0) = 1 as
prefactor(z) * H'(m(z)) for a transformed parameter set, a Moebius argument
map m and a power prefactor.  The implemented maps move d inside the
cross-ratio set {d, d/(d-1), 1/d}, plus the special d = -1 -> 2 step.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    TOL_EXACT,
    HeunParams,
    InvalidParameterError,
    MobiusMap,
    PowerPrefactor,
    UnreachableTargetError,
    close,
    make_params,
    validate,
)

ORBIT_DEPTH = 3  # composition cap; reaches the full six-element orbit


@dataclass(frozen=True)
class TransformResult:
    """H_params(z) = prefactor(z) * H_{new params}(arg_map(z))."""

    params: HeunParams
    arg_map: MobiusMap
    prefactor: PowerPrefactor
    identity_id: str

    def to_json(self) -> dict:
        return {
            "identity": self.identity_id,
            "params": self.params.to_json(),
            "arg_map": {k: getattr(self.arg_map, k).real if getattr(self.arg_map, k).imag == 0
                        else [getattr(self.arg_map, k).real, getattr(self.arg_map, k).imag]
                        for k in ("a", "b", "c", "d")},
            "prefactor": self.prefactor.to_json(),
        }


def _checked(p: HeunParams) -> HeunParams:
    bad = validate(p)
    if bad:
        raise InvalidParameterError("; ".join(bad))
    return p


def identity_transform(p: HeunParams) -> TransformResult:
    return TransformResult(_checked(p), MobiusMap.identity(), PowerPrefactor(), "id")


def apply_line5(p: HeunParams) -> TransformResult:
    """d -> d/(d-1); argument z -> z/(z-1); prefactor (1-z)^(-a)."""
    _checked(p)
    d, q, a, b, g, dl = p.d, p.q, p.a, p.b, p.gamma, p.delta
    new = make_params(d / (d - 1), (a * d * g - q) / (d - 1), a, a - dl + 1, g, a - b + 1)
    return TransformResult(new, MobiusMap(1, 0, 1, -1),
                           PowerPrefactor.single(1, -1, -a), "line5")


def apply_line9(p: HeunParams) -> TransformResult:
    """d -> 1/d; argument z -> z/d; no prefactor."""
    _checked(p)
    d, q, a, b, g, dl = p.d, p.q, p.a, p.b, p.gamma, p.delta
    new = make_params(1 / d, q / d, a, b, g, a + b - g - dl + 1)
    return TransformResult(new, MobiusMap(1 / d, 0, 0, 1), PowerPrefactor(), "line9")


def apply_line17(p: HeunParams) -> TransformResult:
    """d = -1 -> 2; argument z -> 2z/(z+1); prefactor (1+z)^(-a).

    Only exposed at d = -1.  The argument map pairs with the parameter map
    so that singularities travel (0,1,-1,inf) -> (0,1,inf,2); series
    verification pins it down to 2z/(z+1).
    """
    _checked(p)
    if not close(p.d, -1):
        raise InvalidParameterError(f"identity requires d = -1, got d = {p.d}")
    q, a, b, g, dl = p.q, p.a, p.b, p.gamma, p.delta
    new = make_params(2, a * g - q, a, -b + dl + g, g, dl)
    return TransformResult(new, MobiusMap(2, 0, 1, 1),
                           PowerPrefactor.single(1, 1, -a), "line17")


IDENTITY_MAP = {
    "line5": apply_line5,
    "line9": apply_line9,
    "line17": apply_line17,
}


def compose(first: TransformResult, then: TransformResult) -> TransformResult:
    """Chain two transforms: first rewrites H, then rewrites the result."""
    arg = then.arg_map.compose(first.arg_map)
    pref = first.prefactor.times(then.prefactor.precompose(first.arg_map))
    ids = [i for i in (first.identity_id, then.identity_id) if i != "id"]
    return TransformResult(then.params, arg, pref, "+".join(ids) or "id")


def _applicable(p: HeunParams):
    yield apply_line5
    yield apply_line9
    if close(p.d, -1):
        yield apply_line17


def d_orbit(d, tol: float = TOL_EXACT) -> list[complex]:
    """All d-values reachable by composing the identities (depth-capped BFS)."""
    d = complex(d)
    scale = 1.0 + abs(d)
    if abs(d) <= tol * scale or abs(d - 1) <= tol * scale:
        raise InvalidParameterError(f"d = {d} is a fixed singular point")
    seen = [d]
    frontier = [d]
    for _ in range(ORBIT_DEPTH):
        nxt = []
        for v in frontier:
            images = [v / (v - 1), 1 / v]
            if close(v, -1, tol):
                images.append(2 + 0j)
            for w in images:
                if not any(close(w, s, tol) for s in seen):
                    seen.append(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def transport_routes(p: HeunParams, target_d, tol: float = TOL_EXACT,
                     max_depth: int = ORBIT_DEPTH) -> list[TransformResult]:
    """All depth-capped identity compositions landing on target_d, BFS order."""
    target = complex(target_d)
    found = []
    frontier = [identity_transform(p)]
    for depth in range(max_depth + 1):
        for t in frontier:
            if close(t.params.d, target, tol):
                found.append(t)
        if depth == max_depth:
            break
        frontier = [compose(t, op(t.params)) for t in frontier
                    for op in _applicable(t.params)]
    return found


def transport_to(p: HeunParams, target_d, tol: float = TOL_EXACT) -> TransformResult:
    """Shortest identity composition with params.d = target_d."""
    routes = transport_routes(p, target_d, tol)
    if not routes:
        raise UnreachableTargetError(
            f"target d = {target_d} not reachable from d = {p.d} within {ORBIT_DEPTH} steps")
    return routes[0]
