"""Finite split G-sets: validation, equivariant maps, isomorphism search.

A G-set here is always split: the carrier is the disjoint union of the
fibers X_e over the identities e, and the bijections gamma_g map the fiber
of d(g) to the fiber of r(g).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CarrierMismatch,
    CompositionFailure,
    FiberMismatch,
    InvalidInput,
    NotIdentityOnFiber,
    NotSplit,
    OracleMismatch,
    SizeBoundExceeded,
    UnknownPoint,
)

DEFAULT_MAX_POINTS = 20


class GSet:
    """Validated split G-set; construct through :func:`validate_gset`."""

    def __init__(self, groupoid, carrier, fiber, gamma):
        self.groupoid = groupoid
        self.carrier = tuple(carrier)
        self.fiber = dict(fiber)
        self.gamma = {g: dict(m) for g, m in gamma.items()}

    def fiber_points(self, e) -> tuple:
        return tuple(x for x in self.carrier if self.fiber[x] == e)

    def points_of(self, g) -> tuple:
        """The fiber X_g = X_{r(g)}."""
        return self.fiber_points(self.groupoid.r[g])

    def apply(self, g, x):
        if x not in self.fiber:
            raise UnknownPoint(f"unknown point {x!r}")
        return self.gamma[g][x]

    def __repr__(self):
        return f"GSet({len(self.carrier)} points over {len(self.groupoid.elements)} elements)"


def validate_gset(groupoid, carrier, fiber, gamma) -> GSet:
    """Exhaustively check the action axioms and splitness.

    gamma maps each non-identity g to a point map on the fiber of d(g);
    identity entries are filled in (and cross-checked when supplied).
    """
    carrier = tuple(carrier)
    if len(set(carrier)) != len(carrier):
        raise InvalidInput("duplicate carrier points")
    G = groupoid
    identities = set(G.identities)
    for x in carrier:
        if x not in fiber:
            raise NotSplit(f"point {x!r} lies in no fiber")
        if fiber[x] not in identities:
            raise NotSplit(f"point {x!r} assigned to non-identity {fiber[x]!r}")
    for x in fiber:
        if x not in set(carrier):
            raise UnknownPoint(f"fiber entry for unknown point {x!r}")

    fibers = {e: tuple(x for x in carrier if fiber[x] == e) for e in G.identities}
    full_gamma = {}
    for g in G.elements:
        src = fibers[G.d[g]]
        tgt = set(fibers[G.r[g]])
        if g in identities and g not in gamma:
            full_gamma[g] = {x: x for x in src}
            continue
        if g not in gamma:
            raise InvalidInput(f"missing gamma for {g!r}")
        m = dict(gamma[g])
        if set(m) != set(src):
            raise FiberMismatch(
                f"gamma[{g!r}] defined on {sorted(map(str, m))}, expected fiber of {G.d[g]!r}"
            )
        if set(m.values()) != tgt:
            raise FiberMismatch(f"gamma[{g!r}] is not onto the fiber of {G.r[g]!r}")
        if len(set(m.values())) != len(m):
            raise FiberMismatch(f"gamma[{g!r}] is not injective")
        full_gamma[g] = m
    for e in G.identities:
        for x in fibers[e]:
            if full_gamma[e][x] != x:
                raise NotIdentityOnFiber(f"gamma[{e!r}] moves {x!r}")
    for g, h in G.composable:
        gh = G.product[(g, h)]
        for x in fibers[G.d[h]]:
            if full_gamma[g][full_gamma[h][x]] != full_gamma[gh][x]:
                raise CompositionFailure(
                    f"gamma[{g!r}] o gamma[{h!r}] != gamma[{gh!r}] at {x!r}",
                    witness=(g, h, x),
                )
    return GSet(groupoid, carrier, fiber, full_gamma)


@dataclass
class GMap:
    """A point map between two G-sets over the same groupoid."""

    source: GSet
    target: GSet
    mapping: dict


@dataclass
class GMapReport:
    valid: bool
    isomorphism: bool
    certificate: str | None = None


def check_gmap(psi: GMap) -> GMapReport:
    """Equivariance and fiber preservation; flags isomorphisms."""
    src, tgt = psi.source, psi.target
    if src.groupoid is not tgt.groupoid and src.groupoid.elements != tgt.groupoid.elements:
        raise CarrierMismatch("source and target live over different groupoids")
    if set(psi.mapping) != set(src.carrier):
        raise CarrierMismatch("mapping domain differs from source carrier")
    for x, y in psi.mapping.items():
        if y not in tgt.fiber:
            raise UnknownPoint(f"image {y!r} not in target carrier")
    G = src.groupoid
    for x, y in psi.mapping.items():
        if src.fiber[x] != tgt.fiber[y]:
            return GMapReport(False, False, f"fiber not preserved at {x!r}")
    for g in G.elements:
        for x in src.fiber_points(G.d[g]):
            if psi.mapping[src.gamma[g][x]] != tgt.gamma[g][psi.mapping[x]]:
                return GMapReport(False, False, f"not equivariant at ({g!r}, {x!r})")
    bijective = len(set(psi.mapping.values())) == len(src.carrier) == len(tgt.carrier)
    return GMapReport(True, bijective, None)


def gset_isomorphic(a: GSet, b: GSet, max_points: int = DEFAULT_MAX_POINTS):
    """Search for a G-set isomorphism by backtracking over fiber-respecting
    bijections; returns a GMap or None.  Deterministic: points are tried in
    carrier order."""
    if len(a.carrier) > max_points or len(b.carrier) > max_points:
        raise SizeBoundExceeded(
            f"carrier larger than {max_points}; raise the bound to proceed"
        )
    if a.groupoid is not b.groupoid and a.groupoid.elements != b.groupoid.elements:
        raise CarrierMismatch("G-sets over different groupoids")
    G = a.groupoid
    if len(a.carrier) != len(b.carrier):
        return None
    for e in G.identities:
        if len(a.fiber_points(e)) != len(b.fiber_points(e)):
            return None

    order = list(a.carrier)
    assignment: dict = {}
    used: set = set()

    def consistent(x, y) -> bool:
        for g in G.elements:
            if a.fiber[x] == G.d[g]:
                xx = a.gamma[g][x]
                if xx in assignment and assignment[xx] != b.gamma[g][y]:
                    return False
            if a.fiber[x] == G.r[g]:
                for w, ww in assignment.items():
                    if a.fiber[w] == G.d[g] and a.gamma[g][w] == x:
                        if b.gamma[g][ww] != y:
                            return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in b.fiber_points(a.fiber[x]):
            if y in used:
                continue
            if not consistent(x, y):
                continue
            assignment[x] = y
            used.add(y)
            if extend(i + 1):
                return True
            del assignment[x]
            used.discard(y)
        return False

    if not extend(0):
        return None
    psi = GMap(a, b, dict(assignment))
    report = check_gmap(psi)
    if not report.isomorphism:
        raise OracleMismatch("backtracking returned a non-isomorphism")
    return psi
