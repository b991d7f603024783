"""Finite groupoids as validated partial product tables.

The product is given extensionally as triples; sources d, targets r and
inverses are derived from the table and cross-checked against any values
the caller supplies.  Validation is exhaustive: the defining axioms and all
their standard consequences are tested on every element, pair and triple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import gset as gset_mod
from .errors import (
    AxiomViolation,
    InvalidInput,
    MissingIdentity,
    MissingInverse,
    NonUniqueInverse,
    NotSubgroupoid,
    NotWide,
    OracleMismatch,
    SizeBoundExceeded,
    UnknownLabel,
)

DEFAULT_MAX_ELEMENTS = 20


class Groupoid:
    """Validated finite groupoid; construct through :func:`validate_groupoid`."""

    def __init__(self, elements, product, inverse, d, r, identities):
        self.elements = tuple(elements)
        self.product = dict(product)
        self.inverse = dict(inverse)
        self.d = dict(d)
        self.r = dict(r)
        self.identities = tuple(identities)
        self.composable = tuple(
            p for p in itertools.product(self.elements, repeat=2) if p in self.product
        )
        self._index = {g: i for i, g in enumerate(self.elements)}

    def index(self, g) -> int:
        try:
            return self._index[g]
        except KeyError:
            raise UnknownLabel(f"unknown element {g!r}") from None

    def is_identity(self, g) -> bool:
        return g in self._index and self.d[g] == g == self.r[g]

    def try_mul(self, g, h):
        return self.product.get((g, h))

    def __repr__(self):
        return f"Groupoid({list(self.elements)})"


def validate_groupoid(elements, products, inverses=None) -> Groupoid:
    """Build a groupoid from raw data, verifying every axiom exhaustively."""
    elements = list(elements)
    if not elements:
        raise InvalidInput("empty element list")
    if len(set(elements)) != len(elements):
        raise InvalidInput("duplicate element labels")
    known = set(elements)
    product: dict = {}
    for triple in products:
        if len(triple) != 3:
            raise InvalidInput(f"product triple {triple!r} must have 3 entries")
        a, b, ab = triple
        for lbl in (a, b, ab):
            if lbl not in known:
                raise UnknownLabel(f"product triple references unknown label {lbl!r}")
        if (a, b) in product and product[(a, b)] != ab:
            raise InvalidInput(f"conflicting products for ({a!r}, {b!r})")
        product[(a, b)] = ab

    d, r = {}, {}
    for g in elements:
        right_units = [x for x in elements if product.get((g, x)) == g]
        left_units = [x for x in elements if product.get((x, g)) == g]
        if not right_units or not left_units:
            raise MissingIdentity(f"no d/r identities for {g!r}")
        if len(right_units) > 1 or len(left_units) > 1:
            raise AxiomViolation("unique-identities", (g, right_units, left_units))
        d[g], r[g] = right_units[0], left_units[0]

    # Associativity and the existence axioms, on every triple.
    for g, h, l in itertools.product(elements, repeat=3):
        gh = product.get((g, h))
        hl = product.get((h, l))
        lhs = product.get((gh, l)) if gh is not None else None
        rhs = product.get((g, hl)) if hl is not None else None
        both_factors = gh is not None and hl is not None
        if (rhs is not None) != both_factors:
            raise AxiomViolation("existence", (g, h, l))
        if (rhs is not None) != (lhs is not None):
            raise AxiomViolation("existence", (g, h, l))
        if rhs is not None and lhs != rhs:
            raise AxiomViolation("associativity", (g, h, l))

    # The product is defined exactly on pairs with matching endpoints.
    for g, h in itertools.product(elements, repeat=2):
        if ((g, h) in product) != (d[g] == r[h]):
            raise AxiomViolation("composability", (g, h))

    inverse = {}
    for g in elements:
        cands = [
            x
            for x in elements
            if product.get((x, g)) == d[g] and product.get((g, x)) == r[g]
        ]
        if not cands:
            raise MissingInverse(f"no inverse for {g!r}")
        if len(cands) > 1:
            raise NonUniqueInverse(f"multiple inverses for {g!r}: {cands}")
        inverse[g] = cands[0]
    if inverses:
        for g, gi in inverses.items():
            if g not in known or gi not in known:
                raise UnknownLabel("inverse map references unknown label")
            if inverse[g] != gi:
                raise AxiomViolation("user-inverse", (g, gi, inverse[g]))

    identities = [g for g in elements if any(d[x] == g or r[x] == g for x in elements)]

    # Standard consequences, tested rather than assumed.
    for g in elements:
        gi = inverse[g]
        if d[gi] != r[g] or r[gi] != d[g]:
            raise AxiomViolation("inverse-endpoints", g)
        if inverse[gi] != g:
            raise AxiomViolation("double-inverse", g)
    for (g, h), gh in product.items():
        if d[gh] != d[h] or r[gh] != r[g]:
            raise AxiomViolation("product-endpoints", (g, h))
        if ((inverse[h], inverse[g]) in product) != ((g, h) in product):
            raise AxiomViolation("inverse-pair", (g, h))
        if product[(inverse[h], inverse[g])] != inverse[gh]:
            raise AxiomViolation("antihomomorphism", (g, h))
        if (gh in identities) != (g == inverse[h]):
            raise AxiomViolation("identity-product", (g, h))
    for e in identities:
        if d[e] != e or r[e] != e or inverse[e] != e:
            raise AxiomViolation("identity-fixed", e)
    for g, h in itertools.product(elements, repeat=2):
        right_div = any(product.get((h, l)) == g for l in elements)
        if right_div != (r[g] == r[h]):
            raise AxiomViolation("right-division", (g, h))
        left_div = any(product.get((l, h)) == g for l in elements)
        if left_div != (d[g] == d[h]):
            raise AxiomViolation("left-division", (g, h))

    return Groupoid(elements, product, inverse, d, r, identities)


def composable(G: Groupoid) -> tuple:
    """All composable pairs; cross-checked against the endpoint rule."""
    pairs = tuple(
        (g, h)
        for g, h in itertools.product(G.elements, repeat=2)
        if G.d[g] == G.r[h]
    )
    if set(pairs) != set(G.product):
        raise AxiomViolation("composability", None)
    return pairs


@dataclass(frozen=True)
class SubgroupoidSpec:
    """A product- and inverse-closed subset, in ambient element order."""

    labels: tuple

    def __contains__(self, g):
        return g in self.labels

    def __len__(self):
        return len(self.labels)


def _closure_certificate(G: Groupoid, subset) -> str | None:
    sset = set(subset)
    for g in subset:
        if g not in set(G.elements):
            raise UnknownLabel(f"unknown element {g!r}")
    for g, h in itertools.product(subset, repeat=2):
        gh = G.product.get((g, h))
        if gh is not None and gh not in sset:
            return f"not closed under product: {g!r}*{h!r}={gh!r}"
    for g in subset:
        if G.inverse[g] not in sset:
            return f"not closed under inverse: {g!r}"
    return None


def make_subgroupoid(G: Groupoid, labels) -> SubgroupoidSpec:
    ordered = tuple(g for g in G.elements if g in set(labels))
    if len(ordered) != len(set(labels)):
        raise UnknownLabel("subgroupoid references unknown labels")
    cert = _closure_certificate(G, ordered)
    if cert:
        raise NotSubgroupoid(cert)
    if not ordered:
        raise NotSubgroupoid("empty subset")
    return SubgroupoidSpec(ordered)


def is_wide_subgroupoid(G: Groupoid, labels) -> tuple[bool, str | None]:
    """True iff the subset is a subgroupoid containing every identity."""
    subset = tuple(g for g in G.elements if g in set(labels))
    unknown = set(labels) - set(G.elements)
    if unknown:
        raise UnknownLabel(f"unknown labels {sorted(map(str, unknown))}")
    cert = _closure_certificate(G, subset)
    if cert:
        return False, cert
    missing = [e for e in G.identities if e not in set(subset)]
    if missing:
        return False, f"missing identities: {missing}"
    return True, None


def enumerate_wide_subgroupoids(
    G: Groupoid, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> list[SubgroupoidSpec]:
    """All wide subgroupoids, ordered by size then lexicographically by
    element index.  Brute force over subsets containing every identity."""
    if len(G.elements) > max_elements:
        raise SizeBoundExceeded(
            f"|G|={len(G.elements)} exceeds bound {max_elements}"
        )
    non_identities = [g for g in G.elements if g not in set(G.identities)]
    out = []
    for size in range(len(non_identities) + 1):
        for combo in itertools.combinations(range(len(non_identities)), size):
            subset = list(G.identities) + [non_identities[i] for i in combo]
            if _closure_certificate(G, subset) is None:
                out.append(make_subgroupoid(G, subset))
    return out


class CosetSpace:
    """Left cosets gH of a wide subgroupoid, with fixed representatives."""

    def __init__(self, groupoid, subgroupoid, classes, representatives, class_of):
        self.groupoid = groupoid
        self.subgroupoid = subgroupoid
        self.classes = classes
        self.representatives = representatives
        self.class_of = class_of


def coset_space(G: Groupoid, H) -> CosetSpace:
    """Partition G into left cosets; a ~ b iff b^{-1}a exists and lies in H."""
    labels = H.labels if isinstance(H, SubgroupoidSpec) else tuple(H)
    wide, cert = is_wide_subgroupoid(G, labels)
    if not wide:
        raise NotWide(cert)
    hset = set(labels)

    def related(a, b):
        prod = G.product.get((G.inverse[b], a))
        return prod is not None and prod in hset

    class_of = {}
    classes = []
    reps = []
    for a in G.elements:
        if a in class_of:
            continue
        members = tuple(b for b in G.elements if related(b, a))
        if a not in members:
            raise OracleMismatch(f"{a!r} not in its own coset")
        for b in members:
            if b in class_of:
                raise OracleMismatch("cosets do not partition the groupoid")
            class_of[b] = len(classes)
        classes.append(members)
        reps.append(a)
    # symmetry and transitivity, checked as a partition property
    for a, b in itertools.product(G.elements, repeat=2):
        if related(a, b) != (class_of[a] == class_of[b]):
            raise OracleMismatch(f"coset relation not an equivalence at ({a!r}, {b!r})")
    return CosetSpace(G, SubgroupoidSpec(labels), tuple(classes), tuple(reps), class_of)


def left_transversal(G: Groupoid, H) -> list:
    """One representative per left coset, smallest label in input order."""
    return list(coset_space(G, H).representatives)


def _coset_label(rep) -> str:
    return f"{rep}H"


def quotient_gset(G: Groupoid, H) -> gset_mod.GSet:
    """The coset space G/H as a split G-set with gamma_g(lH) = (gl)H."""
    cs = coset_space(G, H)
    carrier = [_coset_label(rep) for rep in cs.representatives]
    fiber = {
        _coset_label(rep): G.r[rep] for rep in cs.representatives
    }
    gamma = {}
    for g in G.elements:
        m = {}
        for idx, rep in enumerate(cs.representatives):
            if G.r[rep] != G.d[g]:
                continue
            targets = {cs.class_of[G.product[(g, member)]] for member in cs.classes[idx]}
            if len(targets) != 1:
                raise OracleMismatch(f"coset action ill-defined at ({g!r}, {rep!r}H)")
            m[_coset_label(rep)] = _coset_label(cs.representatives[targets.pop()])
        gamma[g] = m
    return gset_mod.validate_gset(G, carrier, fiber, gamma)


def regular_gset(G: Groupoid) -> gset_mod.GSet:
    """G acting on itself by left translation, fibered by the target map."""
    fiber = {l: G.r[l] for l in G.elements}
    gamma = {
        g: {l: G.product[(g, l)] for l in G.elements if G.r[l] == G.d[g]}
        for g in G.elements
    }
    return gset_mod.validate_gset(G, G.elements, fiber, gamma)
