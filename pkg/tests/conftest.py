import itertools

import pytest

from gpdgalois import fixtures
from gpdgalois.scalar import FpSpan


@pytest.fixture(scope="session")
def fix1():
    return fixtures.fixture_one()


@pytest.fixture(scope="session")
def fix2():
    return fixtures.fixture_two()


@pytest.fixture(scope="session")
def fixc2():
    return fixtures.fixture_c2()


@pytest.fixture(scope="session")
def fixf4():
    return fixtures.fixture_f4()


@pytest.fixture(scope="session")
def fixf4swap():
    return fixtures.fixture_f4_swap()


@pytest.fixture(scope="session")
def all_galois_fixtures(fix1, fix2, fixc2, fixf4, fixf4swap):
    return [fix1, fix2, fixc2, fixf4, fixf4swap]


def brute_invariants(action, labels):
    """Oracle: filter every ring element by the defining identity."""
    R = action.ring
    out = set()
    for x in R.all_elements():
        if all(
            action.apply(h, x, truncate=True)
            == R.mul(x, R.unit(action.support[h].support))
            for h in labels
        ):
            out.add(x)
    return out


def brute_invariant_functions(X, action):
    """Oracle: filter every admissible function by equivariance."""
    from gpdgalois.mapalg import MapSpace

    space = MapSpace(X, action.ring)
    G = action.groupoid
    out = set()
    for f in space.all_elements():
        ok = True
        for g in G.elements:
            for y in X.fiber_points(G.d[g]):
                lhs = action.apply(g, space.value_at(f, y), truncate=True)
                if lhs != space.value_at(f, X.gamma[g][y]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(f)
    return out


def brute_subalgebras(R, K):
    """Oracle: every unital K-closed multiplicatively closed subspace of a
    small ring, found as spans of the K-basis plus up to two vectors."""
    elems = list(R.all_elements(bound=16))
    found = {}
    for extra in itertools.chain(
        [()], itertools.product(elems, repeat=1), itertools.product(elems, repeat=2)
    ):
        span = FpSpan(R.field.p)
        basis = []
        for v in itertools.chain(K.basis, [R.one()], extra):
            if span.insert(R.flat(v)):
                basis.append(v)
        members = set()
        for coeffs in itertools.product(range(R.field.p), repeat=len(basis)):
            members.add(R.int_combine(coeffs, basis))
        closed = all(R.mul(a, b) in members for a in members for b in members)
        k_closed = all(R.mul(c, a) in members for c in K.basis for a in members)
        if closed and k_closed:
            found[tuple(sorted(members))] = members
    return list(found.values())
