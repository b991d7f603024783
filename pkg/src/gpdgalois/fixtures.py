"""Canonical fixtures used across the test suite and shipped as CLI files.

fixture_one: a single arrow between two objects acting on four blocks.
fixture_two: fixture_one plus a disconnected loop swapping two extra
blocks; its loop ideal is not faithful over the invariants.
fixture_c2: the order-two group swapping two blocks.
fixture_f4: the order-two group acting on one quartic-field block by the
field automorphism.
fixture_f4_swap: swap of two quartic blocks with a twist on both legs, so
the invariants form a single quartic field block.
"""

from __future__ import annotations

from dataclasses import dataclass

from .action import AlgebraAction, validate_action
from .blockring import BlockRing, make_ring
from .groupoid import Groupoid, validate_groupoid
from .scalar import FieldSpec, make_field


@dataclass
class Fixture:
    name: str
    field: FieldSpec
    groupoid: Groupoid
    ring: BlockRing
    action: AlgebraAction
    wide_subgroupoids: dict


def _two_object_arrow_tables():
    elements = ["e1", "e2", "g", "gi"]
    products = [
        ("e1", "e1", "e1"),
        ("e2", "e2", "e2"),
        ("g", "e1", "g"),
        ("e2", "g", "g"),
        ("gi", "e2", "gi"),
        ("e1", "gi", "gi"),
        ("gi", "g", "e1"),
        ("g", "gi", "e2"),
    ]
    inverses = {"e1": "e1", "e2": "e2", "g": "gi", "gi": "g"}
    return elements, products, inverses


def fixture_one() -> Fixture:
    field = make_field(2)
    G = validate_groupoid(*_two_object_arrow_tables())
    R = make_ring(
        field,
        ["v1", "v2", "v3", "v4"],
        {"e1": ["v1", "v2"], "e2": ["v3", "v4"]},
        identities=G.identities,
    )
    A = validate_action(
        G,
        R,
        {"g": {"v1": "v3", "v2": "v4"}, "gi": {"v3": "v1", "v4": "v2"}},
    )
    return Fixture(
        "fixture_one",
        field,
        G,
        R,
        A,
        {"G0": ("e1", "e2"), "all": ("e1", "e2", "g", "gi")},
    )


def fixture_two() -> Fixture:
    field = make_field(2)
    elements, products, inverses = _two_object_arrow_tables()
    elements += ["e3", "h"]
    products += [
        ("e3", "e3", "e3"),
        ("h", "e3", "h"),
        ("e3", "h", "h"),
        ("h", "h", "e3"),
    ]
    inverses.update({"e3": "e3", "h": "h"})
    G = validate_groupoid(elements, products, inverses)
    R = make_ring(
        field,
        ["v1", "v2", "v3", "v4", "v5", "v6"],
        {"e1": ["v1", "v2"], "e2": ["v3", "v4"], "e3": ["v5", "v6"]},
        identities=G.identities,
    )
    A = validate_action(
        G,
        R,
        {
            "g": {"v1": "v3", "v2": "v4"},
            "gi": {"v3": "v1", "v4": "v2"},
            "h": {"v5": "v6", "v6": "v5"},
        },
    )
    return Fixture(
        "fixture_two",
        field,
        G,
        R,
        A,
        {
            "G0": ("e1", "e2", "e3"),
            "loop": ("e1", "e2", "e3", "h"),
            "arrow": ("e1", "e2", "e3", "g", "gi"),
            "all": ("e1", "e2", "e3", "g", "gi", "h"),
        },
    )


def fixture_c2() -> Fixture:
    field = make_field(2)
    G = validate_groupoid(
        ["e", "a"],
        [("e", "e", "e"), ("e", "a", "a"), ("a", "e", "a"), ("a", "a", "e")],
        {"e": "e", "a": "a"},
    )
    R = make_ring(field, ["w1", "w2"], {"e": ["w1", "w2"]}, identities=G.identities)
    A = validate_action(G, R, {"a": {"w1": "w2", "w2": "w1"}})
    return Fixture(
        "fixture_c2", field, G, R, A, {"G0": ("e",), "all": ("e", "a")}
    )


def fixture_f4() -> Fixture:
    field = make_field(2, 2, [1, 1, 1])
    G = validate_groupoid(
        ["e", "a"],
        [("e", "e", "e"), ("e", "a", "a"), ("a", "e", "a"), ("a", "a", "e")],
        {"e": "e", "a": "a"},
    )
    R = make_ring(field, ["w"], {"e": ["w"]}, identities=G.identities)
    A = validate_action(G, R, {"a": {"w": "w"}}, {"a": {"w": 1}})
    return Fixture(
        "fixture_f4", field, G, R, A, {"G0": ("e",), "all": ("e", "a")}
    )


def fixture_f4_swap() -> Fixture:
    field = make_field(2, 2, [1, 1, 1])
    G = validate_groupoid(
        ["e", "a"],
        [("e", "e", "e"), ("e", "a", "a"), ("a", "e", "a"), ("a", "a", "e")],
        {"e": "e", "a": "a"},
    )
    R = make_ring(field, ["w1", "w2"], {"e": ["w1", "w2"]}, identities=G.identities)
    A = validate_action(
        G, R, {"a": {"w1": "w2", "w2": "w1"}}, {"a": {"w1": 1, "w2": 1}}
    )
    return Fixture(
        "fixture_f4_swap", field, G, R, A, {"G0": ("e",), "all": ("e", "a")}
    )


ALL_FIXTURES = [fixture_one, fixture_two, fixture_c2, fixture_f4, fixture_f4_swap]
