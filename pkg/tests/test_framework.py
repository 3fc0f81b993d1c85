"""Framework construction, validation, and graph helpers."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socialarg import (
    DuplicateArgument,
    NameCollision,
    NegativeCount,
    UnknownArgument,
    UnknownEndpoint,
    VoteRecord,
    attackers_of,
    build_framework,
    connected_component,
    decompose,
    disjoint_union,
)


def test_four_cycle_shape(four_cycle):
    assert four_cycle.argument_count == 4
    assert four_cycle.attack_count == 8
    assert four_cycle.arguments == ("a", "b", "c", "d")


def test_attackers_are_sorted(four_cycle):
    assert attackers_of(four_cycle, "a") == ("b", "d")
    assert attackers_of(four_cycle, "c") == ("b", "d")


def test_missing_votes_default_to_zero():
    fw = build_framework(["x"])
    assert fw.votes["x"] == VoteRecord(0, 0)
    assert fw.votes["x"].pro == 0 and fw.votes["x"].con == 0


def test_duplicate_attacks_collapse():
    fw = build_framework(["a", "b"], [("a", "b"), ("a", "b")])
    assert fw.attack_count == 1


def test_self_attack_is_legal():
    fw = build_framework(["s"], [("s", "s")])
    assert attackers_of(fw, "s") == ("s",)


def test_vote_records_accept_plain_tuples():
    fw = build_framework(["a"], votes={"a": (3, 1)})
    assert fw.votes["a"] == VoteRecord(3, 1)


def test_duplicate_argument_rejected():
    with pytest.raises(DuplicateArgument):
        build_framework(["a", "a"])


def test_attack_endpoint_must_be_declared():
    with pytest.raises(UnknownEndpoint):
        build_framework(["a"], [("a", "b")])
    with pytest.raises(UnknownEndpoint):
        build_framework(["a"], [("b", "a")])


def test_vote_key_must_be_declared():
    with pytest.raises(UnknownArgument):
        build_framework(["a"], votes={"b": (1, 0)})


def test_invalid_argument_id_rejected():
    with pytest.raises(UnknownArgument):
        build_framework(["has space"])
    with pytest.raises(UnknownArgument):
        build_framework([""])


def test_negative_votes_rejected():
    with pytest.raises(NegativeCount):
        build_framework(["a"], votes={"a": (-1, 0)})
    with pytest.raises(NegativeCount):
        build_framework(["a"], votes={"a": (0, -2)})


def test_index_of_unknown_argument(four_cycle):
    assert four_cycle.index_of("c") == 2
    with pytest.raises(UnknownArgument):
        four_cycle.index_of("zz")
    with pytest.raises(UnknownArgument):
        attackers_of(four_cycle, "zz")


def test_decompose_round_trips(four_cycle, two_component):
    for fw in (four_cycle, two_component):
        assert build_framework(*decompose(fw)) == fw


def test_disjoint_union_of_singletons():
    u = disjoint_union(build_framework(["a"]), build_framework(["b"]))
    assert u.argument_count == 2
    assert u.attack_count == 0


def test_disjoint_union_rejects_shared_names():
    fw = build_framework(["a", "b"])
    with pytest.raises(NameCollision):
        disjoint_union(fw, build_framework(["b"]))


def test_disjoint_union_with_isolated_padding(two_component):
    pad = build_framework(
        [f"p{i}" for i in range(1000)],
        votes={f"p{i}": (1, 0) for i in range(1000)},
    )
    u = disjoint_union(two_component, pad)
    assert u.argument_count == 1006
    assert u.attack_count == two_component.attack_count
    assert attackers_of(u, "f") == attackers_of(two_component, "f")


def test_connected_components_ignore_direction(two_component):
    assert connected_component(two_component, "a") == {"a", "b", "c"}
    assert connected_component(two_component, "f") == {"d", "e", "f"}
    assert connected_component(two_component, "d") == {"d", "e", "f"}


@st.composite
def frameworks(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    names = [f"n{i}" for i in range(n)]
    pairs = st.tuples(st.sampled_from(names), st.sampled_from(names))
    attacks = draw(st.lists(pairs, max_size=2 * n))
    votes = {
        name: (draw(st.integers(0, 9)), draw(st.integers(0, 9)))
        for name in names
    }
    return build_framework(names, attacks, votes)


@given(frameworks())
@settings(max_examples=60, deadline=None)
def test_components_partition_the_arguments(fw):
    seen = set()
    for a in fw.arguments:
        comp = connected_component(fw, a)
        assert a in comp
        assert comp <= set(fw.arguments)
        if a in seen:
            continue
        assert not (comp & seen)
        seen |= comp
    assert seen == set(fw.arguments)


@given(frameworks())
@settings(max_examples=60, deadline=None)
def test_attackers_come_from_the_attack_relation(fw):
    for a in fw.arguments:
        att = attackers_of(fw, a)
        assert list(att) == sorted(att)
        assert set(att) == {src for src, dst in fw.attacks if dst == a}


@given(frameworks())
@settings(max_examples=60, deadline=None)
def test_build_decompose_is_the_identity(fw):
    assert build_framework(*decompose(fw)) == fw


@given(frameworks(), frameworks())
@settings(max_examples=40, deadline=None)
def test_disjoint_union_is_commutative_after_renaming(fw1, fw2):
    renamed = build_framework(
        [f"r_{a}" for a in fw2.arguments],
        [(f"r_{s}", f"r_{t}") for s, t in fw2.attacks],
        {f"r_{a}": v for a, v in fw2.votes.items()},
    )
    left = disjoint_union(fw1, renamed)
    right = disjoint_union(renamed, fw1)
    assert left == right
    assert left.argument_count == fw1.argument_count + fw2.argument_count
    assert left.attack_count == fw1.attack_count + fw2.attack_count
