"""Shared fixtures: the two reference frameworks used across the suite."""

import pytest

from socialarg import SemanticsConfig, build_framework


def mutual(*pairs):
    """Expand undirected pairs into both directed attacks."""
    out = []
    for a, b in pairs:
        out.append((a, b))
        out.append((b, a))
    return out


@pytest.fixture
def cfg():
    return SemanticsConfig(epsilon=0.1)


@pytest.fixture
def four_cycle():
    """Four arguments in a ring of mutual attacks, one (1, 0) vote each.

    This framework has three models: a symmetric one near 0.36573 and two
    alternating ones swapping 0.88875 and 0.01125 around the ring.
    """
    names = ["a", "b", "c", "d"]
    attacks = mutual(("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"))
    votes = {n: (1, 0) for n in names}
    return build_framework(names, attacks, votes)


@pytest.fixture
def two_component():
    """A 3-clique {a, b, c} plus d and e both attacking f.

    All arguments carry one pro vote except f, which carries five. The
    components are disjoint, so f's score is unaffected by the clique.
    """
    names = ["a", "b", "c", "d", "e", "f"]
    attacks = mutual(("a", "b"), ("b", "c"), ("c", "a"))
    attacks += [("d", "f"), ("e", "f")]
    votes = {n: (1, 0) for n in "abcde"}
    votes["f"] = (5, 0)
    return build_framework(names, attacks, votes)
