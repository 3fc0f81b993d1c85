"""Immutable data model for social abstract argumentation frameworks.

A framework is a triple of arguments, a binary attack relation over them,
and a pro/con vote record per argument. Instances are frozen after
construction and every query is pure, so frameworks can be shared freely
across threads.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .errors import DuplicateArgument, NameCollision, NegativeCount, UnknownArgument, UnknownEndpoint

_NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")


class VoteRecord(NamedTuple):
    """Pro/con vote counts attached to one argument."""

    pro: int = 0
    con: int = 0


@dataclass(frozen=True)
class SocialFramework:
    """Arguments, attacks and votes, with precomputed attacker lists.

    ``arguments`` is kept in lexicographic order; all iteration in the
    package follows that order so runs are reproducible bit for bit.
    Use :func:`build_framework` instead of constructing directly.
    """

    arguments: tuple[str, ...]
    attacks: frozenset[tuple[str, str]]
    votes: dict[str, VoteRecord]
    _attackers: dict[str, tuple[str, ...]] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        attackers = {a: [] for a in self.arguments}
        for src, dst in self.attacks:
            attackers[dst].append(src)
        object.__setattr__(
            self, "_attackers", {a: tuple(sorted(lst)) for a, lst in attackers.items()}
        )

    @property
    def argument_count(self) -> int:
        return len(self.arguments)

    @property
    def attack_count(self) -> int:
        return len(self.attacks)

    def index_of(self, name: str) -> int:
        """Position of ``name`` in the canonical argument order."""
        try:
            return self.arguments.index(name)
        except ValueError:
            raise UnknownArgument(f"unknown argument {name!r}") from None


def build_framework(
    arguments: Iterable[str],
    attacks: Iterable[tuple[str, str]] = (),
    votes: Mapping[str, VoteRecord | tuple[int, int]] | None = None,
) -> SocialFramework:
    """Validate and assemble a framework.

    Missing vote entries default to (0, 0); duplicate attack pairs collapse
    into one. Self-attacks are legal: the attack relation is any subset of
    the argument pairs.

    Raises DuplicateArgument for a repeated id, UnknownEndpoint when an
    attack references an undeclared argument, UnknownArgument for a vote
    entry on an undeclared argument, and NegativeCount for negative votes.
    """
    seen = set()
    for name in arguments:
        if not isinstance(name, str) or not _NAME_RE.match(name):
            raise UnknownArgument(f"invalid argument id {name!r}: want letters, digits, underscore")
        if name in seen:
            raise DuplicateArgument(f"argument {name!r} declared twice")
        seen.add(name)
    ordered = tuple(sorted(seen))

    attack_set = set()
    for src, dst in attacks:
        if src not in seen:
            raise UnknownEndpoint(f"attack ({src!r}, {dst!r}): {src!r} is not declared")
        if dst not in seen:
            raise UnknownEndpoint(f"attack ({src!r}, {dst!r}): {dst!r} is not declared")
        attack_set.add((src, dst))

    vote_map = {a: VoteRecord(0, 0) for a in ordered}
    for name, record in (votes or {}).items():
        if name not in seen:
            raise UnknownArgument(f"votes for undeclared argument {name!r}")
        rec = VoteRecord(*record)
        if rec.pro < 0 or rec.con < 0:
            raise NegativeCount(f"negative vote count {rec} for {name!r}")
        vote_map[name] = rec

    return SocialFramework(ordered, frozenset(attack_set), vote_map)


def decompose(fw: SocialFramework) -> tuple[list[str], list[tuple[str, str]], dict[str, VoteRecord]]:
    """Inverse of build_framework: the plain (arguments, attacks, votes) triple."""
    return list(fw.arguments), sorted(fw.attacks), dict(fw.votes)


def attackers_of(fw: SocialFramework, a: str) -> tuple[str, ...]:
    """Arguments attacking ``a``, in canonical order."""
    try:
        return fw._attackers[a]
    except KeyError:
        raise UnknownArgument(f"unknown argument {a!r}") from None


def disjoint_union(fw1: SocialFramework, fw2: SocialFramework) -> SocialFramework:
    """Combine two frameworks with no shared arguments and no cross edges."""
    overlap = set(fw1.arguments) & set(fw2.arguments)
    if overlap:
        raise NameCollision(f"argument ids shared by both frameworks: {sorted(overlap)}")
    return build_framework(
        fw1.arguments + fw2.arguments,
        list(fw1.attacks) + list(fw2.attacks),
        {**fw1.votes, **fw2.votes},
    )


def connected_component(fw: SocialFramework, a: str) -> frozenset[str]:
    """Weakly connected component of ``a`` in the attack graph.

    Edge direction is ignored, so mutual reachability is symmetric and the
    components partition the argument set.
    """
    if a not in fw.votes:
        raise UnknownArgument(f"unknown argument {a!r}")
    neighbours: dict[str, set[str]] = {arg: set() for arg in fw.arguments}
    for src, dst in fw.attacks:
        neighbours[src].add(dst)
        neighbours[dst].add(src)
    seen = {a}
    queue = deque([a])
    while queue:
        current = queue.popleft()
        for nxt in neighbours[current]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)
