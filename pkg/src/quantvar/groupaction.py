"""Finite permutation groups acting on a point set.

Permutations are tuples of point indices: ``perm[i]`` is the index of the
image of point ``i``.  Groups are given extensionally (full element lists)
and validated, never assumed; a helper closes a generator set with a hard
cap so runaway inputs fail loudly instead of hanging.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Permutation = tuple[int, ...]

CLOSURE_CAP = 10_000


class GroupError(ValueError):
    """A proposed element list is not a valid permutation group."""


def identity(degree: int) -> Permutation:
    return tuple(range(degree))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Composition p after q: (p*q)[i] = p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(p)))


def invert(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def is_permutation(p: Sequence[int], degree: int) -> bool:
    return len(p) == degree and sorted(p) == list(range(degree))


@dataclass(frozen=True)
class GroupAction:
    """A validated permutation group: closed, with identity and inverses.

    Build instances through :func:`verify_group`; the constructor itself
    does not re-check the group axioms.
    """

    elements: tuple[Permutation, ...]
    identity_index: int

    @property
    def degree(self) -> int:
        return len(self.elements[0])

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self, p: Permutation) -> int:
        return self.elements.index(tuple(p))

    def inverse_index(self, i: int) -> int:
        return self.index_of(invert(self.elements[i]))

    def composition_table(self) -> list[list[int]]:
        """Total table t[i][j] = index of elements[i] * elements[j]."""
        lookup = {p: k for k, p in enumerate(self.elements)}
        return [
            [lookup[compose(a, b)] for b in self.elements]
            for a in self.elements
        ]


@dataclass
class InvariantMeasure:
    """Nonnegative point weights, constant on every group orbit."""

    weights: dict[str, float]

    def total(self) -> float:
        return sum(self.weights.values())


def verify_group(elements: Iterable[Sequence[int]]) -> GroupAction:
    """Validate an element list and return a GroupAction.

    Raises GroupError naming the first violation: an element that is not a
    bijection, a missing identity, a missing inverse, or a composition that
    escapes the set.
    """
    elems = [tuple(p) for p in elements]
    if not elems:
        raise GroupError("empty element list")
    degree = len(elems[0])
    for p in elems:
        if not is_permutation(p, degree):
            raise GroupError(f"not-a-bijection: {p!r} on {degree} points")
    if len(set(elems)) != len(elems):
        raise GroupError("duplicate elements")
    ident = identity(degree)
    if ident not in elems:
        raise GroupError("missing-identity")
    as_set = set(elems)
    for p in elems:
        if invert(p) not in as_set:
            raise GroupError(f"not-closed: inverse of {p!r} is missing")
    for p in elems:
        for q in elems:
            if compose(p, q) not in as_set:
                raise GroupError(f"not-closed: {p!r} composed with {q!r} is missing")
    return GroupAction(elements=tuple(elems), identity_index=elems.index(ident))


def close_generators(generators: Iterable[Sequence[int]], cap: int = CLOSURE_CAP) -> GroupAction:
    """Close a generator set under composition and inverse.

    Breadth-first closure; raises GroupError if the group would exceed
    ``cap`` elements.
    """
    gens = [tuple(p) for p in generators]
    if not gens:
        raise GroupError("empty generator list")
    degree = len(gens[0])
    for p in gens:
        if not is_permutation(p, degree):
            raise GroupError(f"not-a-bijection: {p!r} on {degree} points")
    seen: set[Permutation] = {identity(degree)}
    frontier = [identity(degree)]
    step = gens + [invert(p) for p in gens]
    while frontier:
        nxt = []
        for p in frontier:
            for s in step:
                e = compose(s, p)
                if e not in seen:
                    if len(seen) >= cap:
                        raise GroupError(f"closure exceeds cap of {cap} elements")
                    seen.add(e)
                    nxt.append(e)
        frontier = nxt
    ordered = sorted(seen)
    return GroupAction(elements=tuple(ordered), identity_index=ordered.index(identity(degree)))


def orbits(group: GroupAction) -> list[set[int]]:
    """Partition point indices into group orbits (flood fill)."""
    degree = group.degree
    remaining = set(range(degree))
    out: list[set[int]] = []
    while remaining:
        start = min(remaining)
        orbit = {start}
        frontier = [start]
        while frontier:
            i = frontier.pop()
            for p in group.elements:
                j = p[i]
                if j not in orbit:
                    orbit.add(j)
                    frontier.append(j)
        out.append(orbit)
        remaining -= orbit
    return out


def is_transitive(group: GroupAction) -> bool:
    return len(orbits(group)) == 1


def has_trivial_isotropy(group: GroupAction, base_index: int = 0) -> bool:
    """True iff only the identity fixes the base point.

    For transitive actions the choice of base point does not matter; the
    default is the first point.
    """
    for i, p in enumerate(group.elements):
        if p[base_index] == base_index and i != group.identity_index:
            return False
    return True


def counting_measure(points: Sequence[str]) -> InvariantMeasure:
    """Uniform weight one per point; invariant under any permutation group."""
    return InvariantMeasure(weights={p: 1.0 for p in points})


def is_invariant(measure: InvariantMeasure, group: GroupAction, points: Sequence[str]) -> bool:
    """Exact check that weight(k.p) == weight(p) for every element and point."""
    w = [measure.weights[p] for p in points]
    for perm in group.elements:
        for i in range(group.degree):
            if w[perm[i]] != w[i]:
                return False
    return True
