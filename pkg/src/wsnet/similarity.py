"""The four similarity functions over operation signatures.

Each predicate compares two operations purely through set relations on their
input/output parameter-name sets, with names matched as exact strings:

==========  ===========================================  ============
function    condition                                    direction
==========  ===========================================  ============
full        I1 and I2 overlap, O1 == O2                  symmetric
partial     I1 and I2 overlap, O1 is a strict superset   directed
excess      I1 contains I2,    O1 is a strict subset     directed
relation    I1 and I2 disjoint, O1 == O2                 symmetric
==========  ===========================================  ============

``partial_sim(a, b)`` reads "b is partially similar to a" (b covers only part
of what a provides); ``excess_sim(a, b)`` reads "b is similar to a with
excess" (b provides everything a does, plus more, from no more inputs).
Containment is strict, so equal output sets never trigger partial or excess.
Empty input sets are evaluated literally: they overlap with nothing and are
contained in everything.
"""

from __future__ import annotations

import enum

from .model import Operation


class SimilarityKind(enum.Enum):
    FULL = "full"
    PARTIAL = "partial"
    EXCESS = "excess"
    RELATION = "relation"

    @property
    def directed(self) -> bool:
        return self in (SimilarityKind.PARTIAL, SimilarityKind.EXCESS)

    def __str__(self) -> str:
        return self.value


def as_kind(value: "SimilarityKind | str") -> SimilarityKind:
    if isinstance(value, SimilarityKind):
        return value
    try:
        return SimilarityKind(str(value).lower())
    except ValueError:
        expected = ", ".join(k.value for k in SimilarityKind)
        raise ValueError(f"unknown similarity kind {value!r} (expected one of: {expected})") from None


def full_sim(o1: Operation, o2: Operation) -> bool:
    """Same outputs and at least one shared input."""
    return o1.outputs == o2.outputs and not o1.inputs.isdisjoint(o2.inputs)


def partial_sim(o1: Operation, o2: Operation) -> bool:
    """o2 provides a strict subset of o1's outputs, from overlapping inputs."""
    return o1.outputs > o2.outputs and not o1.inputs.isdisjoint(o2.inputs)


def excess_sim(o1: Operation, o2: Operation) -> bool:
    """o2 provides all of o1's outputs plus more, needing no inputs beyond o1's."""
    return o1.outputs < o2.outputs and o1.inputs >= o2.inputs


def relation_sim(o1: Operation, o2: Operation) -> bool:
    """Same outputs but completely different inputs."""
    return o1.outputs == o2.outputs and o1.inputs.isdisjoint(o2.inputs)


PREDICATES = {
    SimilarityKind.FULL: full_sim,
    SimilarityKind.PARTIAL: partial_sim,
    SimilarityKind.EXCESS: excess_sim,
    SimilarityKind.RELATION: relation_sim,
}


def evaluate(kind: "SimilarityKind | str", o1: Operation, o2: Operation) -> bool:
    return PREDICATES[as_kind(kind)](o1, o2)
