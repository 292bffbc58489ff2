"""Operation discovery through the similarity relaxation ladder.

A request (available inputs, desired outputs) is treated as a virtual
operation and compared against every candidate with the four similarity
functions, strongest first: full, then excess (goal fully covered, extra
outputs), then partial (only part of the goal), then relation (right outputs,
entirely different inputs). Each candidate matches at most one level.

For relation-level matches, one-hop bridges can be suggested: operations
whose outputs supply every missing input while consuming inputs the user
already has.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .model import Collection, Operation, _clean_names
from .similarity import SimilarityKind, as_kind, excess_sim, full_sim, partial_sim, relation_sim

LADDER = (
    SimilarityKind.FULL,
    SimilarityKind.EXCESS,
    SimilarityKind.PARTIAL,
    SimilarityKind.RELATION,
)


class EmptyGoal(ValueError):
    """A request without desired outputs."""


@dataclass(frozen=True)
class Request:
    available_inputs: frozenset[str]
    desired_outputs: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "available_inputs", _clean_names(self.available_inputs, "request inputs"))
        object.__setattr__(self, "desired_outputs", _clean_names(self.desired_outputs, "request outputs"))
        if not self.desired_outputs:
            raise EmptyGoal("a request must name at least one desired output")

    def as_operation(self) -> Operation:
        return Operation(
            id="?request",
            name="request",
            service="",
            inputs=self.available_inputs,
            outputs=self.desired_outputs,
        )


@dataclass(frozen=True)
class MatchResult:
    operation_id: str
    level: SimilarityKind
    surplus_outputs: frozenset[str]
    missing_outputs: frozenset[str]
    unmet_inputs: frozenset[str]


def _level(request_op: Operation, candidate: Operation) -> SimilarityKind | None:
    if full_sim(request_op, candidate):
        return SimilarityKind.FULL
    if excess_sim(request_op, candidate):
        return SimilarityKind.EXCESS
    if partial_sim(request_op, candidate):
        return SimilarityKind.PARTIAL
    if relation_sim(request_op, candidate):
        return SimilarityKind.RELATION
    return None


def match_request(
    request: Request,
    collection: Collection,
    max_level: "SimilarityKind | str" = SimilarityKind.RELATION,
) -> list[MatchResult]:
    """All matches up to ``max_level``, grouped by ladder level.

    Within a level, candidates needing the least goal adjustment (fewest
    surplus plus missing outputs) come first; ties break on operation id.
    """
    cutoff = LADDER.index(as_kind(max_level))
    request_op = request.as_operation()
    results = []
    for candidate in collection:
        level = _level(request_op, candidate)
        if level is None or LADDER.index(level) > cutoff:
            continue
        results.append(
            MatchResult(
                operation_id=candidate.id,
                level=level,
                surplus_outputs=candidate.outputs - request.desired_outputs,
                missing_outputs=request.desired_outputs - candidate.outputs,
                unmet_inputs=candidate.inputs - request.available_inputs,
            )
        )
    results.sort(
        key=lambda r: (
            LADDER.index(r.level),
            len(r.surplus_outputs | r.missing_outputs),
            r.operation_id,
        )
    )
    return results


def bridge_operations(
    collection: Collection,
    unmet_inputs: Iterable[str],
    available_inputs: Iterable[str],
) -> list[str]:
    """Ids of operations that produce every unmet input from available ones."""
    unmet = frozenset(unmet_inputs)
    available = frozenset(available_inputs)
    return sorted(
        op.id
        for op in collection
        if op.outputs >= unmet and not op.inputs.isdisjoint(available)
    )


def suggest_bridge(result: MatchResult, collection: Collection, request: Request) -> list[str]:
    """One-hop bridges for a relation-level match: invoke these first to
    obtain the matched operation's inputs."""
    if result.level is not SimilarityKind.RELATION:
        raise ValueError(f"bridges only apply to relation-level matches, got {result.level}")
    return bridge_operations(collection, result.unmet_inputs, request.available_inputs)
