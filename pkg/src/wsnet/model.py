"""Operation signatures and ordered collections of them.

An operation is described purely by its name and its input/output parameter
name sets. Parameter names are compared character for character: the only
normalization ever applied is stripping surrounding whitespace.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping


def _clean_names(names: Iterable[str], owner: str) -> frozenset[str]:
    cleaned = set()
    for name in names:
        if not isinstance(name, str):
            raise TypeError(f"parameter name must be a string, got {type(name).__name__} in {owner}")
        text = name.strip()
        if not text:
            raise ValueError(f"empty parameter name in {owner}")
        cleaned.add(text)
    return frozenset(cleaned)


def natural_key(text: str) -> tuple:
    """Sort key that orders embedded integers numerically (``x#2`` < ``x#10``)."""
    parts = re.split(r"(\d+)", text)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts))


@dataclass(frozen=True)
class Operation:
    """One service operation with its input and output parameter-name sets.

    ``inputs`` and ``outputs`` are sets, so duplicate names collapse; either
    may be empty (degenerate descriptions do occur in real corpora).
    ``annotations`` carries opaque per-parameter metadata such as declared
    data types; it is kept for export but ignored by comparisons.
    """

    id: str
    name: str
    service: str
    inputs: frozenset[str]
    outputs: frozenset[str]
    annotations: Mapping[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", _clean_names(self.inputs, self.id or self.name))
        object.__setattr__(self, "outputs", _clean_names(self.outputs, self.id or self.name))
        object.__setattr__(self, "annotations", dict(self.annotations))

    def sort_key(self) -> tuple:
        return (self.service, self.name, natural_key(self.id))


class IdAllocator:
    """Hands out collection-unique operation ids.

    The first operation of a (service, name) pair gets ``service#name``;
    repeats get ``service#name#2``, ``#3`` and so on, in encounter order.
    """

    def __init__(self) -> None:
        self._seen: Counter[tuple[str, str]] = Counter()

    def next_id(self, service: str, name: str) -> str:
        self._seen[(service, name)] += 1
        count = self._seen[(service, name)]
        base = f"{service}#{name}"
        return base if count == 1 else f"{base}#{count}"


@dataclass(frozen=True)
class Collection:
    """An ordered set of operations extracted from a description corpus.

    Operations are stored sorted by (service, operation name, id) so that two
    ingestions of the same corpus compare equal. Ids must be pairwise
    distinct. ``source`` is a corpus label and does not take part in equality.
    """

    operations: tuple[Operation, ...] = ()
    source: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        ops = tuple(sorted(self.operations, key=Operation.sort_key))
        by_id: dict[str, Operation] = {}
        for op in ops:
            if op.id in by_id:
                raise ValueError(f"duplicate operation id: {op.id!r}")
            by_id[op.id] = op
        object.__setattr__(self, "operations", ops)
        object.__setattr__(self, "_by_id", by_id)

    def __len__(self) -> int:
        return len(self.operations)

    def __iter__(self) -> Iterator[Operation]:
        return iter(self.operations)

    def __contains__(self, op_id: str) -> bool:
        return op_id in self._by_id

    def operation(self, op_id: str) -> Operation:
        return self._by_id[op_id]

    def without(self, *op_ids: str) -> "Collection":
        """A copy with the given operations removed (unknown ids are ignored)."""
        dropped = set(op_ids)
        kept = tuple(op for op in self.operations if op.id not in dropped)
        return Collection(kept, source=self.source)
