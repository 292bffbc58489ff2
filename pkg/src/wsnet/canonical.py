"""Plain-text collection interchange.

The canonical format is JSON Lines: one object per operation with the fields
``service``, ``operation``, ``inputs`` and ``outputs`` (plus an optional
``types`` mapping of parameter name to declared data type). It exists so the
similarity, network and metrics layers can be exercised without any XML.
"""

from __future__ import annotations

import json

from .model import Collection, IdAllocator, Operation


class FormatError(ValueError):
    """Raised when canonical collection content cannot be decoded."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def write_canonical(collection: Collection) -> str:
    """Serialize a collection, one JSON record per line, in collection order."""
    lines = []
    for op in collection.operations:
        record = {
            "service": op.service,
            "operation": op.name,
            "inputs": sorted(op.inputs),
            "outputs": sorted(op.outputs),
        }
        if op.annotations:
            record["types"] = {k: op.annotations[k] for k in sorted(op.annotations)}
        lines.append(json.dumps(record, ensure_ascii=False))
    return "".join(line + "\n" for line in lines)


def _string_list(record: dict, key: str, line_no: int) -> list[str]:
    value = record.get(key)
    if not isinstance(value, list) or any(not isinstance(item, str) for item in value):
        raise FormatError(f"field {key!r} must be a list of strings", line_no)
    return value


def read_canonical(content: str, source: str = "") -> Collection:
    """Parse canonical collection content.

    Blank lines are skipped. Any malformed line raises :class:`FormatError`
    carrying its 1-based line number.
    """
    allocator = IdAllocator()
    operations = []
    for line_no, line in enumerate(content.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc.msg}", line_no) from exc
        if not isinstance(record, dict):
            raise FormatError("record must be a JSON object", line_no)
        for required in ("service", "operation", "inputs", "outputs"):
            if required not in record:
                raise FormatError(f"missing field {required!r}", line_no)
        service = record["service"]
        name = record["operation"]
        if not isinstance(service, str) or not isinstance(name, str):
            raise FormatError("fields 'service' and 'operation' must be strings", line_no)
        inputs = _string_list(record, "inputs", line_no)
        outputs = _string_list(record, "outputs", line_no)
        types = record.get("types", {})
        if not isinstance(types, dict) or any(
            not isinstance(k, str) or not isinstance(v, str) for k, v in types.items()
        ):
            raise FormatError("field 'types' must map strings to strings", line_no)
        try:
            operations.append(
                Operation(
                    id=allocator.next_id(service, name),
                    name=name,
                    service=service,
                    inputs=frozenset(inputs),
                    outputs=frozenset(outputs),
                    annotations=types,
                )
            )
        except (TypeError, ValueError) as exc:
            raise FormatError(str(exc), line_no) from exc
    return Collection(tuple(operations), source=source)
