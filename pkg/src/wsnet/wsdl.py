"""WSDL 1.1 ingestion.

Extracts one operation signature per portType operation. SAWSDL annotations
are tolerated and ignored. Parameter names come from message parts:

* ``parts`` mode (default): a part contributes its ``name`` attribute, or the
  local name of the schema element it references via ``element=``.
* ``flatten`` mode: when a part references a schema element (or a named
  complex type), descend one level into the complex type and use the child
  element local names instead; parts without resolvable children fall back to
  the ``parts`` rule.

Declared data types are recorded as opaque annotations; they never take part
in matching.
"""

from __future__ import annotations

import logging
import xml.etree.ElementTree as ET
from pathlib import Path

from .model import Collection, IdAllocator, Operation

log = logging.getLogger(__name__)

WSDL_NS = "http://schemas.xmlsoap.org/wsdl/"
XSD_NS = "http://www.w3.org/2001/XMLSchema"

EXTRACTION_MODES = ("parts", "flatten")
DESCRIPTION_SUFFIXES = (".wsdl", ".sawsdl", ".xml")


class MalformedXml(ValueError):
    """Content that is not well-formed XML."""

    def __init__(self, source: str, position: tuple[int, int] | None, detail: str):
        self.source = source
        self.position = position
        where = f" at line {position[0]}, column {position[1]}" if position else ""
        super().__init__(f"{source}: malformed XML{where}: {detail}")


class UnsupportedDescription(ValueError):
    """Well-formed XML without a recognizable WSDL 1.1 structure."""

    def __init__(self, source: str, detail: str):
        self.source = source
        super().__init__(f"{source}: {detail}")


class EmptyCorpus(RuntimeError):
    """A corpus directory with no recognized description files."""


def _local(qname: str | None) -> str:
    if not qname:
        return ""
    return qname.split(":")[-1]


def _wsdl(tag: str) -> str:
    return f"{{{WSDL_NS}}}{tag}"


def _xsd(tag: str) -> str:
    return f"{{{XSD_NS}}}{tag}"


class _Schemas:
    """Top-level element and complex-type declarations of the inline schemas."""

    def __init__(self, root: ET.Element):
        self.elements: dict[str, ET.Element] = {}
        self.complex_types: dict[str, ET.Element] = {}
        for types in root.findall(_wsdl("types")):
            for schema in types.iter(_xsd("schema")):
                for element in schema.findall(_xsd("element")):
                    name = element.get("name")
                    if name:
                        self.elements.setdefault(name, element)
                for ctype in schema.findall(_xsd("complexType")):
                    name = ctype.get("name")
                    if name:
                        self.complex_types.setdefault(name, ctype)

    def children_of(self, declaration: ET.Element) -> list[ET.Element]:
        """Child element declarations one level below ``declaration``."""
        ctype = declaration
        if declaration.tag == _xsd("element"):
            inline = declaration.find(_xsd("complexType"))
            if inline is None:
                named = self.complex_types.get(_local(declaration.get("type")))
                if named is None:
                    return []
                ctype = named
            else:
                ctype = inline
        children = []
        for group in ("sequence", "all", "choice"):
            container = ctype.find(_xsd(group))
            if container is not None:
                children.extend(container.findall(_xsd("element")))
        return children


def _part_parameters(part: ET.Element, schemas: _Schemas, extract: str) -> list[tuple[str, str]]:
    """(name, declared type) pairs contributed by one message part."""
    element_ref = part.get("element")
    if element_ref:
        local = _local(element_ref)
        declaration = schemas.elements.get(local)
        if extract == "flatten" and declaration is not None:
            children = schemas.children_of(declaration)
            resolved = [
                (child.get("name") or _local(child.get("ref")), _local(child.get("type")))
                for child in children
            ]
            resolved = [(name, typ) for name, typ in resolved if name]
            if resolved:
                return resolved
        declared = _local(declaration.get("type")) if declaration is not None else ""
        return [(local, declared)]
    name = part.get("name")
    if not name:
        return []
    type_ref = part.get("type")
    if extract == "flatten" and type_ref:
        named = schemas.complex_types.get(_local(type_ref))
        if named is not None:
            resolved = [
                (child.get("name") or _local(child.get("ref")), _local(child.get("type")))
                for child in schemas.children_of(named)
            ]
            resolved = [(n, t) for n, t in resolved if n]
            if resolved:
                return resolved
    return [(name, _local(type_ref))]


def _message_parameters(
    ref: ET.Element | None,
    messages: dict[str, ET.Element],
    schemas: _Schemas,
    extract: str,
) -> tuple[set[str], dict[str, str]]:
    names: set[str] = set()
    types: dict[str, str] = {}
    if ref is None:
        return names, types
    message = messages.get(_local(ref.get("message")))
    if message is None:
        return names, types
    for part in message.findall(_wsdl("part")):
        for name, declared in _part_parameters(part, schemas, extract):
            name = name.strip()
            if not name:
                continue
            names.add(name)
            if declared:
                types.setdefault(name, declared)
    return names, types


def parse_description(content: str | bytes, service_id: str, extract: str = "parts") -> list[Operation]:
    """Parse one WSDL 1.1 description into its operation signatures.

    Returns operations in document order; ids are unique within the result.
    Raises :class:`MalformedXml` for unparseable content and
    :class:`UnsupportedDescription` when the root is not a WSDL definitions
    element.
    """
    if extract not in EXTRACTION_MODES:
        raise ValueError(f"extract must be one of {EXTRACTION_MODES}, got {extract!r}")
    try:
        root = ET.fromstring(content)
    except ET.ParseError as exc:
        raise MalformedXml(service_id, getattr(exc, "position", None), str(exc)) from exc
    if root.tag != _wsdl("definitions"):
        raise UnsupportedDescription(service_id, f"root element {root.tag!r} is not a WSDL 1.1 description")

    messages = {m.get("name"): m for m in root.findall(_wsdl("message")) if m.get("name")}
    schemas = _Schemas(root)
    allocator = IdAllocator()
    operations = []
    for port_type in root.findall(_wsdl("portType")):
        for op_el in port_type.findall(_wsdl("operation")):
            name = op_el.get("name") or ""
            inputs, in_types = _message_parameters(op_el.find(_wsdl("input")), messages, schemas, extract)
            outputs, out_types = _message_parameters(op_el.find(_wsdl("output")), messages, schemas, extract)
            annotations = {**out_types, **in_types}
            operations.append(
                Operation(
                    id=allocator.next_id(service_id, name),
                    name=name,
                    service=service_id,
                    inputs=frozenset(inputs),
                    outputs=frozenset(outputs),
                    annotations=annotations,
                )
            )
    return operations


def iter_description_files(directory: str | Path) -> list[Path]:
    root = Path(directory)
    return sorted(
        p for p in root.rglob("*") if p.is_file() and p.suffix.lower() in DESCRIPTION_SUFFIXES
    )


def load_collection(directory: str | Path, extract: str = "parts") -> Collection:
    """Ingest every recognized description file under ``directory``.

    Unparseable files are logged as warnings and skipped; they never abort the
    ingestion. Raises :class:`EmptyCorpus` when no recognized file exists.
    """
    root = Path(directory)
    files = iter_description_files(root)
    if not files:
        raise EmptyCorpus(f"no description files (*{', *'.join(DESCRIPTION_SUFFIXES)}) under {root}")
    operations = []
    for path in files:
        service_id = path.relative_to(root).as_posix()
        try:
            operations.extend(parse_description(path.read_bytes(), service_id, extract=extract))
        except (MalformedXml, UnsupportedDescription) as exc:
            log.warning("skipping %s: %s", path, exc)
    return Collection(tuple(operations), source=str(root))
