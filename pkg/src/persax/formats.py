"""Text formats for filtrations, pairs, covers, triples, and vertex maps.

Filtration files carry one simplex per line: a value (``3``, ``1/2``, or
``inf``) followed by vertex tokens.  ``#`` starts a comment.  Multi-part
files use ``[NAME]`` section headers.  Map files name their endpoint files
with ``domain:``/``codomain:`` headers and then list ``v -> w`` arrows.

Serialization is canonical (sorted simplices, reduced fractions), so equal
objects always produce identical bytes.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from .filtration import (
    EMPTY_SET,
    FiltrationError,
    FilteredSet,
    PreservingMap,
    RelativeFilteredPair,
    fin,
    pair_of,
    validate_map,
)


class ParseError(ValueError):
    def __init__(self, source: str, line_no: int, message: str):
        super().__init__(f"{source}:{line_no}: {message}")
        self.source = source
        self.line_no = line_no


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_filtration_text(text: str, source: str = "<string>") -> FilteredSet:
    values = {}
    vertices = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise ParseError(source, line_no, "expected a value and at least one vertex")
        try:
            value = fin(tokens[0])
        except (ValueError, TypeError, ZeroDivisionError):
            raise ParseError(source, line_no, f"bad value {tokens[0]!r}") from None
        verts = tokens[1:]
        if len(set(verts)) != len(verts):
            raise ParseError(source, line_no, "repeated vertex in simplex")
        vertices.update(verts)
        key = tuple(sorted(verts))
        if value.is_finite:
            if key in values and values[key] != value:
                raise ParseError(source, line_no, f"conflicting values for {key}")
            values[key] = value
    try:
        return FilteredSet(vertices, values)
    except FiltrationError as exc:
        raise ParseError(source, 0, str(exc)) from exc


def _split_sections(text: str, source: str) -> dict[str, list[str]]:
    sections: dict[str, list[str]] = {}
    current = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            sections.setdefault(current, [])
            continue
        if current is None:
            raise ParseError(source, line_no, "content before any [SECTION] header")
        sections[current].append(raw)
    return sections


def parse_sections_text(text: str, source: str = "<string>") -> dict[str, FilteredSet]:
    return {
        name: parse_filtration_text("\n".join(lines), f"{source}[{name}]")
        for name, lines in _split_sections(text, source).items()
    }


def parse_pair_text(text: str, source: str = "<string>") -> RelativeFilteredPair:
    sections = parse_sections_text(text, source)
    if "X" not in sections:
        raise ParseError(source, 0, "a pair file needs an [X] section")
    total = sections["X"]
    sub = sections.get("A", EMPTY_SET)
    try:
        return pair_of(total, sub)
    except FiltrationError as exc:
        raise ParseError(source, 0, str(exc)) from exc


def parse_filtration(path) -> FilteredSet:
    path = Path(path)
    return parse_filtration_text(path.read_text(), str(path))


def parse_pair(path) -> RelativeFilteredPair:
    path = Path(path)
    return parse_pair_text(path.read_text(), str(path))


def parse_any(path):
    """A pair when the file has sections, otherwise an absolute filtration."""
    path = Path(path)
    text = path.read_text()
    stripped = [ln for ln in (_strip(l) for l in text.splitlines()) if ln]
    if stripped and stripped[0].startswith("["):
        return parse_pair_text(text, str(path))
    return pair_of(parse_filtration_text(text, str(path)))


def parse_triple(path) -> tuple[FilteredSet, FilteredSet, FilteredSet]:
    path = Path(path)
    sections = parse_sections_text(path.read_text(), str(path))
    for name in ("X", "A", "B"):
        if name not in sections:
            raise ParseError(str(path), 0, f"a triple file needs an [{name}] section")
    return sections["X"], sections["A"], sections["B"]


def parse_cover(path) -> tuple[FilteredSet, FilteredSet]:
    path = Path(path)
    sections = parse_sections_text(path.read_text(), str(path))
    for name in ("X1", "X2"):
        if name not in sections:
            raise ParseError(str(path), 0, f"a cover file needs an [{name}] section")
    return sections["X1"], sections["X2"]


def parse_map(path) -> PreservingMap:
    path = Path(path)
    domain = codomain = None
    arrows = {}
    for line_no, raw in enumerate(path.read_text().splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("domain:"):
            domain = parse_any((path.parent / line.split(":", 1)[1].strip()))
            continue
        if line.startswith("codomain:"):
            codomain = parse_any((path.parent / line.split(":", 1)[1].strip()))
            continue
        if "->" not in line:
            raise ParseError(str(path), line_no, "expected 'v -> w'")
        left, right = (part.strip() for part in line.split("->", 1))
        if not left or not right:
            raise ParseError(str(path), line_no, "expected 'v -> w'")
        arrows[left] = right
    if domain is None or codomain is None:
        raise ParseError(str(path), 0, "map files need domain: and codomain: lines")
    try:
        return validate_map(arrows, domain, codomain)
    except FiltrationError as exc:
        raise ParseError(str(path), 0, str(exc)) from exc


def serialize_filtration(x: FilteredSet) -> str:
    lines = []
    supported = set()
    for sk, val in x.entries:
        supported.update(sk)
        lines.append(f"{val} {' '.join(sk)}")
    for v in sorted(x.vertices - supported):
        lines.append(f"inf {v}")
    return "\n".join(lines) + ("\n" if lines else "")


def serialize_pair(pair: RelativeFilteredPair) -> str:
    return "[X]\n" + serialize_filtration(pair.total) + "[A]\n" + serialize_filtration(pair.sub)


def canonical_text(obj) -> str:
    """Canonical serialization of any supported object, for hashing."""
    if isinstance(obj, FilteredSet):
        return serialize_filtration(obj)
    if isinstance(obj, RelativeFilteredPair):
        return serialize_pair(obj)
    if isinstance(obj, PreservingMap):
        arrows = "\n".join(f"{v} -> {w}" for v, w in sorted(obj.vertex_map.items()))
        return (
            "[MAP DOMAIN]\n" + serialize_pair(obj.domain)
            + "[MAP CODOMAIN]\n" + serialize_pair(obj.codomain)
            + "[ARROWS]\n" + arrows + "\n"
        )
    if isinstance(obj, tuple):
        return "\n".join(canonical_text(part) for part in obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def instance_tag(obj) -> str:
    """Short stable identifier for an instance, from its canonical bytes."""
    return hashlib.sha256(canonical_text(obj).encode()).hexdigest()[:12]
