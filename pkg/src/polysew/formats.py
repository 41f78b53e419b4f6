"""
Reading and writing polytope files.

Two formats are supported.

JSON (authoritative)::

    {
      "format": "polysew-polytope",
      "version": 1,
      "dim": 4,
      "labels": ["0", "1", ...],
      "facets": [
        ["0", "1", "2", "3"],
        ...
      ],
      "metadata": {...}
    }

Text (for diffing), one record per line, ``#`` starts a comment::

    dim 4
    labels 0 1 2 3 4 5
    facet 0 1 2 3
    ...
    meta {"generator": ...}

Labels may not contain whitespace in the text format.  Facets are written in
the polytope's own (lexicographic) order, so ``parse(emit(P)) == P``.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .core import SimplicialPolytope, make_polytope
from .tracking import UniversalCatalog

FORMAT_NAME = "polysew-polytope"
CATALOG_FORMAT = "polysew-universal-catalog"
VERSION = 1


class ParseError(ValueError):
    """Malformed input file or script."""


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def to_json(P: SimplicialPolytope, metadata: Optional[dict] = None) -> str:
    # hand-rolled layout: one facet per line keeps diffs readable
    lines = [
        "{",
        f'  "format": {_dumps(FORMAT_NAME)},',
        f'  "version": {VERSION},',
        f'  "dim": {P.dim},',
        f'  "labels": {_dumps(list(P.labels))},',
        '  "facets": [',
    ]
    rows = [f"    {_dumps(P.labels_of(F))}" for F in P.facets]
    lines.append(",\n".join(rows))
    lines.append("  ],")
    lines.append(f'  "metadata": {_dumps(metadata or {})}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def from_json(text: str) -> tuple:
    """Parse JSON text; returns ``(polytope, metadata)``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_NAME:
        raise ParseError(f"not a {FORMAT_NAME} document")
    if doc.get("version") != VERSION:
        raise ParseError(f"unsupported version {doc.get('version')!r}")
    try:
        dim, labels, facets = doc["dim"], doc["labels"], doc["facets"]
    except KeyError as e:
        raise ParseError(f"missing field {e.args[0]!r}") from None
    if not isinstance(dim, int) or not isinstance(labels, list) or not isinstance(facets, list):
        raise ParseError("dim must be an integer, labels and facets lists")
    if not all(isinstance(lab, str) for lab in labels):
        raise ParseError("labels must be strings")
    for F in facets:
        if not isinstance(F, list) or not all(isinstance(v, str) for v in F):
            raise ParseError("facets must be lists of label strings")
    meta = doc.get("metadata") or {}
    return make_polytope(dim, labels, facets), meta


def to_text(P: SimplicialPolytope, metadata: Optional[dict] = None) -> str:
    for lab in P.labels:
        if not lab or any(c.isspace() for c in lab):
            raise ParseError(f"label {lab!r} cannot be written in the text format")
    lines = [f"dim {P.dim}", "labels " + " ".join(P.labels)]
    lines += ["facet " + " ".join(P.labels_of(F)) for F in P.facets]
    if metadata:
        lines.append("meta " + _dumps(metadata))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> tuple:
    dim = labels = None
    facets = []
    meta = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line.startswith("meta "):
            # metadata is JSON and may legitimately hold '#'
            line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key == "dim":
            try:
                dim = int(rest)
            except ValueError:
                raise ParseError(f"line {lineno}: bad dimension {rest!r}") from None
        elif key == "labels":
            labels = rest.split()
        elif key == "facet":
            facets.append(rest.split())
        elif key == "meta":
            try:
                meta = json.loads(rest)
            except json.JSONDecodeError as e:
                raise ParseError(f"line {lineno}: bad metadata: {e}") from None
        else:
            raise ParseError(f"line {lineno}: unknown record {key!r}")
    if dim is None or labels is None:
        raise ParseError("text polytope needs 'dim' and 'labels' lines")
    return make_polytope(dim, labels, facets), meta


def _is_text_path(path) -> bool:
    return Path(path).suffix in (".txt", ".poly")


def read_polytope(path) -> tuple:
    """Read a polytope file; returns ``(polytope, metadata)``.

    Files ending in ``.txt`` or ``.poly`` use the text format, everything
    else is JSON.  Validation errors from the facet list propagate unchanged.
    """
    text = Path(path).read_text(encoding="utf-8")
    return from_text(text) if _is_text_path(path) else from_json(text)


def write_polytope(path, P: SimplicialPolytope, metadata: Optional[dict] = None) -> None:
    text = to_text(P, metadata) if _is_text_path(path) else to_json(P, metadata)
    Path(path).write_text(text, encoding="utf-8")


def catalog_to_json(P: SimplicialPolytope, catalog: UniversalCatalog) -> str:
    doc = {
        "format": CATALOG_FORMAT,
        "version": VERSION,
        "dim": catalog.dim,
        "faces": {str(k): [P.labels_of(U) for U in catalog[k]] for k in catalog.dims()},
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def parse_tower(text: str) -> list:
    """Parse ``"a,b;c,d"`` into label pairs, or load them from a JSON file
    holding a list of two-element lists."""
    text = text.strip()
    if text and Path(text).is_file():
        try:
            doc = json.loads(Path(text).read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ParseError(f"tower file: {e}") from None
        if not isinstance(doc, list) or not all(isinstance(p, list) and len(p) == 2 for p in doc):
            raise ParseError("tower file must hold a list of label pairs")
        return [(str(a), str(b)) for a, b in doc]
    pairs = []
    for chunk in text.split(";"):
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) != 2 or not all(parts):
            raise ParseError(f"bad tower pair {chunk!r}; expected 'a,b'")
        pairs.append((parts[0], parts[1]))
    return pairs


__all__ = [
    "ParseError",
    "catalog_to_json",
    "from_json",
    "from_text",
    "parse_tower",
    "read_polytope",
    "to_json",
    "to_text",
    "write_polytope",
]
