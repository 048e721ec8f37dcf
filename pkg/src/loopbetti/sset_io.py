"""Plain-text format for finite pointed simplicial sets.

A document is a sequence of whitespace-separated records, one per line;
blank lines and lines starting with ``#`` are ignored:

    truncation N
    basepoint LABEL
    simplices DIM LABEL...
    faces LABEL FACE...            # n+1 faces for an n-simplex
    involution LABEL LABEL         # source -> image; absent labels are fixed

A face is ``label`` for a nondegenerate face or ``s1s0@label`` for a
degenerate one, operators written outermost first.  Labels may not contain
whitespace, ``@`` or ``#``.  Serialization is canonical (single spaces,
dimensions ascending, one trailing newline), so parse-serialize-parse is
the identity and serializing a parsed file reproduces it up to whitespace.
"""

from __future__ import annotations

from typing import Optional

from .simplicial import (
    FiniteSimplicialSet,
    Involution,
    ValidationError,
    format_ref,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


def parse(text: str) -> tuple[FiniteSimplicialSet, Optional[Involution]]:
    truncation: Optional[int] = None
    basepoint: Optional[str] = None
    simplices: dict[int, list[str]] = {}
    faces: dict[str, list[str]] = {}
    face_lines: dict[str, int] = {}
    involution: dict[str, str] = {}
    has_involution = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        kind, args = fields[0], fields[1:]
        if kind == "truncation":
            if len(args) != 1 or not args[0].isdigit():
                raise ParseError("truncation needs one nonnegative integer", lineno)
            truncation = int(args[0])
        elif kind == "basepoint":
            if len(args) != 1:
                raise ParseError("basepoint needs one label", lineno)
            basepoint = args[0]
        elif kind == "simplices":
            if len(args) < 2 or not args[0].isdigit():
                raise ParseError("simplices needs a dimension and labels", lineno)
            dim = int(args[0])
            for label in args[1:]:
                if "@" in label or "#" in label:
                    raise ParseError(f"label {label!r} contains a reserved character", lineno)
            simplices.setdefault(dim, []).extend(args[1:])
        elif kind == "faces":
            if len(args) < 2:
                raise ParseError("faces needs a label and its face list", lineno)
            if args[0] in faces:
                raise ParseError(f"duplicate faces entry for {args[0]!r}", lineno)
            faces[args[0]] = args[1:]
            face_lines[args[0]] = lineno
        elif kind == "involution":
            if len(args) != 2:
                raise ParseError("involution needs a source and an image label", lineno)
            has_involution = True
            if args[0] in involution:
                raise ParseError(f"duplicate involution entry for {args[0]!r}", lineno)
            involution[args[0]] = args[1]
        else:
            raise ParseError(f"unknown record {kind!r}", lineno)

    if truncation is None:
        raise ParseError("missing truncation record")
    if not simplices.get(0):
        raise ParseError("no vertices declared")
    declared = {label for labels in simplices.values() for label in labels}
    for label, entries in faces.items():
        lineno = face_lines[label]
        if label not in declared:
            raise ParseError(f"faces given for undeclared simplex {label!r}", lineno)
        for entry in entries:
            target = entry.split("@", 1)[-1]
            if target not in declared:
                raise ParseError(
                    f"face of {label!r} names undeclared simplex {target!r}", lineno
                )
    try:
        space = FiniteSimplicialSet(truncation, simplices, faces, basepoint=basepoint)
    except ValidationError as exc:
        # attach the faces line when the message names a known simplex
        line = next((face_lines[k] for k in face_lines if repr(k) in str(exc)), None)
        raise ParseError(str(exc), line) from exc
    invol = None
    if has_involution:
        try:
            invol = Involution(space, involution)
        except ValidationError as exc:
            raise ParseError(str(exc)) from exc
    return space, invol


def parse_file(path) -> tuple[FiniteSimplicialSet, Optional[Involution]]:
    with open(path, "r", encoding="utf-8") as handle:
        return parse(handle.read())


def serialize(space: FiniteSimplicialSet, invol: Optional[Involution] = None) -> str:
    for n in range(space.top_dim() + 1):
        for key in space.nondeg(n):
            if not isinstance(key, str):
                raise ValidationError(
                    "only simplicial sets with string labels can be serialized"
                )
    lines = [f"truncation {space.truncation}", f"basepoint {space.basepoint}"]
    for n in range(space.top_dim() + 1):
        keys = space.nondeg(n)
        if keys:
            lines.append("simplices " + " ".join([str(n)] + list(keys)))
    for n in range(1, space.top_dim() + 1):
        for key in space.nondeg(n):
            entries = [format_ref(space._base_face(key, n, i)) for i in range(n + 1)]
            lines.append("faces " + " ".join([key] + entries))
    if invol is not None:
        moved = [
            key
            for n in range(space.top_dim() + 1)
            for key in space.nondeg(n)
            if invol(key) != key
        ]
        if moved:
            lines.extend(f"involution {key} {invol(key)}" for key in moved)
        else:
            # record that a (trivial) involution is present
            lines.append(f"involution {space.basepoint} {space.basepoint}")
    return "\n".join(lines) + "\n"


def serialize_to_file(path, space: FiniteSimplicialSet, invol: Optional[Involution] = None) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize(space, invol))
