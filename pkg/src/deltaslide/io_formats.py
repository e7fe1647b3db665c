"""Text formats for set systems, matrices and bouquets.

All three are line-based ``key: values`` files. Blank lines and lines starting
with ``#`` are ignored; CRLF input is accepted and output is always LF.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .core import LABEL_RE, SetSystem
from .errors import ParseError
from .gf2 import SymMatrix
from .ribbon import Bouquet

_TOKEN = re.compile(r"\S+")


@dataclass
class _Line:
    number: int
    key: str
    body: str
    offset: int  # 0-based column where ``body`` starts

    def tokens(self) -> Iterator[tuple[int, str]]:
        """``(1-based column, token)`` pairs of the value part."""
        for m in _TOKEN.finditer(self.body):
            yield self.offset + m.start() + 1, m.group()


def _lines(text: str) -> list[_Line]:
    out = []
    for number, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, body = raw.partition(":")
        if not sep:
            col = len(raw) - len(raw.lstrip()) + 1
            raise ParseError(number, col, f"expected 'key: values', got {stripped!r}")
        out.append(_Line(number, key.strip(), body, len(key) + 1))
    return out


def _labels(line: _Line) -> list[str]:
    seen: set[str] = set()
    out = []
    for col, tok in line.tokens():
        if not LABEL_RE.fullmatch(tok):
            raise ParseError(line.number, col, f"bad element identifier {tok!r}")
        if tok in seen:
            raise ParseError(line.number, col, f"element {tok!r} repeated")
        seen.add(tok)
        out.append(tok)
    return out


def _expect(line: _Line, *keys: str) -> None:
    if line.key not in keys:
        wanted = " or ".join(f"'{k}:'" for k in keys)
        raise ParseError(line.number, 1, f"bad header {line.key!r}, expected {wanted}")


def _end_line(text: str) -> int:
    return text.replace("\r\n", "\n").count("\n") + 1


# -- set systems -------------------------------------------------------------------


def parse_set_system(text: str) -> SetSystem:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, 1, "missing 'ground:' header")
    head = lines[0]
    _expect(head, "ground")
    ground = _labels(head)
    index = {e: i for i, e in enumerate(ground)}
    family: set[int] = set()
    for line in lines[1:]:
        _expect(line, "feasible")
        toks = list(line.tokens())
        if len(toks) == 1 and toks[0][1] == "-":
            mask = 0
        else:
            mask = 0
            for col, tok in toks:
                if tok == "-":
                    raise ParseError(line.number, col, "'-' must stand alone for the empty set")
                if tok not in index:
                    raise ParseError(line.number, col, f"unknown element {tok!r}")
                bit = 1 << index[tok]
                if mask & bit:
                    raise ParseError(line.number, col, f"element {tok!r} repeated")
                mask |= bit
            if not toks:
                raise ParseError(line.number, line.offset + 1, "empty feasible line; write '-' for the empty set")
        if mask in family:
            raise ParseError(line.number, 1, "duplicate feasible set")
        family.add(mask)
    return SetSystem._raw(tuple(ground), frozenset(family))


def _join(key: str, items) -> str:
    items = list(items)
    return f"{key}: {' '.join(items)}" if items else f"{key}:"


def serialize_set_system(D: SetSystem) -> str:
    lines = [_join("ground", D.ground)]
    for m in D.sorted_masks():
        lines.append(_join("feasible", D.labels_of(m) or ["-"]))
    return "\n".join(lines) + "\n"


# -- matrices --------------------------------------------------------------------------


def parse_matrix(text: str) -> SymMatrix:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, 1, "missing 'labels:' header")
    head = lines[0]
    _expect(head, "labels")
    labels = _labels(head)
    n = len(labels)
    rows: list[int] = []
    where: list[tuple[int, list[int]]] = []
    for line in lines[1:]:
        _expect(line, "row")
        if len(rows) == n:
            raise ParseError(line.number, 1, f"more than {n} rows")
        toks = list(line.tokens())
        if len(toks) != n:
            raise ParseError(line.number, line.offset + 1, f"row has {len(toks)} entries, expected {n}")
        r = 0
        for j, (col, tok) in enumerate(toks):
            if tok not in ("0", "1"):
                raise ParseError(line.number, col, f"entry {tok!r} is not 0 or 1")
            if tok == "1":
                r |= 1 << j
        rows.append(r)
        where.append((line.number, [c for c, _ in toks]))
    if len(rows) != n:
        raise ParseError(_end_line(text), 1, f"expected {n} rows, got {len(rows)}")
    for i in range(n):
        for j in range(i + 1, n):
            if (rows[i] >> j & 1) != (rows[j] >> i & 1):
                number, cols = where[j]
                raise ParseError(
                    number,
                    cols[i],
                    f"matrix not symmetric at ({i + 1},{j + 1}): "
                    f"({labels[i]},{labels[j]})={rows[i] >> j & 1} but ({labels[j]},{labels[i]})={rows[j] >> i & 1}",
                )
    return SymMatrix._raw(tuple(labels), rows)


def serialize_matrix(M: SymMatrix) -> str:
    lines = [_join("labels", M.labels)]
    lines += [_join("row", (str(x) for x in line)) for line in M.to_lists()]
    return "\n".join(lines) + "\n"


# -- bouquets ----------------------------------------------------------------------------


def parse_bouquet(text: str) -> Bouquet:
    lines = _lines(text)
    found: dict[str, _Line] = {}
    for line in lines:
        _expect(line, "edges", "twisted", "rotation")
        if line.key in found:
            raise ParseError(line.number, 1, f"duplicate '{line.key}:' header")
        found[line.key] = line
    for key in ("edges", "twisted", "rotation"):
        if key not in found:
            raise ParseError(_end_line(text), 1, f"missing '{key}:' header")
    edges = _labels(found["edges"])
    known = set(edges)
    twisted = _labels(found["twisted"])
    for (col, tok) in found["twisted"].tokens():
        if tok not in known:
            raise ParseError(found["twisted"].number, col, f"unknown edge {tok!r}")
    rot_line = found["rotation"]
    rotation = []
    counts: dict[str, int] = {}
    for col, tok in rot_line.tokens():
        if tok not in known:
            raise ParseError(rot_line.number, col, f"unknown edge {tok!r}")
        counts[tok] = counts.get(tok, 0) + 1
        if counts[tok] > 2:
            raise ParseError(rot_line.number, col, f"edge {tok!r} appears more than twice")
        rotation.append(tok)
    for e in edges:
        if counts.get(e, 0) != 2:
            raise ParseError(rot_line.number, 1, f"edge {e!r} appears {counts.get(e, 0)} times, expected 2")
    return Bouquet(tuple(edges), tuple(rotation), frozenset(twisted))


def serialize_bouquet(B: Bouquet) -> str:
    lines = [
        _join("edges", B.edges),
        _join("twisted", (e for e in B.edges if e in B.twisted)),
        _join("rotation", B.anchored()),
    ]
    return "\n".join(lines) + "\n"
