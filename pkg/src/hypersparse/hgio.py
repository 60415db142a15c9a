"""Weighted hypergraph files: header "m n 1", then one line per hyperedge
holding the weight followed by 1-indexed vertex ids. Lines starting with '%'
are comments. Serialization prints weights with 17 significant digits so a
parse/serialize round trip is lossless."""

from __future__ import annotations

import math

from .core import Hypergraph

__all__ = [
    "HgrFormatError",
    "parse_hypergraph",
    "parse_hypergraph_text",
    "serialize_hypergraph",
    "serialize_hypergraph_text",
]


class HgrFormatError(ValueError):
    """Malformed hypergraph file; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_hypergraph_text(text: str) -> Hypergraph:
    """Parse file contents; '%' comment lines and blank lines are skipped."""
    content = [
        (i, line.strip())
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("%")
    ]
    if not content:
        raise HgrFormatError(1, "missing header line")

    header_no, header = content[0]
    fields = header.split()
    if len(fields) != 3:
        raise HgrFormatError(header_no, "header must be 'm n 1'")
    try:
        m, n = int(fields[0]), int(fields[1])
    except ValueError:
        raise HgrFormatError(header_no, "header counts must be integers") from None
    if fields[2] != "1":
        raise HgrFormatError(header_no, "unsupported format flag; expected '1'")
    if m < 1 or n < 1:
        raise HgrFormatError(header_no, "counts must be positive")

    body = content[1:]
    if len(body) < m:
        raise HgrFormatError(
            body[-1][0] if body else header_no,
            f"expected {m} hyperedge lines, found {len(body)}",
        )
    if len(body) > m:
        raise HgrFormatError(body[m][0], "unexpected extra line")

    edges = []
    for line_no, line in body:
        tokens = line.split()
        try:
            weight = float(tokens[0])
        except ValueError:
            raise HgrFormatError(line_no, f"invalid weight {tokens[0]!r}") from None
        if not (weight >= 0.0 and math.isfinite(weight)):
            raise HgrFormatError(
                line_no, f"weight {weight!r} is not a finite nonnegative number"
            )
        try:
            ids = [int(tok) for tok in tokens[1:]]
        except ValueError:
            raise HgrFormatError(line_no, "invalid vertex id") from None
        if len(ids) < 2:
            raise HgrFormatError(line_no, "hyperedge needs at least 2 vertices")
        if len(set(ids)) != len(ids):
            raise HgrFormatError(line_no, "duplicate vertex in hyperedge")
        for v in ids:
            if not 1 <= v <= n:
                raise HgrFormatError(line_no, f"vertex id {v} outside [1, {n}]")
        edges.append(([v - 1 for v in ids], weight))
    return Hypergraph(n, edges)


def parse_hypergraph(path) -> Hypergraph:
    with open(path, "r", encoding="ascii") as handle:
        return parse_hypergraph_text(handle.read())


def serialize_hypergraph_text(H: Hypergraph) -> str:
    lines = [f"{H.m} {H.n} 1"]
    for vs, w in zip(H.vertex_sets, H.weights):
        ids = " ".join(str(v + 1) for v in vs)
        lines.append(f"{float(w):.17g} {ids}")
    return "\n".join(lines) + "\n"


def serialize_hypergraph(H: Hypergraph, path) -> None:
    with open(path, "w", encoding="ascii") as handle:
        handle.write(serialize_hypergraph_text(H))
