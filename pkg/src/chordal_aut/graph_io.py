"""Graph and coloring file formats.

Two graph formats are supported: header-less graph6 (bit-exact per the
de-facto standard) and a plain text edge list ("n m" header line followed
by m lines "u v", 0-based).  Colorings are optional "v c" lines; a missing
coloring means monochromatic.
"""

from __future__ import annotations

from .errors import ParseError
from .graphs import Coloring, Graph


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    if not data:
        raise ParseError("empty graph6 input")
    vals = [ord(ch) - 63 for ch in data]
    if any(v < 0 or v > 63 for v in vals):
        raise ParseError("invalid graph6 character")
    if vals[0] <= 62:
        n = vals[0]
        body = vals[1:]
    elif len(vals) >= 4 and vals[1] <= 62:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    elif len(vals) >= 8:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        body = vals[8:]
    else:
        raise ParseError("truncated graph6 size field")
    nbits = n * (n - 1) // 2
    if len(body) < (nbits + 5) // 6:
        raise ParseError("truncated graph6 adjacency data")
    bits = []
    for v in body:
        for k in range(5, -1, -1):
            bits.append((v >> k) & 1)
    edges = []
    i = 0
    for v in range(1, n):
        for u in range(v):
            if bits[i]:
                edges.append((u, v))
            i += 1
    return Graph(n, edges)


def write_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63,
                (n & 63) + 63]
    else:
        raise ParseError("graph too large for graph6 writer")
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i:i + 6]:
            val = (val << 1) | b
        body.append(val + 63)
    return "".join(chr(c) for c in head + body)


def parse_edge_list(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty edge list input")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("expected 'n m' header line")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ParseError("bad header numbers") from exc
    if len(lines) - 1 != m:
        raise ParseError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"bad edge line: {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ParseError(f"bad edge line: {ln!r}") from exc
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"edge out of range: {ln!r}")
        edges.append((u, v))
    return Graph(n, edges)


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count()}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, n: int) -> Coloring:
    """Parse "v c" lines; colors are re-indexed densely preserving order."""
    raw: dict[int, int] = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"bad coloring line: {ln!r}")
        try:
            v, c = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ParseError(f"bad coloring line: {ln!r}") from exc
        if not 0 <= v < n:
            raise ParseError(f"colored vertex out of range: {v}")
        raw[v] = c
    keys = [raw.get(v, -1) for v in range(n)]
    return Coloring.by_key(keys)


def write_coloring(c: Coloring) -> str:
    return "\n".join(f"{v} {c.class_of[v]}" for v in range(c.n)) + "\n"


def parse_graph_auto(text: str) -> Graph:
    """Detect edge-list vs graph6 by content."""
    stripped = text.strip()
    first = stripped.splitlines()[0] if stripped else ""
    tokens = first.split()
    if len(tokens) == 2 and all(t.isdigit() for t in tokens):
        return parse_edge_list(text)
    return parse_graph6(text)
