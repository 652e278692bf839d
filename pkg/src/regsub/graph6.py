"""graph6 encoding (McKay's ASCII format for simple undirected graphs).

Layout: a size header ``N(n)`` followed by the upper triangle of the adjacency
matrix, column by column (``x(0,1), x(0,2), x(1,2), x(0,3), ...``), packed
six bits per byte, each byte offset by 63. ``n <= 62`` uses the one-byte
header; larger graphs (up to the package's 64-vertex cap) use ``~`` plus
three bytes.
"""

from __future__ import annotations

from .errors import Graph6Error
from .graph import MAX_VERTICES, Graph

HEADER = ">>graph6<<"


def _pairs(n: int):
    for v in range(1, n):
        for u in range(v):
            yield u, v


def write_graph6(g: Graph) -> str:
    if g.n <= 62:
        out = [chr(63 + g.n)]
    else:
        out = ["~"] + [chr(63 + (g.n >> s & 0x3F)) for s in (12, 6, 0)]
    bits = [g.adj[u] >> v & 1 for u, v in _pairs(g.n)]
    bits += [0] * (-len(bits) % 6)
    for j in range(0, len(bits), 6):
        chunk = 0
        for b in bits[j : j + 6]:
            chunk = chunk << 1 | b
        out.append(chr(63 + chunk))
    return "".join(out)


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    base = 0
    if text.startswith(HEADER):
        base = len(HEADER)
    data = text[base:].rstrip("\r\n")
    if not data:
        raise Graph6Error("empty graph6 string", base)
    for pos, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid graph6 byte {ch!r}", base + pos)

    if data[0] != "~":
        n, pos = ord(data[0]) - 63, 1
    else:
        if len(data) < 4:
            raise Graph6Error("truncated size header", base + len(data))
        if data[1] == "~":
            raise Graph6Error("8-byte size header not supported", base + 1)
        n = 0
        for ch in data[1:4]:
            n = n << 6 | (ord(ch) - 63)
        pos = 4
    if n > MAX_VERTICES:
        raise Graph6Error(f"{n} vertices exceeds the {MAX_VERTICES}-vertex cap", base)

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < nbytes:
        raise Graph6Error(f"truncated body: need {nbytes} bytes, got {len(body)}", base + len(data))
    if len(body) > nbytes:
        raise Graph6Error("trailing bytes after graph body", base + pos + nbytes)

    rows = [0] * n
    for idx, (u, v) in enumerate(_pairs(n)):
        byte = ord(body[idx // 6]) - 63
        if byte >> (5 - idx % 6) & 1:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    if nbits % 6 and (ord(body[-1]) - 63) & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6Error("nonzero padding bits", base + pos + nbytes - 1)
    return Graph(n, tuple(rows))
