"""graph6 text encoding for undirected labeled graphs.

Edges are carried as a bitmask over pair indices; the pair (u, v) with u < v
gets index v(v-1)/2 + u, which enumerates pairs in exactly the column order
graph6 uses (01, 02, 12, 03, 13, 23, ...).  Encoding packs that bit vector
into 6-bit groups, most significant bit first, each offset by 63; the size
header covers n up to 258047 via the single '~' extension.
"""

from __future__ import annotations

__all__ = ["pair_index", "pair_from_index", "encode", "decode"]


def pair_index(u: int, v: int) -> int:
    if u == v:
        raise ValueError("no loops")
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def pair_from_index(k: int) -> tuple[int, int]:
    # invert k = v(v-1)/2 + u by isolating the triangular part
    v = int(((8 * k + 1) ** 0.5 + 1) / 2)
    while v * (v - 1) // 2 > k:
        v -= 1
    while (v + 1) * v // 2 <= k:
        v += 1
    return (k - v * (v - 1) // 2, v)


def _size_header(n: int) -> str:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ValueError("graphs beyond 258047 vertices are not supported")


def encode(n: int, mask: int) -> str:
    npairs = n * (n - 1) // 2
    if mask >> npairs:
        raise ValueError("edge mask has bits beyond the pair range")
    out = [_size_header(n)]
    for start in range(0, npairs, 6):
        group = 0
        for i in range(6):
            k = start + i
            bit = (mask >> k) & 1 if k < npairs else 0
            group = (group << 1) | bit
        out.append(chr(group + 63))
    return "".join(out)


def decode(text: str) -> tuple[int, int]:
    s = text.strip()
    if not s:
        raise ValueError("empty graph6 string")
    if s[0] == "~":
        if len(s) < 4 or s[1] == "~":
            raise ValueError("unsupported graph6 size header")
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    if n < 0:
        raise ValueError("bad graph6 size header")
    npairs = n * (n - 1) // 2
    need = (npairs + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body has {len(body)} groups, expected {need}")
    mask = 0
    for gi, ch in enumerate(body):
        group = ord(ch) - 63
        if not 0 <= group < 64:
            raise ValueError(f"bad graph6 character {ch!r}")
        for i in range(6):
            k = gi * 6 + i
            bit = (group >> (5 - i)) & 1
            if k < npairs:
                mask |= bit << k
            elif bit:
                raise ValueError("nonzero padding bits")
    return n, mask
