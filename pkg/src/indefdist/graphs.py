"""Simple graphs on up to 32 vertices as tuples of adjacency bitmasks.

Provides a deterministic canonical form (iterated color refinement plus
individualization with orbit pruning from discovered automorphisms),
isomorph-free exhaustive generation by canonical vertex deletion, vertex
surgery, and the graph6 codec.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_ORDER = 32


class MalformedGraph6Error(ValueError):
    """The input is not a well-formed graph6 string for order <= 62."""


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not (1 <= self.n <= MAX_ORDER):
            raise ValueError(f"order {self.n} outside supported range 1..{MAX_ORDER}")
        if len(self.rows) != self.n:
            raise ValueError("row count does not match order")
        for v, row in enumerate(self.rows):
            if row >> self.n:
                raise ValueError("adjacency bits beyond the vertex range")
            if row & (1 << v):
                raise ValueError("loops are not allowed")
        for v in range(self.n):
            for u in range(v):
                if bool(self.rows[v] & (1 << u)) != bool(self.rows[u] & (1 << v)):
                    raise ValueError("adjacency is not symmetric")

    # -- basic accessors ---------------------------------------------------
    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] & (1 << v))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if self.has_edge(u, v)
        ]

    def is_complete(self) -> bool:
        return self.edge_count() == self.n * (self.n - 1) // 2

    def is_empty(self) -> bool:
        return all(r == 0 for r in self.rows)

    def adjacency(self) -> list[list[int]]:
        return [
            [1 if self.has_edge(i, j) else 0 for j in range(self.n)]
            for i in range(self.n)
        ]

    def complement_adjacency(self) -> list[list[int]]:
        return [
            [0 if i == j else 1 - (1 if self.has_edge(i, j) else 0) for j in range(self.n)]
            for i in range(self.n)
        ]


def from_edges(n: int, edges) -> Graph:
    rows = [0] * n
    for u, v in edges:
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def from_adjacency(matrix) -> Graph:
    n = len(matrix)
    rows = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and matrix[i][j]:
                rows[i] |= 1 << j
    return Graph(n, tuple(rows))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple((~r & full) & ~(1 << v) for v, r in enumerate(g.rows)))


def delete_vertex(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range")
    if g.n < 2:
        raise ValueError("cannot delete from a one-vertex graph")
    low = (1 << v) - 1
    rows = []
    for u in range(g.n):
        if u == v:
            continue
        r = g.rows[u]
        rows.append((r & low) | ((r >> (v + 1)) << v))
    return Graph(g.n - 1, tuple(rows))


def add_vertex(g: Graph, attach: int) -> Graph:
    """New last vertex adjacent to the bitmask ``attach`` of old vertices."""
    rows = list(g.rows)
    for u in range(g.n):
        if attach & (1 << u):
            rows[u] |= 1 << g.n
    rows.append(attach)
    return Graph(g.n + 1, tuple(rows))


def extensions(g: Graph):
    """All 2**n one-vertex extensions, in attachment-mask order."""
    if g.n >= MAX_ORDER:
        raise ValueError("extension would exceed the order cap")
    for attach in range(1 << g.n):
        yield add_vertex(g, attach)


def relabel(g: Graph, perm) -> Graph:
    """perm[v] is the new label of vertex v."""
    rows = [0] * g.n
    for v in range(g.n):
        r = g.rows[v]
        nv = perm[v]
        while r:
            low = r & -r
            rows[nv] |= 1 << perm[low.bit_length() - 1]
            r ^= low
    return Graph(g.n, tuple(rows))


# -- canonical labeling -----------------------------------------------------


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
            return True
        return False


def _refine(rows, n, cells):
    """Equitable refinement of an ordered partition given as bitmask cells."""
    while True:
        new_cells = []
        changed = False
        for cell in cells:
            if cell & (cell - 1) == 0:  # singleton
                new_cells.append(cell)
                continue
            groups = {}
            m = cell
            while m:
                low = m & -m
                v = low.bit_length() - 1
                sig = tuple((rows[v] & c).bit_count() for c in cells)
                groups.setdefault(sig, 0)
                groups[sig] |= low
                m ^= low
            if len(groups) == 1:
                new_cells.append(cell)
            else:
                changed = True
                for sig in sorted(groups):
                    new_cells.append(groups[sig])
        cells = new_cells
        if not changed:
            return cells


def _leaf_perm(cells):
    perm = [0] * len(cells)
    for pos, cell in enumerate(cells):
        perm[cell.bit_length() - 1] = pos
    return perm


def _code_for(rows, n, perm):
    out = [0] * n
    for v in range(n):
        r = rows[v]
        nv = perm[v]
        acc = 0
        while r:
            low = r & -r
            acc |= 1 << perm[low.bit_length() - 1]
            r ^= low
        out[nv] = acc
    return tuple(out)


def canonical_form(g: Graph) -> tuple[bytes, tuple[int, ...], list[tuple[int, ...]]]:
    """(key, perm, automorphism generators).

    ``perm[v]`` is the canonical label of vertex v; relabelling by perm yields
    the canonical representative, whose packed rows form the key.  Equal keys
    hold exactly for isomorphic graphs.  The generator list is a (possibly
    partial) generating set discovered during the search; orbits derived from
    it are subsets of the true automorphism orbits.
    """
    n = g.n
    rows = g.rows
    if n == 1:
        return _pack_key(1, (0,)), (0,), []

    best_code = None
    best_perm = None
    aut_gens: list[tuple[int, ...]] = []
    uf = _UnionFind(n)

    start = _refine(rows, n, [(1 << n) - 1])

    def descend(cells):
        nonlocal best_code, best_perm
        target = None
        for cell in cells:
            if cell & (cell - 1):
                target = cell
                break
        if target is None:
            perm = _leaf_perm(cells)
            code = _code_for(rows, n, perm)
            if best_code is None or code < best_code:
                best_code = code
                best_perm = perm
            elif code == best_code:
                # composition: gamma sends v to the vertex holding the same
                # canonical position under the best labelling
                inv_best = [0] * n
                for v in range(n):
                    inv_best[best_perm[v]] = v
                gamma = tuple(inv_best[perm[v]] for v in range(n))
                if any(gamma[v] != v for v in range(n)):
                    aut_gens.append(gamma)
                    for v in range(n):
                        uf.union(v, gamma[v])
            return
        rest = [c for c in cells if c != target]
        idx = cells.index(target)
        explored = []
        m = target
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            if any(uf.find(v) == uf.find(u) for u in explored):
                continue
            explored.append(v)
            child = cells[:idx] + [1 << v, target ^ (1 << v)] + cells[idx + 1 :]
            descend(_refine(rows, n, child))

    descend(start)
    return _pack_key(n, best_code), tuple(best_perm), aut_gens


def _pack_key(n: int, code_rows) -> bytes:
    return bytes([n]) + b"".join(r.to_bytes(4, "little") for r in code_rows)


def canonical_key(g: Graph) -> bytes:
    return canonical_form(g)[0]


def canonical_graph(g: Graph) -> Graph:
    _, perm, _ = canonical_form(g)
    return relabel(g, perm)


def orbits_from_generators(n: int, gens) -> _UnionFind:
    uf = _UnionFind(n)
    for gamma in gens:
        for v in range(n):
            uf.union(v, gamma[v])
    return uf


# -- isomorph-free generation -------------------------------------------------


def generate_all(n: int):
    """One canonical representative per isomorphism class of order n.

    Canonical-deletion generation: a child is kept exactly when its new vertex
    lies in the discovered orbit of the canonical deletion vertex (the vertex
    in the last canonical position); children are deduplicated per parent.
    Graphs are yielded in canonical-labelled form.
    """
    if not 1 <= n <= 10:
        raise ValueError("supported generation tier is 1 <= n <= 10")
    level = [Graph(1, (0,))]
    for _ in range(n - 1):
        nxt = []
        for parent in level:
            nxt.extend(children_of(parent))
        level = nxt
    yield from level


def children_of(parent: Graph) -> list[Graph]:
    """Accepted canonical children of one parent (order + 1), sorted by key."""
    out = {}
    m = parent.n
    pdeg = [parent.degree(v) for v in range(m)]
    for attach in range(1 << m):
        # the canonical deletion vertex always has maximum degree (refinement
        # orders cells by degree), so the new vertex must reach it to qualify
        new_deg = attach.bit_count()
        if any(pdeg[v] + ((attach >> v) & 1) > new_deg for v in range(m)):
            continue
        child = add_vertex(parent, attach)
        key, perm, gens = canonical_form(child)
        if key in out:
            continue
        # perm maps vertex -> position; the canonical deletion vertex sits at
        # the last position
        v_del = perm.index(child.n - 1)
        if v_del != child.n - 1:
            uf = orbits_from_generators(child.n, gens)
            if uf.find(v_del) != uf.find(child.n - 1):
                continue
        out[key] = relabel(child, perm)
    return [out[k] for k in sorted(out)]


# -- graph6 -------------------------------------------------------------------


def graph6_encode(g: Graph) -> str:
    if g.n > 62:
        raise ValueError("graph6 support limited to n <= 62")
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return "".join(chars)


def graph6_decode(s: str) -> Graph:
    if not s:
        raise MalformedGraph6Error("empty graph6 string")
    s = s.strip()
    if not s or any(ord(c) < 63 or ord(c) > 126 for c in s):
        raise MalformedGraph6Error(f"invalid graph6 characters in {s!r}")
    n = ord(s[0]) - 63
    if n > 62:
        raise MalformedGraph6Error("multi-byte graph6 orders are not supported")
    if n < 1:
        raise MalformedGraph6Error("graph6 order must be positive")
    need = (n * (n - 1) // 2 + 5) // 6
    body = s[1:]
    if len(body) != need:
        raise MalformedGraph6Error(
            f"graph6 body length {len(body)} != expected {need} for n={n}"
        )
    bits = []
    for c in body:
        val = ord(c) - 63
        bits.extend((val >> k) & 1 for k in range(5, -1, -1))
    rows = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            idx += 1
    for b in bits[idx:]:
        if b:
            raise MalformedGraph6Error("nonzero padding bits")
    return Graph(n, tuple(rows))
