"""Level-by-level classification of largest proper two-distance configurations.

For a cell (p, q) the search fixes the base order p+q+3, buckets every base
graph by the eigenvalues of its centered edge-relation matrix that admit a
two-distance representation, and then grows each bucket one vertex at a time:
an extension survives exactly when all its vertex-deleted subgraphs already
survive at the previous order.  A properness flag rides along (a graph is
flagged when some deletion chain reaches a base graph whose embedding
dimension is exactly (p, q)); the search stops when no flagged graph extends,
and the largest flagged graphs that verify exactly are the classification.

Orders below the base are handled by the exhaustive small-order scan.
"""

from __future__ import annotations

import json
import multiprocessing
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from pathlib import Path

from . import intpoly as ip
from . import ratmat
from .algebraic import (
    AlgebraicNumber,
    alg_compare,
    alg_sign,
    from_rational,
    isolate_roots,
    lambda_to_b,
    scale_down,
)
from .embedding import (
    RelationDissimilarity,
    bound_ambient,
    centered_relation_pencil,
    embedding_dimension,
    scan_small_orders,
    _jperp_charpoly,
)
from .graphs import (
    Graph,
    add_vertex,
    canonical_form,
    delete_vertex,
    generate_all,
    graph6_decode,
    graph6_encode,
    relabel,
)

log = logging.getLogger("indefdist.search")

GENERATION_TIER = 10


class TierExceededError(ValueError):
    """The cell needs base graphs beyond the supported generation tier."""


class DegenerateRelationError(ValueError):
    """A complete or empty graph has only one nonempty relation."""


class CorruptCheckpointError(ValueError):
    """A checkpoint file failed to parse or validate."""


@dataclass(frozen=True)
class LambdaKey:
    """Identity of a search bucket: the eigenvalue, its branch, and b."""

    lam: AlgebraicNumber
    branch: int
    b: object  # Fraction or AlgebraicNumber

    def b_value(self):
        return self.b

    def to_json(self) -> dict:
        bj = (
            f"{self.b.numerator}/{self.b.denominator}"
            if isinstance(self.b, Fraction)
            else self.b.to_json()
        )
        return {"lambda": self.lam.to_json(), "branch": self.branch, "b": bj}

    @staticmethod
    def from_json(data) -> "LambdaKey":
        lam = AlgebraicNumber.from_json(data["lambda"])
        b = data["b"]
        if isinstance(b, str):
            num, den = b.split("/")
            bval: object = Fraction(int(num), int(den))
        else:
            bval = AlgebraicNumber.from_json(b)
        return LambdaKey(lam, int(data["branch"]), bval)


def make_lambda_key(lam: AlgebraicNumber, branch: int) -> LambdaKey:
    b = lambda_to_b(lam, branch)
    if isinstance(b, AlgebraicNumber) and b.is_rational():
        b = b.rational_value()
    return LambdaKey(lam, branch, b)


# -- base-level spectral candidacy ----------------------------------------------


def graph_jperp_spectrum(g: Graph):
    """Sorted [(eigenvalue*n^2 as AlgebraicNumber, multiplicity)] of the
    centered edge matrix on j-perp."""
    n = g.n
    m0, _ = centered_relation_pencil(g, 1)
    h = _jperp_charpoly([[-x for x in row] for row in m0], n)
    roots = []
    for factor, mult in ip.squarefree_decompose(h):
        for r in isolate_roots(factor):
            roots.append((r, mult))
    roots.sort(key=cmp_to_key(lambda a, b: alg_compare(a[0], b[0])))
    return roots


@dataclass(frozen=True)
class Candidate:
    lam: AlgebraicNumber  # the actual eigenvalue (scaled back)
    below: int
    above: int
    mult: int


def candidate_eigenvalues(g: Graph, p: int, q: int, branch: int, spectrum=None):
    """Eigenvalues of the centered edge matrix on j-perp admitting a
    representation in R^{p,q} on the given branch: lambda > -1/2, lambda != 0,
    with at most p (resp. q) eigenvalue multiplicities below and at most q
    (resp. p) above, roles swapping on the negative branch.

    Returns (candidates, boundary_flag); the flag marks graphs whose only
    passing eigenvalue sits exactly on the excluded boundary lambda = -1/2.
    """
    if g.is_complete() or g.is_empty():
        raise DegenerateRelationError("both relations must be nonempty")
    n = g.n
    n2 = n * n
    if spectrum is None:
        spectrum = graph_jperp_spectrum(g)
    total = sum(m for _, m in spectrum)
    half = from_rational(Fraction(-n2, 2))
    out = []
    boundary = False
    below = 0
    for root, mult in spectrum:
        above = total - below - mult
        lo_ok, hi_ok = (below <= p, above <= q) if branch == 1 else (below <= q, above <= p)
        if lo_ok and hi_ok:
            cmp_half = alg_compare(root, half)
            nonzero = alg_sign((0, 1), root) != 0
            if cmp_half > 0 and nonzero:
                out.append(Candidate(scale_down(root, n2), below, above, mult))
            elif cmp_half == 0:
                boundary = True
        below += mult
    return out, boundary


def candidate_is_proper(c: Candidate, p: int, q: int, branch: int) -> bool:
    emb = (c.below, c.above) if branch == 1 else (c.above, c.below)
    return emb == (p, q)


# -- lambda bucket registry ------------------------------------------------------


class LambdaRegistry:
    """Buckets algebraic eigenvalues up to exact equality (alg_compare)."""

    def __init__(self):
        self.keys: list[AlgebraicNumber] = []
        self._float_index: dict[int, list[int]] = {}

    def find_or_add(self, lam: AlgebraicNumber) -> int:
        approx = float(lam)
        for bucket in (int(approx * 1024), int(approx * 1024) + 1, int(approx * 1024) - 1):
            for idx in self._float_index.get(bucket, ()):
                if alg_compare(self.keys[idx], lam) == 0:
                    return idx
        idx = len(self.keys)
        self.keys.append(lam)
        self._float_index.setdefault(int(approx * 1024), []).append(idx)
        return idx


# -- search levels ----------------------------------------------------------------


@dataclass
class SearchLevel:
    n: int
    key: LambdaKey
    graphs: dict  # canonical key bytes -> (rows tuple, flag bool)
    exts: dict | None = None  # canonical key -> tuple of accepted attach masks


def _perm_bit_tables(n_bits: int, bitmap: list[int]):
    """Byte-indexed tables realizing w -> OR of target bits for set source bits."""
    nbytes = (n_bits + 7) // 8
    tables = []
    for bpos in range(nbytes):
        table = [0] * 256
        for byte in range(256):
            acc = 0
            b = byte
            while b:
                low = b & -b
                i = bpos * 8 + low.bit_length() - 1
                if i < n_bits and bitmap[i] >= 0:
                    acc |= 1 << bitmap[i]
                b ^= low
            table[byte] = acc
        tables.append(table)
    return tables


def _apply_tables(tables, w: int) -> int:
    acc = 0
    i = 0
    while w:
        acc |= tables[i][w & 255]
        w >>= 8
        i += 1
    return acc


def _deleted_key_cache_test(g: Graph, w: int, member_keys, cache) -> bool:
    """Direct quasi-representability test: all vertex-deleted subgraphs of
    g+w must be members (early abort, with per-(u, mask) caching)."""
    n = g.n
    child = None
    for u in range(n):
        zu = (w & ((1 << u) - 1)) | ((w >> (u + 1)) << u)
        ck = cache.get((u, zu))
        if ck is None:
            if child is None:
                child = add_vertex(g, w)
            sub = delete_vertex(child, u)
            ck = canonical_form(sub)[0] in member_keys
            cache[(u, zu)] = ck
        if not ck:
            return False
    return True


def extend_level(level: SearchLevel, prev_exts: dict | None, workers: int = 1) -> SearchLevel:
    """Accepted one-vertex extensions of every level graph, with flags.

    Membership of deleted subgraphs is decided through the previous level's
    extension table when available, else by direct canonical-key tests against
    this level's members.  Records this level's extension table on the way.
    """
    n = level.n
    items = sorted(level.graphs.items())
    chunks = _chunk(items, workers)
    args = [(chunk, n, level.graphs, prev_exts) for chunk in chunks]
    if workers > 1 and len(items) > 1:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(workers) as pool:
            partials = pool.map(_extend_chunk, args)
    else:
        partials = [_extend_chunk(a) for a in args]
    exts = {}
    children: dict[bytes, tuple] = {}
    for ext_part, child_part in partials:
        exts.update(ext_part)
        for ckey, rows in child_part.items():
            if ckey not in children:
                children[ckey] = rows
    # flags: OR of the flags of all vertex-deleted subgraphs
    out_graphs = {}
    for ckey in sorted(children):
        rows = children[ckey]
        child = Graph(n + 1, rows)
        flag = False
        for u in range(n + 1):
            sub_key = canonical_form(delete_vertex(child, u))[0]
            rec = level.graphs.get(sub_key)
            if rec is None:
                raise AssertionError("accepted child has a non-member deletion")
            if rec[1]:
                flag = True
                break
        out_graphs[ckey] = (rows, flag)
    level.exts = exts
    return SearchLevel(n + 1, level.key, out_graphs)


def _chunk(items, parts):
    if parts <= 1 or len(items) <= 1:
        return [items]
    size = (len(items) + parts - 1) // parts
    return [items[i : i + size] for i in range(0, len(items), size)]


def _extend_chunk(arg):
    chunk, n, member_map, prev_exts = arg
    member_keys = member_map.keys()
    exts = {}
    children = {}
    for gkey, (rows, _flag) in chunk:
        g = Graph(n, rows)
        accepted = []
        if prev_exts is None:
            cache: dict = {}
            for w in range(1 << n):
                if _deleted_key_cache_test(g, w, member_keys, cache):
                    accepted.append(w)
        else:
            accepted = _extend_graph_fast(g, prev_exts)
        exts[gkey] = tuple(accepted)
        for w in accepted:
            child = add_vertex(g, w)
            ckey, cperm, _ = canonical_form(child)
            if ckey not in children:
                children[ckey] = relabel(child, cperm).rows
    return exts, children


def _extend_graph_fast(g: Graph, prev_exts: dict):
    """Accepted attach masks via the previous level's extension tables."""
    n = g.n
    tests = []
    for u in range(n):
        sub = delete_vertex(g, u)
        key_u, perm_u, _ = canonical_form(sub)
        ext_set = prev_exts.get(key_u)
        if ext_set is None:
            raise AssertionError("level member has a deletion outside the previous level")
        if not ext_set:
            return []
        # bit i of w (i != u) lands at perm_u[reindexed i]
        bitmap = [-1] * n
        for i in range(n):
            if i == u:
                continue
            ri = i if i < u else i - 1
            bitmap[i] = perm_u[ri]
        fwd = _perm_bit_tables(n, bitmap)
        # inverse map for candidate generation
        inv = [-1] * n
        for i in range(n):
            if i != u:
                ri = i if i < u else i - 1
                inv[perm_u[ri]] = i
        tests.append((u, frozenset(ext_set), fwd, inv))
    tests.sort(key=lambda t: len(t[1]))
    u0, set0, _fwd0, inv0 = tests[0]
    inv_tables = _perm_bit_tables(n, inv0)
    accepted = []
    rest = tests[1:]
    for z in sorted(set0):
        w_base = _apply_tables(inv_tables, z)
        for w in (w_base, w_base | (1 << u0)):
            ok = True
            for _u, ext_set, fwd, _inv in rest:
                zu = _apply_tables(fwd, w)
                if zu not in ext_set:
                    ok = False
                    break
            if ok:
                accepted.append(w)
    accepted.sort()
    return accepted


# -- base level -------------------------------------------------------------------


@dataclass
class BranchSearch:
    branch: int
    registry: LambdaRegistry = field(default_factory=LambdaRegistry)
    buckets: dict = field(default_factory=dict)  # idx -> dict key -> (rows, flag)
    boundary_graphs: list = field(default_factory=list)


def build_base_level(
    p: int, q: int, branches=(1, -1), graphs=None, progress=None, prefilter=True
):
    """Bucket every base-order graph by its candidate eigenvalues.

    Returns {branch: BranchSearch}; the properness flag marks base graphs
    whose embedding dimension at the bucket's b is exactly (p, q).

    At the base order every candidate eigenvalue has multiplicity at least 2,
    so graphs without a repeated nonzero centered eigenvalue are skipped in
    batches through a conservative modular test (never discarding a graph the
    exact path could keep).
    """
    base_n = p + q + 3
    if base_n > GENERATION_TIER:
        raise TierExceededError(
            f"cell ({p},{q}) needs order {base_n} > tier {GENERATION_TIER}"
        )
    searches = {br: BranchSearch(br) for br in branches}
    if graphs is None:
        graphs = generate_all(base_n)
    count = 0
    chunk: list[Graph] = []
    CHUNK = 4096

    def flush():
        for g in _prefilter_chunk(chunk, base_n, prefilter):
            _analyze_base_graph(g, p, q, branches, searches, base_n)
        chunk.clear()

    for g in graphs:
        count += 1
        if not (g.is_complete() or g.is_empty()):
            chunk.append(g)
        if len(chunk) >= CHUNK:
            flush()
            if progress:
                progress(f"base order {base_n}: {count} graphs processed")
    flush()
    if progress:
        progress(f"base order {base_n}: {count} graphs processed")
    return searches


def _centered_int_matrix(g: Graph):
    n = g.n
    deg = [g.degree(v) for v in range(n)]
    total = sum(deg)
    a1 = g.adjacency()
    return [
        [n * n * a1[i][j] - n * (deg[i] + deg[j]) + total for j in range(n)]
        for i in range(n)
    ]


def _prefilter_chunk(chunk, base_n, prefilter):
    if not prefilter or len(chunk) < 64:
        return list(chunk)
    import numpy as np

    mats = np.array([_centered_int_matrix(g) for g in chunk], dtype=np.int64)
    mask = ratmat.repeated_nonzero_root_filter(mats)
    return [g for g, keep in zip(chunk, mask) if keep]


def _analyze_base_graph(g, p, q, branches, searches, base_n):
    spectrum = graph_jperp_spectrum(g)
    key, perm, _ = canonical_form(g)
    rows = relabel(g, perm).rows
    for br in branches:
        search = searches[br]
        cands, boundary = candidate_eigenvalues(g, p, q, br, spectrum)
        if boundary:
            search.boundary_graphs.append(graph6_encode(Graph(base_n, rows)))
        for cand in cands:
            idx = search.registry.find_or_add(cand.lam)
            bucket = search.buckets.setdefault(idx, {})
            flag = candidate_is_proper(cand, p, q, br)
            prev = bucket.get(key)
            bucket[key] = (rows, flag or (prev[1] if prev else False))


# -- verification ------------------------------------------------------------------


def verify_representable(g: Graph, key: LambdaKey, p: int, q: int):
    """(representable, proper, embedding) of the two-distance matrix built
    from the graph at the bucket's distances."""
    if g.is_complete() or g.is_empty():
        raise DegenerateRelationError("both relations must be nonempty")
    d = RelationDissimilarity(g, key.branch, key.b_value())
    emb = embedding_dimension(d)
    ok = emb.positives <= p and emb.negatives <= q
    proper = emb.as_pair() == (p, q)
    return ok, proper, emb


# -- full cell classification -------------------------------------------------------


@dataclass(frozen=True)
class CellWinner:
    graph: Graph
    branch: int
    kind: str  # "level", "scan-point", "scan-interval"
    lam: AlgebraicNumber | None
    b: object | None
    b_range: tuple | None
    embedding: tuple


@dataclass
class ClassificationResult:
    p: int
    q: int
    max_order: int | None
    infinite: bool
    winners: list
    level_stats: list  # (branch, lambda_index, n, size, flagged)
    lambda_values: dict  # (branch, idx) -> LambdaKey
    boundary_graphs: list
    elapsed: float = 0.0

    def config_count(self):
        return None if self.infinite else len(self.winners)

    def distinct_graph_count(self):
        from .graphs import canonical_key

        return len({canonical_key(w.graph) for w in self.winners})


@dataclass
class CellSearch:
    """The complete level data of one cell's search, harvestable by any
    per-graph predicate (properness alone, or properness plus a type filter)."""

    p: int
    q: int
    branches: tuple
    bucket_levels: dict  # (branch, idx) -> {n: SearchLevel}
    lambda_values: dict  # (branch, idx) -> LambdaKey
    level_stats: list
    boundary_graphs: list
    elapsed: float


def run_cell_search(
    p: int,
    q: int,
    workers: int = 1,
    checkpoint_dir: str | None = None,
    resume: bool = False,
    max_order: int | None = None,
    progress=None,
    base_graphs=None,
    branches=None,
) -> CellSearch:
    """Run (or restore) the full level search for a cell, without harvesting.

    ``base_graphs`` optionally supplies the base-order graph stream (one
    representative per isomorphism class), letting callers reuse a generated
    stream across cells with the same base order.  ``branches`` restricts the
    run to a subset of (+1, -1); by default both run, one for p = q."""
    t0 = time.time()
    if q > p:
        raise ValueError("use p >= q; the cell (p,q) mirrors (q,p)")
    if p < 1 or q < 0:
        raise ValueError("need p >= 1 and q >= 0")
    base_n = p + q + 3
    cap = bound_ambient(p, q, 2)
    if max_order is not None:
        cap = min(cap, max_order)
    if branches is None:
        branches = (1,) if p == q else (1, -1)
    else:
        branches = tuple(branches)
        if any(br not in (1, -1) for br in branches):
            raise ValueError("branches must be a subset of (1, -1)")
    report_progress = progress or (lambda msg: log.info(msg))

    searches = _load_or_build_base(
        p, q, branches, checkpoint_dir, resume, report_progress, base_graphs
    )

    level_stats = []
    lambda_values = {}
    bucket_levels = {}
    for br in branches:
        search = searches[br]
        for idx in sorted(search.buckets):
            lam = search.registry.keys[idx]
            lkey = make_lambda_key(lam, br)
            lambda_values[(br, idx)] = lkey
            level = SearchLevel(base_n, lkey, search.buckets[idx])
            bucket_levels[(br, idx)] = _run_bucket(
                level,
                (p, q, br, idx),
                cap,
                workers,
                checkpoint_dir,
                resume,
                report_progress,
                level_stats,
            )
    return CellSearch(
        p=p,
        q=q,
        branches=branches,
        bucket_levels=bucket_levels,
        lambda_values=lambda_values,
        level_stats=sorted(level_stats),
        boundary_graphs=sorted({g for br in branches for g in searches[br].boundary_graphs}),
        elapsed=time.time() - t0,
    )


def harvest_levels(cell: CellSearch, accept) -> tuple[int | None, list]:
    """Largest-order flagged level graphs passing ``accept(graph, lkey)``.

    accept returns a CellWinner or None; per bucket the first nonempty order
    (from the top) settles that bucket, and the global maximum order wins.
    """
    best_order = None
    winners: list[CellWinner] = []
    for (br, idx), levels in sorted(cell.bucket_levels.items()):
        lkey = cell.lambda_values[(br, idx)]
        for n in sorted(levels, reverse=True):
            if best_order is not None and n < best_order:
                break
            level = levels[n]
            wins = []
            for key in sorted(level.graphs):
                rows, flag = level.graphs[key]
                if not flag:
                    continue
                w = accept(Graph(n, rows), lkey)
                if w is not None:
                    wins.append(w)
            if wins:
                if best_order is None or n > best_order:
                    best_order = n
                    winners = []
                winners.extend(wins)
                break
    return best_order, _dedup_winners(winners)


def classify(
    p: int,
    q: int,
    workers: int = 1,
    checkpoint_dir: str | None = None,
    resume: bool = False,
    max_order: int | None = None,
    progress=None,
    cell_cache: dict | None = None,
    branches=None,
) -> ClassificationResult:
    """Classify the largest proper two-distance configurations in R^{p,q}."""
    t0 = time.time()
    cell = None
    if cell_cache is not None and branches is None:
        cell = cell_cache.get((p, q))
    if cell is None:
        cell = run_cell_search(
            p, q, workers, checkpoint_dir, resume, max_order, progress, branches=branches
        )
        if cell_cache is not None and branches is None:
            cell_cache[(p, q)] = cell

    def accept(g: Graph, lkey: LambdaKey):
        ok, proper, emb = verify_representable(g, lkey, p, q)
        if ok and proper:
            return CellWinner(
                graph=g,
                branch=lkey.branch,
                kind="level",
                lam=lkey.lam,
                b=lkey.b_value(),
                b_range=None,
                embedding=emb.as_pair(),
            )
        return None

    best_order, winners = harvest_levels(cell, accept)
    infinite = False
    base_n = p + q + 3
    if best_order is None:
        for n in range(base_n - 1, 2, -1):
            wins = _scan_winners(p, q, n)
            if wins:
                best_order = n
                winners = wins
                infinite = any(w.kind == "scan-interval" for w in wins)
                break
    return ClassificationResult(
        p=p,
        q=q,
        max_order=best_order,
        infinite=infinite,
        winners=sorted(
            winners,
            key=lambda w: (graph6_encode(w.graph), w.branch, w.kind),
        ),
        level_stats=cell.level_stats,
        lambda_values=cell.lambda_values,
        boundary_graphs=cell.boundary_graphs,
        elapsed=time.time() - t0,
    )


def _run_bucket(level, ident, cap, workers, checkpoint_dir, resume, progress, level_stats):
    p, q, br, idx = ident
    store = _CheckpointStore(checkpoint_dir, p, q, br, idx, level.key) if checkpoint_dir else None
    levels = {level.n: level}
    if store and resume:
        loaded = store.load_levels()
        if loaded:
            levels = loaded
    cur = levels[max(levels)]
    while True:
        flagged = sum(1 for _rows, f in cur.graphs.values() if f)
        level_stats.append((br, idx, cur.n, len(cur.graphs), flagged))
        progress(
            f"cell ({p},{q}) branch {br:+d} bucket {idx}: order {cur.n}: "
            f"{len(cur.graphs)} graphs, {flagged} flagged"
        )
        if flagged == 0 or cur.n >= cap:
            if store:
                store.save_level(cur)
            break
        prev = levels.get(cur.n - 1)
        nxt = extend_level(cur, prev.exts if prev is not None else None, workers)
        if store:
            store.save_level(cur)  # extension table was just recorded
        levels[nxt.n] = nxt
        cur = nxt
        if not cur.graphs:
            level_stats.append((br, idx, cur.n, 0, 0))
            break
    return levels


def _dedup_winners(winners):
    from .graphs import canonical_key

    seen = set()
    out = []
    for w in winners:
        inner = getattr(w, "winner", w)
        lam_sig = None
        if inner.lam is not None:
            lam_sig = (tuple(inner.lam.poly), str(inner.lam.lo), str(inner.lam.hi))
        sig = (canonical_key(inner.graph), inner.branch, lam_sig)
        if sig in seen:
            continue
        seen.add(sig)
        out.append(w)
    return out


def _scan_winners(p, q, n):
    wins = []
    for w in scan_small_orders(p, q, n):
        kind = "scan-point" if w.kind == "point" else "scan-interval"
        if w.kind == "point":
            d = RelationDissimilarity(w.graph, w.branch, w.b)
            emb = embedding_dimension(d).as_pair()
            if emb != (p, q):
                raise AssertionError("scan winner failed verification")
        wins.append(
            CellWinner(
                graph=w.graph,
                branch=w.branch,
                kind=kind,
                lam=w.lam,
                b=w.b,
                b_range=w.b_range,
                embedding=(p, q),
            )
        )
    return wins


def _load_or_build_base(p, q, branches, checkpoint_dir, resume, progress, base_graphs=None):
    if checkpoint_dir and resume:
        loaded = _try_load_base(p, q, branches, checkpoint_dir)
        if loaded is not None:
            progress(f"cell ({p},{q}): base level restored from checkpoint")
            return loaded
    searches = build_base_level(p, q, branches, graphs=base_graphs, progress=progress)
    if checkpoint_dir:
        _save_base(p, q, searches, checkpoint_dir)
    return searches


# -- checkpoints --------------------------------------------------------------------


def _cell_dir(root, p, q) -> Path:
    return Path(root) / f"cell_p{p}q{q}"


def _save_base(p, q, searches, root):
    cell = _cell_dir(root, p, q)
    cell.mkdir(parents=True, exist_ok=True)
    data = {}
    for br, search in searches.items():
        data[str(br)] = {
            "lambdas": [lam.to_json() for lam in search.registry.keys],
            "boundary": search.boundary_graphs,
            "buckets": {
                str(idx): [
                    [graph6_encode(Graph(p + q + 3, rows)), int(flag)]
                    for key, (rows, flag) in sorted(bucket.items())
                ]
                for idx, bucket in search.buckets.items()
            },
        }
    (cell / "base.json").write_text(json.dumps({"schema": 1, "branches": data}))


def _try_load_base(p, q, branches, root):
    path = _cell_dir(root, p, q) / "base.json"
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())["branches"]
        searches = {}
        for br in branches:
            obj = data[str(br)]
            search = BranchSearch(br)
            for lam_json in obj["lambdas"]:
                lam = AlgebraicNumber.from_json(lam_json)
                search.registry.keys.append(lam)
                approx = float(lam)
                search.registry._float_index.setdefault(int(approx * 1024), []).append(
                    len(search.registry.keys) - 1
                )
            search.boundary_graphs = list(obj["boundary"])
            for idx_s, entries in obj["buckets"].items():
                bucket = {}
                for g6, flag in entries:
                    g = graph6_decode(g6)
                    key, perm, _ = canonical_form(g)
                    bucket[key] = (relabel(g, perm).rows, bool(flag))
                search.buckets[int(idx_s)] = bucket
            searches[br] = search
        return searches
    except (KeyError, ValueError, json.JSONDecodeError) as exc:
        raise CorruptCheckpointError(f"unreadable base checkpoint {path}: {exc}") from exc


class _CheckpointStore:
    def __init__(self, root, p, q, branch, idx, lkey: LambdaKey):
        self.dir = _cell_dir(root, p, q) / f"branch{branch:+d}" / f"lambda_{idx:03d}"
        self.dir.mkdir(parents=True, exist_ok=True)
        self.lkey = lkey
        manifest = self.dir / "manifest.json"
        if manifest.exists():
            data = json.loads(manifest.read_text())
            stored = LambdaKey.from_json(data["key"])
            if stored.branch != lkey.branch or alg_compare(stored.lam, lkey.lam) != 0:
                raise CorruptCheckpointError(
                    f"checkpoint at {self.dir} belongs to a different eigenvalue"
                )
        else:
            manifest.write_text(json.dumps({"schema": 1, "key": lkey.to_json()}))

    def level_paths(self, n):
        return self.dir / f"n{n:02d}.g6", self.dir / f"n{n:02d}.meta.json"

    def save_level(self, level: SearchLevel):
        g6path, metapath = self.level_paths(level.n)
        keys = sorted(level.graphs)
        lines = []
        flags = []
        for key in keys:
            rows, flag = level.graphs[key]
            lines.append(graph6_encode(Graph(level.n, rows)))
            flags.append(int(flag))
        g6path.write_text("\n".join(lines) + ("\n" if lines else ""))
        meta = {"schema": 1, "n": level.n, "flags": flags}
        if level.exts is not None:
            meta["exts"] = {graph6_encode(Graph(level.n, level.graphs[k][0])): list(level.exts[k]) for k in keys if k in level.exts}
        metapath.write_text(json.dumps(meta))

    def load_levels(self):
        levels = {}
        for metapath in sorted(self.dir.glob("n*.meta.json")):
            try:
                meta = json.loads(metapath.read_text())
                n = int(meta["n"])
                g6path, _ = self.level_paths(n)
                lines = [l for l in g6path.read_text().splitlines() if l.strip()]
                if len(lines) != len(meta["flags"]):
                    raise CorruptCheckpointError(
                        f"{metapath}: flag count does not match graph count"
                    )
                graphs = {}
                order = []
                for g6, flag in zip(lines, meta["flags"]):
                    g = graph6_decode(g6)
                    if g.n != n:
                        raise CorruptCheckpointError(f"{metapath}: order mismatch in {g6}")
                    key, perm, _ = canonical_form(g)
                    graphs[key] = (relabel(g, perm).rows, bool(flag))
                    order.append((g6, key))
                level = SearchLevel(n, self.lkey, graphs)
                if "exts" in meta:
                    level.exts = {}
                    for g6, masks in meta["exts"].items():
                        g = graph6_decode(g6)
                        key, _, _ = canonical_form(g)
                        level.exts[key] = tuple(int(m) for m in masks)
                levels[n] = level
            except (KeyError, ValueError, json.JSONDecodeError) as exc:
                raise CorruptCheckpointError(f"unreadable checkpoint {metapath}: {exc}") from exc
        return levels
