"""Paths, connectedness grades, components and the semipath metric.

Directed paths respect arc direction; semipaths ignore it.  Both require
all arcs and all vertices on them to be distinct.  Searches are
breadth-first with sorted neighbor order, so shortest results are
deterministic.  Unilateral components are the maximal sets of pairwise
one-way-reachable vertices; they arise as unions of maximal chains in
the condensation order and may overlap, unlike strong and weak
components which partition the vertex set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .digraph import Digraph, induced_subdigraph
from .errors import MalformedSpec, SameVertex, UnknownId

STRONG = "strong"
UNILATERAL = "unilateral"
WEAK = "weak"
DISCONNECTED = "disconnected"
STRICTLY_UNILATERAL = "strictly_unilateral"
STRICTLY_WEAK = "strictly_weak"


# ---- path values ----

@dataclass(frozen=True)
class Dipath:
    """Direction-respecting path; length counts arcs."""

    vertices: tuple[int, ...]
    arcs: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.arcs)

    def validate(self, d: Digraph) -> None:
        _validate_walk(d, self.vertices, self.arcs, directed=True, closed=False)


@dataclass(frozen=True)
class Semipath:
    """Path in the underlying graph: each step touches the arc by either tip."""

    vertices: tuple[int, ...]
    arcs: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.arcs)

    def validate(self, d: Digraph) -> None:
        _validate_walk(d, self.vertices, self.arcs, directed=False, closed=False)


@dataclass(frozen=True)
class Diloop:
    """Closed dipath: ends meet, interior stays distinct."""

    vertices: tuple[int, ...]
    arcs: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.arcs)

    def validate(self, d: Digraph) -> None:
        _validate_walk(d, self.vertices, self.arcs, directed=True, closed=True)


@dataclass(frozen=True)
class Semiloop:
    """Closed semipath: ends meet, interior stays distinct."""

    vertices: tuple[int, ...]
    arcs: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.arcs)

    def validate(self, d: Digraph) -> None:
        _validate_walk(d, self.vertices, self.arcs, directed=False, closed=True)


def _validate_walk(d: Digraph, vs: tuple[int, ...], arcs: tuple[int, ...],
                   directed: bool, closed: bool) -> None:
    if len(vs) != len(arcs) + 1 or not arcs:
        raise MalformedSpec("a path needs k arcs and k+1 vertices, k >= 1")
    interior = vs[:-1] if closed else vs
    if len(set(interior)) != len(interior):
        raise MalformedSpec(f"path vertices repeat: {vs}")
    if closed and vs[0] != vs[-1]:
        raise MalformedSpec("a loop must end where it starts")
    if len(set(arcs)) != len(arcs):
        raise MalformedSpec(f"path arcs repeat: {arcs}")
    for i, a in enumerate(arcs):
        s, t = d.tail_of(a), d.head_of(a)
        forward = s == vs[i] and t == vs[i + 1]
        backward = s == vs[i + 1] and t == vs[i]
        if directed and not forward:
            raise MalformedSpec(f"arc {a} does not run {vs[i]} -> {vs[i + 1]}")
        if not directed and not (forward or backward):
            raise MalformedSpec(f"arc {a} does not join {vs[i]} and {vs[i + 1]}")


# ---- breadth-first searches ----

def _bfs(d: Digraph, src: int, directed: bool,
         banned_arc: int | None = None) -> tuple[list[int | None], list[tuple[int, int] | None]]:
    """Distances and (parent vertex, parent arc) from src; None = unreached."""
    dist: list[int | None] = [None] * d.vertex_count
    parent: list[tuple[int, int] | None] = [None] * d.vertex_count
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        row = d.out_neighbors(u) if directed else d.und_neighbors(u)
        for w, a in row:
            if a == banned_arc or dist[w] is not None:
                continue
            dist[w] = dist[u] + 1
            parent[w] = (u, a)
            queue.append(w)
    return dist, parent


def _walk_back(parent, src: int, dst: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    vs, arcs = [dst], []
    v = dst
    while v != src:
        u, a = parent[v]
        vs.append(u)
        arcs.append(a)
        v = u
    return tuple(reversed(vs)), tuple(reversed(arcs))


def find_dipath(d: Digraph, u: int, v: int) -> Dipath | None:
    """A shortest directed path from u to v, or None."""
    d._check_vertex(u)
    d._check_vertex(v)
    if u == v:
        raise SameVertex(f"paths need distinct endpoints, got vertex {u} twice")
    dist, parent = _bfs(d, u, directed=True)
    if dist[v] is None:
        return None
    path = Dipath(*_walk_back(parent, u, v))
    path.validate(d)
    return path


def find_semipath(d: Digraph, u: int, v: int) -> Semipath | None:
    """A shortest path from u to v ignoring arc directions, or None."""
    d._check_vertex(u)
    d._check_vertex(v)
    if u == v:
        raise SameVertex(f"paths need distinct endpoints, got vertex {u} twice")
    dist, parent = _bfs(d, u, directed=False)
    if dist[v] is None:
        return None
    path = Semipath(*_walk_back(parent, u, v))
    path.validate(d)
    return path


def find_diloop(d: Digraph, v: int) -> Diloop | None:
    """A shortest directed cycle through v, or None; a self-loop gives length 1."""
    d._check_vertex(v)
    best: tuple[int, int, int] | None = None  # (total length, first head, first arc)
    for w, a in d.out_neighbors(v):
        if w == v:
            best = (1, v, a) if best is None else min(best, (1, v, a))
            continue
        dist, _ = _bfs(d, w, directed=True)
        if dist[v] is not None:
            cand = (1 + dist[v], w, a)
            best = cand if best is None else min(best, cand)
    if best is None:
        return None
    _, w, a = best
    if w == v:
        loop = Diloop((v, v), (a,))
    else:
        dist, parent = _bfs(d, w, directed=True)
        vs, arcs = _walk_back(parent, w, v)
        loop = Diloop((v,) + vs, (a,) + arcs)
    loop.validate(d)
    return loop


def find_semiloop(d: Digraph, v: int) -> Semiloop | None:
    """A shortest closed semipath through v, or None.

    Arc distinctness matters here: the return trip may not reuse the
    departure arc, so the search bans it explicitly.
    """
    d._check_vertex(v)
    best: tuple[int, int, int] | None = None
    for w, a in d.und_neighbors(v):
        if w == v:
            best = (1, v, a) if best is None else min(best, (1, v, a))
            continue
        dist, _ = _bfs(d, w, directed=False, banned_arc=a)
        if dist[v] is not None:
            cand = (1 + dist[v], w, a)
            best = cand if best is None else min(best, cand)
    if best is None:
        return None
    _, w, a = best
    if w == v:
        loop = Semiloop((v, v), (a,))
    else:
        dist, parent = _bfs(d, w, directed=False, banned_arc=a)
        vs, arcs = _walk_back(parent, w, v)
        loop = Semiloop((v,) + vs, (a,) + arcs)
    loop.validate(d)
    return loop


def directed_distance(d: Digraph, u: int, v: int) -> int | None:
    """Length of a shortest dipath u -> v; 0 when u = v; None when unreachable."""
    d._check_vertex(u)
    d._check_vertex(v)
    if u == v:
        return 0
    return _bfs(d, u, directed=True)[0][v]


def standard_distance(d: Digraph, u: int, v: int) -> int | None:
    """The semipath metric: least semipath length, 0 on the diagonal,
    None across weak components."""
    d._check_vertex(u)
    d._check_vertex(v)
    if u == v:
        return 0
    return _bfs(d, u, directed=False)[0][v]


# ---- connectedness grades ----

def pair_connectedness(d: Digraph, u: int, v: int) -> str:
    """Strongest grade linking the pair: strong, unilateral, weak, disconnected."""
    d._check_vertex(u)
    d._check_vertex(v)
    if u == v:
        raise SameVertex(f"connectedness grades need distinct vertices, got {u} twice")
    fwd = _bfs(d, u, directed=True)[0][v] is not None
    bwd = _bfs(d, v, directed=True)[0][u] is not None
    if fwd and bwd:
        return STRONG
    if fwd or bwd:
        return UNILATERAL
    if _bfs(d, u, directed=False)[0][v] is not None:
        return WEAK
    return DISCONNECTED


def strongly_connected_components(d: Digraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative; components sorted by least vertex."""
    index_of = [None] * d.vertex_count
    low = [0] * d.vertex_count
    on_stack = [False] * d.vertex_count
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(d.vertex_count):
        if index_of[root] is not None:
            continue
        work = [(root, iter(d.out_neighbors(root)))]
        index_of[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w, _a in it:
                if index_of[w] is None:
                    index_of[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(d.out_neighbors(w))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index_of[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    comps.sort()
    return comps


def _condensation(d: Digraph) -> tuple[list[list[int]], list[set[int]]]:
    """SCC list plus direct edges between distinct SCCs."""
    comps = strongly_connected_components(d)
    comp_of = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    edges: list[set[int]] = [set() for _ in comps]
    for a in d.arcs:
        cu, cv = comp_of[d.tail_of(a.id)], comp_of[d.head_of(a.id)]
        if cu != cv:
            edges[cu].add(cv)
    return comps, edges


def _has_unique_topo_order(edges: list[set[int]]) -> bool:
    # a DAG is a reachability chain iff peeling always sees exactly one source
    k = len(edges)
    indeg = [0] * k
    for outs in edges:
        for w in outs:
            indeg[w] += 1
    alive = set(range(k))
    while alive:
        sources = [v for v in alive if indeg[v] == 0]
        if len(sources) != 1:
            return False
        v = sources[0]
        alive.remove(v)
        for w in edges[v]:
            indeg[w] -= 1
    return True


def classify_digraph(d: Digraph) -> str:
    """Whole-digraph grade: strong, strictly_unilateral, strictly_weak,
    disconnected (some pair has no semipath at all)."""
    comps, edges = _condensation(d)
    if len(comps) == 1:
        return STRONG
    if _has_unique_topo_order(edges):
        return STRICTLY_UNILATERAL
    if len(weak_components(d)) == 1:
        return STRICTLY_WEAK
    return DISCONNECTED


def weak_components(d: Digraph) -> list[list[int]]:
    seen = [False] * d.vertex_count
    comps = []
    for s in range(d.vertex_count):
        if seen[s]:
            continue
        dist, _ = _bfs(d, s, directed=False)
        comp = [v for v in range(d.vertex_count) if dist[v] is not None and not seen[v]]
        for v in comp:
            seen[v] = True
        comps.append(sorted(comp))
    comps.sort()
    return comps


def _reachability(edges: list[set[int]]) -> list[set[int]]:
    k = len(edges)
    reach: list[set[int]] = [set() for _ in range(k)]
    for v in range(k):
        todo = list(edges[v])
        while todo:
            w = todo.pop()
            if w in reach[v]:
                continue
            reach[v].add(w)
            todo.extend(edges[w])
    return reach


def unilateral_components(d: Digraph) -> list[list[int]]:
    """All maximal sets of pairwise one-way-reachable vertices.

    These are the unions of maximal chains of the condensation order, so
    they may overlap and need not partition the vertex set.
    """
    comps, edges = _condensation(d)
    reach = _reachability(edges)
    k = len(comps)
    covers: list[list[int]] = []
    for v in range(k):
        covs = [w for w in reach[v]
                if not any(x != w and w in reach[x] for x in reach[v])]
        covers.append(sorted(covs))
    minimal = [v for v in range(k) if not any(v in reach[u] for u in range(k))]
    out: list[list[int]] = []
    stack: list[tuple[int, tuple[int, ...]]] = [(m, (m,)) for m in sorted(minimal)]
    while stack:
        v, chain = stack.pop()
        if not covers[v]:
            members = sorted(x for c in chain for x in comps[c])
            out.append(members)
            continue
        for w in covers[v]:
            stack.append((w, chain + (w,)))
    out.sort()
    return out


def components(d: Digraph, kind: str) -> list[list[int]]:
    """Components of the requested grade, each a sorted vertex-id list.

    Strong and weak kinds partition the vertices; the unilateral kind
    returns every maximal pairwise-unilateral set, which may overlap.
    """
    if kind == STRONG:
        return strongly_connected_components(d)
    if kind == WEAK:
        return weak_components(d)
    if kind == UNILATERAL:
        return unilateral_components(d)
    raise MalformedSpec(f"unknown component kind {kind!r}")


def is_finitely_dispersed(d: Digraph, arc_ids, k: int) -> bool:
    """True iff every vertex pair touched by the arc selection sits within
    semipath distance k, distances measured in the whole digraph."""
    touched = sorted(induced_subdigraph(d, arc_ids).vertices)
    for i, u in enumerate(touched):
        dist, _ = _bfs(d, u, directed=False)
        for v in touched[i + 1:]:
            if dist[v] is None or dist[v] > k:
                return False
    return True
