"""Core digraph model: arcs as ordered pairs of directed tips.

Every arc owns two tips: an in-tip on its tail side and an out-tip on
its head side.  Vertices are the cells of an arbitrary partition of the
full tip set, so self-loops (both tips of an arc in one cell) and
parallel arcs come for free, while tipless isolated vertices are
unrepresentable by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import EmptyDigraph, EmptySelection, MalformedSpec, PartitionError, SameArc, UnknownId

INTIP = "in"
OUTTIP = "out"


@dataclass(frozen=True, order=True)
class Ditip:
    """A directed tip, identified by its owning arc and its polarity."""

    arc_id: int
    polarity: str  # INTIP or OUTTIP

    def __post_init__(self) -> None:
        if self.polarity not in (INTIP, OUTTIP):
            raise MalformedSpec(f"tip polarity must be {INTIP!r} or {OUTTIP!r}")

    @property
    def is_intip(self) -> bool:
        return self.polarity == INTIP

    def to_json(self) -> list:
        return [self.polarity, self.arc_id]

    @staticmethod
    def from_json(obj) -> Ditip:
        if (not isinstance(obj, list) or len(obj) != 2
                or obj[0] not in (INTIP, OUTTIP) or not isinstance(obj[1], int)):
            raise MalformedSpec(f"tip literal must be [\"in\"|\"out\", arc], got {obj!r}")
        return Ditip(obj[1], obj[0])


@dataclass(frozen=True)
class Arc:
    """An ordered pair of tips; directed from the vertex holding its intip."""

    id: int

    @property
    def intip(self) -> Ditip:
        return Ditip(self.id, INTIP)

    @property
    def outtip(self) -> Ditip:
        return Ditip(self.id, OUTTIP)


@dataclass(frozen=True)
class Vertex:
    """A nonempty cell of the tip partition."""

    id: int
    ditips: frozenset[Ditip]


class Digraph:
    """Immutable digraph: arc list plus a validated vertex partition of tips."""

    __slots__ = ("arcs", "vertices", "tip_owner", "_out", "_und")

    def __init__(self, arc_count: int, cells: Sequence[Iterable[Ditip]]):
        if arc_count <= 0:
            raise EmptyDigraph("a digraph needs at least one arc; no tips means no vertices")
        all_tips = {Ditip(i, pol) for i in range(arc_count) for pol in (INTIP, OUTTIP)}
        owner: dict[Ditip, int] = {}
        vertices = []
        for vid, cell in enumerate(cells):
            tips = frozenset(cell)
            if not tips:
                raise PartitionError(f"vertex cell {vid} is empty")
            for t in tips:
                if t not in all_tips:
                    raise PartitionError(f"cell {vid} contains unknown tip {t}")
                if t in owner:
                    raise PartitionError(f"tip {t} appears in cells {owner[t]} and {vid}")
                owner[t] = vid
            vertices.append(Vertex(vid, tips))
        missing = all_tips - owner.keys()
        if missing:
            raise PartitionError(f"tips not covered by any cell: {sorted(missing)}")

        self.arcs = tuple(Arc(i) for i in range(arc_count))
        self.vertices = tuple(vertices)
        self.tip_owner = owner

        # sorted adjacency for deterministic searches
        out: list[list[tuple[int, int]]] = [[] for _ in vertices]
        und: list[list[tuple[int, int]]] = [[] for _ in vertices]
        for a in self.arcs:
            u, v = owner[a.intip], owner[a.outtip]
            out[u].append((v, a.id))
            und[u].append((v, a.id))
            if u != v:
                und[v].append((u, a.id))
        self._out = tuple(tuple(sorted(row)) for row in out)
        self._und = tuple(tuple(sorted(row)) for row in und)

    # ---- accessors ----

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def tail_of(self, arc_id: int) -> int:
        self._check_arc(arc_id)
        return self.tip_owner[Ditip(arc_id, INTIP)]

    def head_of(self, arc_id: int) -> int:
        self._check_arc(arc_id)
        return self.tip_owner[Ditip(arc_id, OUTTIP)]

    def is_self_loop(self, arc_id: int) -> bool:
        return self.tail_of(arc_id) == self.head_of(arc_id)

    def out_neighbors(self, vertex_id: int) -> tuple[tuple[int, int], ...]:
        """Sorted (head vertex, arc) pairs for arcs leaving the vertex."""
        self._check_vertex(vertex_id)
        return self._out[vertex_id]

    def und_neighbors(self, vertex_id: int) -> tuple[tuple[int, int], ...]:
        """Sorted (other vertex, arc) pairs ignoring direction; self-loops once."""
        self._check_vertex(vertex_id)
        return self._und[vertex_id]

    def is_simple(self) -> bool:
        """No self-loops and no parallel arcs (same ordered tail/head pair)."""
        seen = set()
        for a in self.arcs:
            u, v = self.tip_owner[a.intip], self.tip_owner[a.outtip]
            if u == v or (u, v) in seen:
                return False
            seen.add((u, v))
        return True

    def _check_arc(self, arc_id: int) -> None:
        if not 0 <= arc_id < len(self.arcs):
            raise UnknownId(f"no arc {arc_id} (have {len(self.arcs)})")

    def _check_vertex(self, vertex_id: int) -> None:
        if not 0 <= vertex_id < len(self.vertices):
            raise UnknownId(f"no vertex {vertex_id} (have {len(self.vertices)})")

    # ---- value semantics / wire format ----

    def _key(self) -> tuple:
        return (len(self.arcs), tuple(v.ditips for v in self.vertices))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        pairs = ",".join(f"({self.tail_of(a.id)},{self.head_of(a.id)})" for a in self.arcs)
        return f"Digraph[{pairs}]"

    def to_json(self) -> dict:
        return {
            "arc_count": len(self.arcs),
            "partition": [[t.to_json() for t in sorted(v.ditips)] for v in self.vertices],
        }

    @staticmethod
    def from_json(obj: dict) -> Digraph:
        if not isinstance(obj, dict):
            raise MalformedSpec("digraph literal must be an object")
        if "arcs" in obj:
            pairs = obj["arcs"]
            if (not isinstance(pairs, list)
                    or not all(isinstance(p, list) and len(p) == 2
                               and all(isinstance(x, int) for x in p) for p in pairs)):
                raise MalformedSpec("\"arcs\" must be a list of [tail, head] integer pairs")
            return build_digraph([tuple(p) for p in pairs])
        if "arc_count" in obj and "partition" in obj:
            n, cells = obj["arc_count"], obj["partition"]
            if not isinstance(n, int) or not isinstance(cells, list):
                raise MalformedSpec("partition form needs integer \"arc_count\" and a list \"partition\"")
            return Digraph(n, [[Ditip.from_json(t) for t in cell] for cell in cells])
        raise MalformedSpec("digraph literal needs either \"arcs\" or \"arc_count\"+\"partition\"")


def build_digraph(arc_specs) -> Digraph:
    """Build a digraph from (tail, head) label pairs or an explicit tip partition.

    Arc-list form: each (u, v) pair puts arc i's intip in the cell labeled u
    and its outtip in the cell labeled v; vertex ids follow first appearance
    of labels.  Partition form: a pair (arc_count, cells of Ditip) is taken
    as-is, so exotic partitions stay expressible.
    """
    if (isinstance(arc_specs, tuple) and len(arc_specs) == 2
            and isinstance(arc_specs[0], int)):
        return Digraph(arc_specs[0], arc_specs[1])
    pairs = list(arc_specs)
    if not pairs:
        raise EmptyDigraph("a digraph needs at least one arc")
    order: dict = {}
    for u, v in pairs:
        order.setdefault(u, len(order))
        order.setdefault(v, len(order))
    cells: list[list[Ditip]] = [[] for _ in order]
    for i, (u, v) in enumerate(pairs):
        cells[order[u]].append(Ditip(i, INTIP))
        cells[order[v]].append(Ditip(i, OUTTIP))
    return Digraph(len(pairs), cells)


@dataclass(frozen=True)
class UGraph:
    """Underlying graph: branch list and node partition with directions erased."""

    branches: tuple[tuple[Ditip, Ditip], ...]
    nodes: tuple[frozenset[Ditip], ...]


def underlying_graph(d: Digraph) -> UGraph:
    """Erase arc directions: each arc becomes the unordered branch of its tips."""
    return UGraph(
        branches=tuple((a.intip, a.outtip) for a in d.arcs),
        nodes=tuple(v.ditips for v in d.vertices),
    )


INWARD = "inward"
OUTWARD = "outward"
BOTH = "both"
NONE = "none"


def incidence(d: Digraph, vertex_id: int, arc_id: int) -> str:
    """How the arc meets the vertex: inward (tail there), outward (head there),
    both (self-loop at it), or none."""
    d._check_vertex(vertex_id)
    d._check_arc(arc_id)
    at_tail = d.tail_of(arc_id) == vertex_id
    at_head = d.head_of(arc_id) == vertex_id
    if at_tail and at_head:
        return BOTH
    if at_tail:
        return INWARD
    if at_head:
        return OUTWARD
    return NONE


def vertex_adjacency(d: Digraph, u: int, v: int) -> bool:
    """True iff some arc runs between the two vertices, in either direction
    (or loops at u when u = v)."""
    d._check_vertex(u)
    d._check_vertex(v)
    for a in d.arcs:
        s, t = d.tail_of(a.id), d.head_of(a.id)
        if (s == u and t == v) or (s == v and t == u):
            return True
    return False


def arc_adjacency(d: Digraph, a: int, c: int) -> bool:
    """True iff some vertex holds a tip of each arc (any tip pairing counts)."""
    d._check_arc(a)
    d._check_arc(c)
    if a == c:
        raise SameArc(f"arc adjacency needs two distinct arcs, got {a} twice")
    ends_a = {d.tail_of(a), d.head_of(a)}
    ends_c = {d.tail_of(c), d.head_of(c)}
    return bool(ends_a & ends_c)


@dataclass(frozen=True)
class Subdigraph:
    """An arc subset with every vertex touching it; not itself a digraph in
    general, since touched vertices keep tips of outside arcs."""

    arc_subset: frozenset[int]
    vertices: frozenset[int]


def _check_arc_selection(d: Digraph, arc_ids) -> frozenset[int]:
    sel = frozenset(arc_ids)
    if not sel:
        raise EmptySelection("arc selection is empty")
    for a in sel:
        d._check_arc(a)
    return sel


def induced_subdigraph(d: Digraph, arc_ids) -> Subdigraph:
    """The arc subset and every vertex owning at least one tip of it."""
    sel = _check_arc_selection(d, arc_ids)
    touched = frozenset(owner for tip, owner in d.tip_owner.items() if tip.arc_id in sel)
    return Subdigraph(sel, touched)


def reduced_digraph(d: Digraph, arc_ids) -> Digraph:
    """Shrink each touched vertex to its tips on selected arcs; a valid digraph.

    Arcs are renumbered by ascending original id; vertices keep their
    relative order.
    """
    sel = sorted(_check_arc_selection(d, arc_ids))
    renum = {old: new for new, old in enumerate(sel)}
    cells = []
    for v in d.vertices:
        kept = [Ditip(renum[t.arc_id], t.polarity) for t in v.ditips if t.arc_id in renum]
        if kept:
            cells.append(kept)
    return Digraph(len(sel), cells)
