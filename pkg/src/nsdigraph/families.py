"""Digraph families: sequences of standard digraphs with exact adapters.

A family represents the sequence D_0, D_1, D_2, ... underlying an
ultrapower.  Elements of the D_n are addressed by integer labels (vertex
ids and arc ids), and internal elements are label sequences, so every
family question (validity, reachability, distance, adjacency, counts,
classification) is answered as an exact ultimately periodic index set or
quasi-polynomial sequence over those label sequences.

Builtin families grow with the index n; the two *_dipath_enlargement
builtins are constant infinite digraphs (vertices labeled by naturals or
by integers), handled entirely through closed forms.  Explicit families
carry finitely many override digraphs followed by a fixed tail, either a
concrete finite digraph or a named builtin; all adapters recompute the
override prefix per index and use the tail's closed form beyond it.
"""

from __future__ import annotations

from typing import Callable

from .connectivity import (classify_digraph, directed_distance, standard_distance,
                           weak_components)
from .digraph import Digraph, Ditip, INTIP, OUTTIP, build_digraph, vertex_adjacency, arc_adjacency
from .errors import (InvalidSelector, MalformedSpec, NonEventuallyConstantExplicit,
                     NotFiniteEnlargement, UnknownBuiltin, UnsupportedFamily)
from .sequences import IntSeq
from .ultrafilter import IndexSet

STRONG = "strong"
STRICTLY_UNILATERAL = "strictly_unilateral"
STRICTLY_WEAK = "strictly_weak"
DISCONNECTED = "disconnected"
GRADES = (STRONG, STRICTLY_UNILATERAL, STRICTLY_WEAK, DISCONNECTED)

_N = IntSeq.identity


def _m1() -> IntSeq:
    return IntSeq.clamped_identity(1)


def _m2() -> IntSeq:
    return IntSeq.clamped_identity(2)


def _absdiff(u: IntSeq, v: IntSeq) -> IntSeq:
    return u.monus(v) + v.monus(u)


def _set_from(bits: Callable[[int], bool], upto: int, tail: IndexSet) -> IndexSet:
    """Index set with pointwise bits below `upto` and `tail`'s pattern beyond."""
    n0 = max(upto, tail.threshold)
    prefix = [bits(n) if n < upto else (n in tail) for n in range(n0)]
    return IndexSet(prefix, tail.period, tail.residues)


# ---- per-index evaluation on a concrete digraph (labels are ids) ----

def _vx_ok(d: Digraph, x: int) -> bool:
    return 0 <= x < d.vertex_count


def _arc_ok(d: Digraph, x: int) -> bool:
    return 0 <= x < d.arc_count


def _px_reach(d: Digraph, u: int, v: int) -> bool:
    return _vx_ok(d, u) and _vx_ok(d, v) and directed_distance(d, u, v) is not None


def _px_semireach(d: Digraph, u: int, v: int) -> bool:
    return _vx_ok(d, u) and _vx_ok(d, v) and standard_distance(d, u, v) is not None


def _px_dipath_len(d: Digraph, u: int, v: int) -> int:
    if not (_vx_ok(d, u) and _vx_ok(d, v)):
        return 0
    k = directed_distance(d, u, v)
    return 0 if k is None else k


def _px_semidist(d: Digraph, u: int, v: int) -> int:
    if not (_vx_ok(d, u) and _vx_ok(d, v)):
        return 0
    k = standard_distance(d, u, v)
    return 0 if k is None else k


def _px_vertex_adj(d: Digraph, u: int, v: int) -> bool:
    return _vx_ok(d, u) and _vx_ok(d, v) and vertex_adjacency(d, u, v)


def _px_arc_adj(d: Digraph, a: int, c: int) -> bool:
    if not (_arc_ok(d, a) and _arc_ok(d, c)):
        return False
    return True if a == c else arc_adjacency(d, a, c)


# ---- base models ----

class _Base:
    """Tail model of a family: closed-form adapters exact at every index."""

    name: str = ""
    finite = True          # every D_n finite
    simple = True          # no self-loops or parallel arcs, every index
    locally_finite = True  # every vertex meets finitely many tips
    weakly_connected = True
    classification = STRONG

    def key(self):
        return self.name

    def digraph_at(self, n: int) -> Digraph:
        raise UnsupportedFamily(f"{self.name} digraphs are infinite and cannot be materialized")

    def vertex_count_seq(self) -> IntSeq | None:
        return None

    def arc_count_seq(self) -> IntSeq | None:
        return None

    # every method below answers about index n via label sequences
    def vertex_valid(self, u: IntSeq) -> IndexSet:
        raise NotImplementedError

    def arc_valid(self, a: IntSeq) -> IndexSet:
        raise NotImplementedError

    def arc_tail(self, a: IntSeq) -> IntSeq:
        raise NotImplementedError

    def arc_head(self, a: IntSeq) -> IntSeq:
        raise NotImplementedError

    def reach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        raise NotImplementedError

    def semireach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        raise NotImplementedError

    def dipath_len(self, u: IntSeq, v: IntSeq) -> IntSeq:
        raise NotImplementedError

    def semidist(self, u: IntSeq, v: IntSeq) -> IntSeq:
        raise NotImplementedError

    def vertex_adj(self, u: IntSeq, v: IntSeq) -> IndexSet:
        raise NotImplementedError

    def arc_adj(self, a: IntSeq, c: IntSeq) -> IndexSet:
        raise NotImplementedError


class _DipathBase(_Base):
    """Vertices 0..m, arcs i -> i+1 (arc label i), m = max(n, 1)."""

    name = "dipath"
    classification = STRICTLY_UNILATERAL

    def digraph_at(self, n: int) -> Digraph:
        m = max(n, 1)
        return build_digraph([(i, i + 1) for i in range(m)])

    def vertex_count_seq(self) -> IntSeq:
        return _m1() + 1

    def arc_count_seq(self) -> IntSeq:
        return _m1()

    def vertex_valid(self, u: IntSeq) -> IndexSet:
        return u.compare("ge", 0) & u.compare("le", _m1())

    def arc_valid(self, a: IntSeq) -> IndexSet:
        return a.compare("ge", 0) & a.compare("lt", _m1())

    def arc_tail(self, a: IntSeq) -> IntSeq:
        return a

    def arc_head(self, a: IntSeq) -> IntSeq:
        return a + 1

    def reach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return u.compare("le", v)

    def semireach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return IndexSet.full()

    def dipath_len(self, u: IntSeq, v: IntSeq) -> IntSeq:
        return v.monus(u)

    def semidist(self, u: IntSeq, v: IntSeq) -> IntSeq:
        return _absdiff(u, v)

    def vertex_adj(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return _absdiff(u, v).eq_set(1)

    def arc_adj(self, a: IntSeq, c: IntSeq) -> IndexSet:
        return _absdiff(a, c).compare("le", 1)


class _DicycleBase(_Base):
    """Vertices 0..m-1, arcs i -> i+1 mod m (arc label i), m = max(n, 2)."""

    name = "dicycle"
    classification = STRONG

    def digraph_at(self, n: int) -> Digraph:
        m = max(n, 2)
        return build_digraph([(i, (i + 1) % m) for i in range(m)])

    def vertex_count_seq(self) -> IntSeq:
        return _m2()

    def arc_count_seq(self) -> IntSeq:
        return _m2()

    def vertex_valid(self, u: IntSeq) -> IndexSet:
        return u.compare("ge", 0) & u.compare("lt", _m2())

    arc_valid = vertex_valid

    def arc_tail(self, a: IntSeq) -> IntSeq:
        return a

    def arc_head(self, a: IntSeq) -> IntSeq:
        return IntSeq.piecewise(a.compare("lt", _m2() - 1), a + 1, IntSeq.constant(0))

    def reach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return IndexSet.full()

    semireach = reach

    def dipath_len(self, u: IntSeq, v: IntSeq) -> IntSeq:
        return IntSeq.piecewise(v.compare("ge", u), v - u, v - u + _m2())

    def semidist(self, u: IntSeq, v: IntSeq) -> IntSeq:
        w = _absdiff(u, v)
        return w.min_with(_m2().monus(w))

    def vertex_adj(self, u: IntSeq, v: IntSeq) -> IndexSet:
        w = _absdiff(u, v)
        return w.eq_set(1) | w.eq_set(_m2() - 1)

    def arc_adj(self, a: IntSeq, c: IntSeq) -> IndexSet:
        w = _absdiff(a, c)
        return a.eq_set(c) | w.eq_set(1) | w.eq_set(_m2() - 1)


class _CompleteBase(_Base):
    """All ordered pairs over m = max(n, 2) vertices; arc labels enumerate
    tails in order, heads skipping the tail: label = u*(m-1) + (v if v < u
    else v-1)."""

    name = "complete_symmetric"
    classification = STRONG

    def digraph_at(self, n: int) -> Digraph:
        m = max(n, 2)
        return build_digraph([(u, v) for u in range(m) for v in range(m) if v != u])

    def vertex_count_seq(self) -> IntSeq:
        return _m2()

    def arc_count_seq(self) -> IntSeq:
        m = _m2()
        return m * (m - 1)

    def vertex_valid(self, u: IntSeq) -> IndexSet:
        return u.compare("ge", 0) & u.compare("lt", _m2())

    def arc_valid(self, a: IntSeq) -> IndexSet:
        m = _m2()
        return a.compare("ge", 0) & a.compare("lt", m * (m - 1))

    def _arc_const(self, a: IntSeq) -> int:
        c = a.eventual_constant()
        if c is None:
            raise InvalidSelector(
                "complete_symmetric arc selectors must be eventually constant: "
                "decoding a growing label against a growing vertex count is not "
                "expressible in the supported sequence class")
        return c

    def _decode_at(self, n: int, label: int) -> tuple[int, int]:
        m = max(n, 2)
        if not 0 <= label < m * (m - 1):
            return (0, 0)
        tail, rem = divmod(label, m - 1)
        return (tail, rem if rem < tail else rem + 1)

    def arc_tail(self, a: IntSeq) -> IntSeq:
        c = self._arc_const(a)
        stable = max(a.threshold, c + 2)
        return IntSeq.from_function(lambda n: self._decode_at(n, a.value(n))[0],
                                    stable, IntSeq.constant(0))

    def arc_head(self, a: IntSeq) -> IntSeq:
        c = self._arc_const(a)
        stable = max(a.threshold, c + 2)
        return IntSeq.from_function(lambda n: self._decode_at(n, a.value(n))[1],
                                    stable, IntSeq.constant(c + 1))

    def reach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return IndexSet.full()

    semireach = reach

    def dipath_len(self, u: IntSeq, v: IntSeq) -> IntSeq:
        return IntSeq.piecewise(u.eq_set(v), IntSeq.constant(0), IntSeq.constant(1))

    semidist = dipath_len

    def vertex_adj(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return ~u.eq_set(v)

    def arc_adj(self, a: IntSeq, c: IntSeq) -> IndexSet:
        ka, kc = self._arc_const(a), self._arc_const(c)
        stable = max(a.threshold, c.threshold, ka + 2, kc + 2)

        def bit(n: int) -> bool:
            ends_a = set(self._decode_at(n, a.value(n)))
            ends_c = set(self._decode_at(n, c.value(n)))
            return a.value(n) == c.value(n) or bool(ends_a & ends_c)

        # frozen labels share tail vertex 0, so the tail pattern is full
        return _set_from(bit, stable, IndexSet.full())


class _InStarBase(_Base):
    """Sink vertex 0; sources 1..m each sending one arc to the sink
    (arc label i runs from source i+1), m = max(n, 2)."""

    name = "in_star"
    classification = STRICTLY_WEAK

    def digraph_at(self, n: int) -> Digraph:
        m = max(n, 2)
        cells = [[Ditip(i, OUTTIP) for i in range(m)]]
        cells += [[Ditip(i, INTIP)] for i in range(m)]
        return Digraph(m, cells)

    def vertex_count_seq(self) -> IntSeq:
        return _m2() + 1

    def arc_count_seq(self) -> IntSeq:
        return _m2()

    def vertex_valid(self, u: IntSeq) -> IndexSet:
        return u.compare("ge", 0) & u.compare("le", _m2())

    def arc_valid(self, a: IntSeq) -> IndexSet:
        return a.compare("ge", 0) & a.compare("lt", _m2())

    def arc_tail(self, a: IntSeq) -> IntSeq:
        return a + 1

    def arc_head(self, a: IntSeq) -> IntSeq:
        return IntSeq.constant(0)

    def reach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return u.eq_set(v) | v.eq_set(0)

    def semireach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return IndexSet.full()

    def dipath_len(self, u: IntSeq, v: IntSeq) -> IntSeq:
        return IntSeq.piecewise(u.eq_set(v), IntSeq.constant(0), IntSeq.constant(1))

    def semidist(self, u: IntSeq, v: IntSeq) -> IntSeq:
        near = IntSeq.piecewise(u.eq_set(0) | v.eq_set(0), IntSeq.constant(1),
                                IntSeq.constant(2))
        return IntSeq.piecewise(u.eq_set(v), IntSeq.constant(0), near)

    def vertex_adj(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return (u.eq_set(0) & ~v.eq_set(0)) | (v.eq_set(0) & ~u.eq_set(0))

    def arc_adj(self, a: IntSeq, c: IntSeq) -> IndexSet:
        return IndexSet.full()  # every arc meets the sink


class _TwoCyclesBase(_Base):
    """Two disjoint dicycles of length m = max(n, 2): vertices 0..m-1 and
    m..2m-1, arc labels matching their tail vertex labels."""

    name = "disconnected_dicycles"
    classification = DISCONNECTED
    weakly_connected = False

    def digraph_at(self, n: int) -> Digraph:
        m = max(n, 2)
        arcs = [(i, (i + 1) % m) for i in range(m)]
        arcs += [(m + i, m + (i + 1) % m) for i in range(m)]
        return build_digraph(arcs)

    def vertex_count_seq(self) -> IntSeq:
        return 2 * _m2()

    arc_count_seq = vertex_count_seq

    def vertex_valid(self, u: IntSeq) -> IndexSet:
        return u.compare("ge", 0) & u.compare("lt", 2 * _m2())

    arc_valid = vertex_valid

    def _pos(self, u: IntSeq) -> IntSeq:
        return IntSeq.piecewise(u.compare("lt", _m2()), u, u - _m2())

    def _same_side(self, u: IntSeq, v: IntSeq) -> IndexSet:
        su, sv = u.compare("lt", _m2()), v.compare("lt", _m2())
        return (su & sv) | (~su & ~sv)

    def arc_tail(self, a: IntSeq) -> IntSeq:
        return a

    def arc_head(self, a: IntSeq) -> IntSeq:
        m = _m2()
        inner = IntSeq.piecewise(a.eq_set(2 * m - 1), m, a + 1)
        return IntSeq.piecewise(a.eq_set(m - 1), IntSeq.constant(0), inner)

    def reach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return self._same_side(u, v)

    semireach = reach

    def dipath_len(self, u: IntSeq, v: IntSeq) -> IntSeq:
        pu, pv = self._pos(u), self._pos(v)
        around = IntSeq.piecewise(pv.compare("ge", pu), pv - pu, pv - pu + _m2())
        return IntSeq.piecewise(self._same_side(u, v), around, IntSeq.constant(0))

    def semidist(self, u: IntSeq, v: IntSeq) -> IntSeq:
        w = _absdiff(self._pos(u), self._pos(v))
        near = w.min_with(_m2().monus(w))
        return IntSeq.piecewise(self._same_side(u, v), near, IntSeq.constant(0))

    def vertex_adj(self, u: IntSeq, v: IntSeq) -> IndexSet:
        w = _absdiff(self._pos(u), self._pos(v))
        ring = w.eq_set(1) | w.eq_set(_m2() - 1)
        return self._same_side(u, v) & ring

    def arc_adj(self, a: IntSeq, c: IntSeq) -> IndexSet:
        w = _absdiff(self._pos(a), self._pos(c))
        ring = a.eq_set(c) | w.eq_set(1) | w.eq_set(_m2() - 1)
        return self._same_side(a, c) & ring


class _OneWayBase(_Base):
    """Constant infinite digraph: vertices labeled by naturals, arc label i
    running i -> i+1."""

    name = "one_way_dipath_enlargement"
    finite = False
    classification = STRICTLY_UNILATERAL

    def vertex_valid(self, u: IntSeq) -> IndexSet:
        return u.compare("ge", 0)

    arc_valid = vertex_valid

    def arc_tail(self, a: IntSeq) -> IntSeq:
        return a

    def arc_head(self, a: IntSeq) -> IntSeq:
        return a + 1

    def reach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return u.compare("le", v)

    def semireach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return IndexSet.full()

    def dipath_len(self, u: IntSeq, v: IntSeq) -> IntSeq:
        return v.monus(u)

    def semidist(self, u: IntSeq, v: IntSeq) -> IntSeq:
        return _absdiff(u, v)

    def vertex_adj(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return _absdiff(u, v).eq_set(1)

    def arc_adj(self, a: IntSeq, c: IntSeq) -> IndexSet:
        return _absdiff(a, c).compare("le", 1)


class _TwoWayBase(_OneWayBase):
    """Constant infinite digraph over integer labels: arc label i runs
    i -> i+1 for every integer i; selectors may take negative values."""

    name = "two_way_dipath_enlargement"

    def vertex_valid(self, u: IntSeq) -> IndexSet:
        return IndexSet.full()

    arc_valid = vertex_valid


class _ConstantBase(_Base):
    """Constant finite tail: D_n is one fixed digraph for every n."""

    name = "constant"

    def __init__(self, tail: Digraph):
        self.tail = tail
        self.simple = tail.is_simple()
        self.weakly_connected = len(weak_components(tail)) == 1
        self.classification = classify_digraph(tail)

    def key(self):
        return ("constant", self.tail)

    def digraph_at(self, n: int) -> Digraph:
        return self.tail

    def vertex_count_seq(self) -> IntSeq:
        return IntSeq.constant(self.tail.vertex_count)

    def arc_count_seq(self) -> IntSeq:
        return IntSeq.constant(self.tail.arc_count)

    def vertex_valid(self, u: IntSeq) -> IndexSet:
        return u.compare("ge", 0) & u.compare("lt", self.tail.vertex_count)

    def arc_valid(self, a: IntSeq) -> IndexSet:
        return a.compare("ge", 0) & a.compare("lt", self.tail.arc_count)

    def _const(self, x: IntSeq) -> int:
        c = x.eventual_constant()
        if c is None:
            raise InvalidSelector(
                "selectors over a constant finite tail must be eventually constant")
        return c

    def _seq(self, xs: tuple[IntSeq, ...], px: Callable[..., int], tail_value: int) -> IntSeq:
        stable = max(x.threshold for x in xs)
        return IntSeq.from_function(lambda n: px(self.tail, *(x.value(n) for x in xs)),
                                    stable, IntSeq.constant(tail_value))

    def _set(self, xs: tuple[IntSeq, ...], px: Callable[..., bool], tail_bit: bool) -> IndexSet:
        stable = max(x.threshold for x in xs)
        tail = IndexSet.full() if tail_bit else IndexSet.empty()
        return _set_from(lambda n: px(self.tail, *(x.value(n) for x in xs)), stable, tail)

    def arc_tail(self, a: IntSeq) -> IntSeq:
        c = self._const(a)
        value = self.tail.tail_of(c) if _arc_ok(self.tail, c) else 0
        return self._seq((a,), lambda d, x: d.tail_of(x) if _arc_ok(d, x) else 0, value)

    def arc_head(self, a: IntSeq) -> IntSeq:
        c = self._const(a)
        value = self.tail.head_of(c) if _arc_ok(self.tail, c) else 0
        return self._seq((a,), lambda d, x: d.head_of(x) if _arc_ok(d, x) else 0, value)

    def reach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        bit = _px_reach(self.tail, self._const(u), self._const(v))
        return self._set((u, v), _px_reach, bit)

    def semireach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        bit = _px_semireach(self.tail, self._const(u), self._const(v))
        return self._set((u, v), _px_semireach, bit)

    def dipath_len(self, u: IntSeq, v: IntSeq) -> IntSeq:
        value = _px_dipath_len(self.tail, self._const(u), self._const(v))
        return self._seq((u, v), _px_dipath_len, value)

    def semidist(self, u: IntSeq, v: IntSeq) -> IntSeq:
        value = _px_semidist(self.tail, self._const(u), self._const(v))
        return self._seq((u, v), _px_semidist, value)

    def vertex_adj(self, u: IntSeq, v: IntSeq) -> IndexSet:
        bit = _px_vertex_adj(self.tail, self._const(u), self._const(v))
        return self._set((u, v), _px_vertex_adj, bit)

    def arc_adj(self, a: IntSeq, c: IntSeq) -> IndexSet:
        bit = _px_arc_adj(self.tail, self._const(a), self._const(c))
        return self._set((a, c), _px_arc_adj, bit)


_BUILTINS: dict[str, Callable[[], _Base]] = {
    "dipath": _DipathBase,
    "dicycle": _DicycleBase,
    "complete_symmetric": _CompleteBase,
    "in_star": _InStarBase,
    "disconnected_dicycles": _TwoCyclesBase,
    "one_way_dipath_enlargement": _OneWayBase,
    "two_way_dipath_enlargement": _TwoWayBase,
}


class DigraphFamily:
    """A base model plus finitely many per-index override digraphs.

    Every adapter answers exactly: override indices are evaluated per
    index on the concrete digraph, everything beyond follows the base's
    closed form.  Sequence-valued adapters are clamped at zero so junk
    values on invalid prefix indices can never break nonnegativity.
    """

    def __init__(self, base: _Base, prefix: tuple[Digraph, ...] = ()):
        self.base = base
        self.prefix = tuple(prefix)

    # ---- identity ----

    @property
    def name(self) -> str:
        return self.base.name

    @property
    def is_infinite(self) -> bool:
        return not self.base.finite

    @property
    def has_constant_finite_tail(self) -> bool:
        return isinstance(self.base, _ConstantBase)

    @property
    def tail_digraph(self) -> Digraph | None:
        return self.base.tail if isinstance(self.base, _ConstantBase) else None

    def constant_selector_sorts(self) -> frozenset[str]:
        """Element sorts whose selectors must be eventually constant here.

        A constant finite tail has fixed labels, so every sort freezes;
        complete_symmetric arc labels cannot be decoded symbolically
        against the growing vertex count, so arc-bearing sorts freeze.
        """
        if isinstance(self.base, _ConstantBase):
            return frozenset({"vertex", "arc", "ditip"})
        if isinstance(self.base, _CompleteBase):
            return frozenset({"arc", "ditip"})
        return frozenset()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DigraphFamily):
            return NotImplemented
        return self.base.key() == other.base.key() and self.prefix == other.prefix

    def __hash__(self) -> int:
        return hash((self.base.key(), self.prefix))

    def __repr__(self) -> str:
        extra = f", overrides={len(self.prefix)}" if self.prefix else ""
        return f"DigraphFamily({self.name}{extra})"

    # ---- structure per index ----

    def digraph_at(self, n: int) -> Digraph:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.base.digraph_at(n)

    def _wrap_set(self, px: Callable[[Digraph], bool], base_set: IndexSet) -> IndexSet:
        if not self.prefix:
            return base_set
        return _set_from(lambda n: px(self.prefix[n]), len(self.prefix), base_set)

    def _wrap_seq(self, px: Callable[[Digraph], int], base_seq: IntSeq) -> IntSeq:
        if not self.prefix:
            return base_seq
        return base_seq.with_prefix_values([px(d) for d in self.prefix])

    def finite_set(self) -> IndexSet:
        base = IndexSet.full() if self.base.finite else IndexSet.empty()
        return self._wrap_set(lambda d: True, base)

    def simple_set(self) -> IndexSet:
        base = IndexSet.full() if self.base.simple else IndexSet.empty()
        return self._wrap_set(lambda d: d.is_simple(), base)

    def weakly_connected_set(self) -> IndexSet:
        base = IndexSet.full() if self.base.weakly_connected else IndexSet.empty()
        return self._wrap_set(lambda d: len(weak_components(d)) == 1, base)

    def classification_set(self, grade: str) -> IndexSet:
        base = IndexSet.full() if self.base.classification == grade else IndexSet.empty()
        return self._wrap_set(lambda d: classify_digraph(d) == grade, base)

    def classification_sets(self) -> dict[str, IndexSet]:
        return {g: self.classification_set(g) for g in GRADES}

    def vertex_count_seq(self) -> IntSeq:
        base = self.base.vertex_count_seq()
        if base is None:
            raise NotFiniteEnlargement(f"{self.name} has no finite vertex count")
        return self._wrap_seq(lambda d: d.vertex_count, base)

    def arc_count_seq(self) -> IntSeq:
        base = self.base.arc_count_seq()
        if base is None:
            raise NotFiniteEnlargement(f"{self.name} has no finite arc count")
        return self._wrap_seq(lambda d: d.arc_count, base)

    # ---- label-sequence adapters ----

    def vertex_valid(self, u: IntSeq) -> IndexSet:
        return self._wrap_set2(u, self.base.vertex_valid(u),
                               lambda d, n: _vx_ok(d, u.value(n)))

    def arc_valid(self, a: IntSeq) -> IndexSet:
        return self._wrap_set2(a, self.base.arc_valid(a),
                               lambda d, n: _arc_ok(d, a.value(n)))

    def _wrap_set2(self, _x, base_set: IndexSet, px: Callable[[Digraph, int], bool]) -> IndexSet:
        if not self.prefix:
            return base_set
        return _set_from(lambda n: px(self.prefix[n], n), len(self.prefix), base_set)

    def arc_tail(self, a: IntSeq) -> IntSeq:
        out = self.base.arc_tail(a)
        if self.prefix:
            out = out.with_prefix_values(
                [d.tail_of(a.value(n)) if _arc_ok(d, a.value(n)) else 0
                 for n, d in enumerate(self.prefix)])
        return out

    def arc_head(self, a: IntSeq) -> IntSeq:
        out = self.base.arc_head(a)
        if self.prefix:
            out = out.with_prefix_values(
                [d.head_of(a.value(n)) if _arc_ok(d, a.value(n)) else 0
                 for n, d in enumerate(self.prefix)])
        return out

    def reach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return self._pair_set(u, v, self.base.reach(u, v), _px_reach)

    def semireach(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return self._pair_set(u, v, self.base.semireach(u, v), _px_semireach)

    def vertex_adj(self, u: IntSeq, v: IntSeq) -> IndexSet:
        return self._pair_set(u, v, self.base.vertex_adj(u, v), _px_vertex_adj)

    def arc_adj(self, a: IntSeq, c: IntSeq) -> IndexSet:
        return self._pair_set(a, c, self.base.arc_adj(a, c), _px_arc_adj)

    def _pair_set(self, x: IntSeq, y: IntSeq, base_set: IndexSet,
                  px: Callable[[Digraph, int, int], bool]) -> IndexSet:
        if not self.prefix:
            return base_set
        return _set_from(lambda n: px(self.prefix[n], x.value(n), y.value(n)),
                         len(self.prefix), base_set)

    def dipath_len(self, u: IntSeq, v: IntSeq) -> IntSeq:
        return self._pair_seq(u, v, self.base.dipath_len(u, v), _px_dipath_len)

    def semidist(self, u: IntSeq, v: IntSeq) -> IntSeq:
        return self._pair_seq(u, v, self.base.semidist(u, v), _px_semidist)

    def _pair_seq(self, x: IntSeq, y: IntSeq, base_seq: IntSeq,
                  px: Callable[[Digraph, int, int], int]) -> IntSeq:
        out = base_seq.monus(0)  # junk on invalid indices clamps to zero
        if self.prefix:
            out = out.with_prefix_values(
                [px(d, x.value(n), y.value(n)) for n, d in enumerate(self.prefix)])
        return out

    # ---- wire format ----

    def to_json(self) -> dict:
        if not self.prefix and not isinstance(self.base, _ConstantBase):
            return {"kind": "builtin", "name": self.name}
        tail = (self.base.tail.to_json() if isinstance(self.base, _ConstantBase)
                else {"builtin": self.name})
        return {"kind": "explicit", "prefix": [d.to_json() for d in self.prefix], "tail": tail}


def load_family(spec) -> DigraphFamily:
    """Build a family from JSON: {"kind":"builtin","name":..} or
    {"kind":"explicit","prefix":[digraphs],"tail": digraph | {"builtin": name}}.

    A bare builtin name or {"builtin": name} is accepted as shorthand.
    """
    if isinstance(spec, str):
        return DigraphFamily(_make_builtin(spec))
    if not isinstance(spec, dict):
        raise MalformedSpec("family spec must be an object or builtin name")
    if set(spec) == {"builtin"}:
        return DigraphFamily(_make_builtin(spec["builtin"]))
    kind = spec.get("kind")
    if kind == "builtin":
        return DigraphFamily(_make_builtin(spec.get("name")))
    if kind == "explicit":
        prefix_spec = spec.get("prefix", [])
        if not isinstance(prefix_spec, list):
            raise MalformedSpec("\"prefix\" must be a list of digraph literals")
        prefix = tuple(Digraph.from_json(d) for d in prefix_spec)
        tail = spec.get("tail")
        if isinstance(tail, list):
            raise NonEventuallyConstantExplicit(
                "an explicit family needs one fixed tail digraph, not a varying list")
        if tail is None:
            raise MalformedSpec("explicit family needs a \"tail\"")
        if isinstance(tail, dict) and set(tail) == {"builtin"}:
            return DigraphFamily(_make_builtin(tail["builtin"]), prefix)
        return DigraphFamily(_ConstantBase(Digraph.from_json(tail)), prefix)
    raise MalformedSpec(f"unknown family kind {kind!r}")


def _make_builtin(name) -> _Base:
    if not isinstance(name, str) or name not in _BUILTINS:
        known = ", ".join(sorted(_BUILTINS))
        raise UnknownBuiltin(f"unknown builtin family {name!r}; known: {known}")
    return _BUILTINS[name]()


def enlargement_of(d: Digraph) -> DigraphFamily:
    """The constant family repeating one finite digraph at every index."""
    return DigraphFamily(_ConstantBase(d))


# ---- finite windows of the infinite builtins, for cross-checking ----

def one_way_window(count: int) -> Digraph:
    """The first `count` arcs of the one-way infinite dipath; ids equal labels."""
    if count < 1:
        raise MalformedSpec("window needs at least one arc")
    return build_digraph([(i, i + 1) for i in range(count)])


def two_way_window(lo: int, hi: int) -> tuple[Digraph, dict[int, int]]:
    """Arcs lo..hi-1 of the two-way infinite dipath plus the label -> id map."""
    if hi <= lo:
        raise MalformedSpec("window needs at least one arc")
    d = build_digraph([(i - lo, i + 1 - lo) for i in range(lo, hi)])
    return d, {label: label - lo for label in range(lo, hi + 1)}
