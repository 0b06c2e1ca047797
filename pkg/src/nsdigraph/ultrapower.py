"""Internal elements of the ultrapower of a digraph family.

An internal vertex or arc is the class of a label sequence; an internal
ditip is an arc sequence plus a polarity rule (in-tip everywhere,
out-tip everywhere, or alternating by parity).  Every predicate about
internal elements reduces to an ultimately periodic index set over the
underlying sequences, decided through the filter oracle, so equality,
shorting, incidence and adjacency are all exact.

For families with a constant finite tail, every valid internal element
is eventually constant, and `standardize` maps it back to the concrete
element of the tail digraph it is almost everywhere equal to.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Ditip, INTIP, OUTTIP
from .errors import FamilyMismatch, InvalidSelector, MalformedSpec, NotFiniteEnlargement, SortMismatch
from .families import DigraphFamily
from .sequences import IntSeq, Poly, _coeff_from_json, _coeff_to_json
from .ultrafilter import DEFAULT_ORACLE, FilterOracle, IndexSet, ultrafilter_decide

VERTEX = "vertex"
ARC = "arc"
DITIP = "ditip"
SORTS = (VERTEX, ARC, DITIP)

IN_EVERYWHERE = "in"
OUT_EVERYWHERE = "out"
ALTERNATING = "alternating"
POLARITIES = (IN_EVERYWHERE, OUT_EVERYWHERE, ALTERNATING)

INWARD = "inward"
OUTWARD = "outward"
BOTH = "both"
NONE = "none"


@dataclass(frozen=True)
class Selector:
    """A parsed element-choosing rule, not yet bound to a family."""

    seq: IntSeq
    polarity: str | None = None
    sort: str | None = None


@dataclass(frozen=True)
class InternalElement:
    """A validated selector bound to its family; denotes the class [x_n]."""

    family: DigraphFamily
    sort: str
    seq: IntSeq
    polarity: str | None = None

    def validity_set(self) -> IndexSet:
        if self.sort == VERTEX:
            return self.family.vertex_valid(self.seq)
        return self.family.arc_valid(self.seq)


# ---- selector wire format ----

def _seq_from_json(obj: dict) -> IntSeq:
    kind = obj.get("kind")
    if kind == "constant":
        v = obj.get("value")
        if not isinstance(v, int):
            raise MalformedSpec("constant selector needs an integer \"value\"")
        return IntSeq.constant(v)
    if kind == "quasi_affine":
        period = obj.get("period", 1)
        polys = obj.get("polys")
        prefix = obj.get("prefix", [])
        if not isinstance(period, int) or not isinstance(polys, list):
            raise MalformedSpec("quasi_affine selector needs \"period\" and \"polys\"")
        if not isinstance(prefix, list) or not all(isinstance(x, int) for x in prefix):
            raise MalformedSpec("selector \"prefix\" must be a list of integers")
        return IntSeq(prefix, period, [Poly([_coeff_from_json(c) for c in cs]) for cs in polys])
    raise MalformedSpec(f"unknown selector kind {kind!r}")


def parse_selector(obj, default_sort: str | None = None) -> Selector:
    """Parse a selector literal; ditip form is {"arc": <selector>, "polarity": ...}."""
    if not isinstance(obj, dict):
        raise MalformedSpec("selector literal must be an object")
    declared = obj.get("sort", None)
    if declared is not None and declared not in SORTS:
        raise MalformedSpec(f"unknown sort {declared!r}")
    if "arc" in obj or "polarity" in obj:
        if declared not in (None, DITIP):
            raise SortMismatch(f"tip-form selector cannot have sort {declared!r}")
        inner = obj.get("arc")
        pol = obj.get("polarity")
        if not isinstance(inner, dict) or pol not in POLARITIES:
            raise MalformedSpec(
                "tip selector needs an \"arc\" selector and a \"polarity\" of "
                "in, out, or alternating")
        return Selector(_seq_from_json(inner), pol, DITIP)
    sort = declared if declared is not None else default_sort
    return Selector(_seq_from_json(obj), None, sort)


def _seq_to_json(seq: IntSeq) -> dict:
    if seq.threshold == 0 and seq.period == 1 and seq.polys[0].degree <= 0:
        return {"kind": "constant", "value": int(seq.polys[0](0))}
    out = {
        "kind": "quasi_affine",
        "period": seq.period,
        "polys": [[_coeff_to_json(c) for c in f.coeffs] or [0] for f in seq.polys],
    }
    if seq.threshold:
        out["prefix"] = list(seq.prefix)
    return out


def selector_to_json(x: InternalElement) -> dict:
    if x.sort == DITIP:
        return {"arc": _seq_to_json(x.seq), "polarity": x.polarity, "sort": DITIP}
    out = _seq_to_json(x.seq)
    out["sort"] = x.sort
    return out


# ---- construction ----

def make_internal_element(family: DigraphFamily, selector: Selector | dict,
                          sort: str | None = None) -> InternalElement:
    """Validate a selector against a family and bind it.

    The validity set {n : the selected label exists in D_n} must be
    cofinite; families whose labels freeze (constant finite tails, and
    arc labels of complete_symmetric) additionally require the sequence
    to be eventually constant.
    """
    if isinstance(selector, dict):
        selector = parse_selector(selector, default_sort=sort)
    resolved = selector.sort if selector.sort is not None else sort
    if resolved is None:
        raise SortMismatch("selector needs a sort: vertex, arc, or ditip")
    if resolved not in SORTS:
        raise SortMismatch(f"unknown sort {resolved!r}")
    if sort is not None and resolved != sort:
        raise SortMismatch(f"selector has sort {resolved}, expected {sort}")
    if resolved == DITIP:
        if selector.polarity not in POLARITIES:
            raise SortMismatch("ditip selectors need a polarity rule")
    elif selector.polarity is not None:
        raise SortMismatch(f"{resolved} selectors carry no polarity")

    elt = InternalElement(family, resolved, selector.seq, selector.polarity)
    if resolved in family.constant_selector_sorts() and selector.seq.eventual_constant() is None:
        raise InvalidSelector(
            f"{family.name} requires eventually constant {resolved} selectors")
    validity = elt.validity_set()
    if validity.classify() != "cofinite":
        raise InvalidSelector(
            f"selector is valid only on {validity!r}, which is not cofinite")
    return elt


def internal_vertex(family: DigraphFamily, seq: IntSeq | int) -> InternalElement:
    seq = seq if isinstance(seq, IntSeq) else IntSeq.constant(seq)
    return make_internal_element(family, Selector(seq, None, VERTEX))


def internal_arc(family: DigraphFamily, seq: IntSeq | int) -> InternalElement:
    seq = seq if isinstance(seq, IntSeq) else IntSeq.constant(seq)
    return make_internal_element(family, Selector(seq, None, ARC))


def internal_ditip(family: DigraphFamily, seq: IntSeq | int, polarity: str) -> InternalElement:
    seq = seq if isinstance(seq, IntSeq) else IntSeq.constant(seq)
    return make_internal_element(family, Selector(seq, polarity, DITIP))


def _same_family(x: InternalElement, y: InternalElement) -> DigraphFamily:
    if x.family != y.family:
        raise FamilyMismatch("elements belong to different families")
    return x.family


def _expect_sort(x: InternalElement, sort: str) -> None:
    if x.sort != sort:
        raise SortMismatch(f"expected a {sort} element, got {x.sort}")


# ---- equality and the tip/vertex structure ----

def polarity_set(x: InternalElement) -> IndexSet:
    """{n : x_n is an in-tip}; alternating tips are in-tips on evens."""
    _expect_sort(x, DITIP)
    if x.polarity == IN_EVERYWHERE:
        return IndexSet.full()
    if x.polarity == OUT_EVERYWHERE:
        return IndexSet.empty()
    return IndexSet.evens()


def equality_set(x: InternalElement, y: InternalElement) -> IndexSet:
    """The exact index set {n : x_n = y_n}."""
    _same_family(x, y)
    if x.sort != y.sort:
        raise SortMismatch(f"cannot compare a {x.sort} with a {y.sort}")
    same_label = x.seq.eq_set(y.seq)
    if x.sort != DITIP:
        return same_label
    pa, pb = polarity_set(x), polarity_set(y)
    agree = (pa & pb) | (~pa & ~pb)
    return same_label & agree


def ns_equal(x: InternalElement, y: InternalElement,
             oracle: FilterOracle = DEFAULT_ORACLE) -> bool:
    """Almost-everywhere equality: the equality set lies in the filter."""
    return ultrafilter_decide(equality_set(x, y), oracle)


def ditip_kind(x: InternalElement, oracle: FilterOracle = DEFAULT_ORACLE) -> str:
    """"intip" or "outtip" by the filter side of the polarity set."""
    return "intip" if ultrafilter_decide(polarity_set(x), oracle) else "outtip"


def tip_owner_seq(x: InternalElement) -> IntSeq:
    """Label sequence of the vertex owning the tip at each index."""
    _expect_sort(x, DITIP)
    tails = x.family.arc_tail(x.seq)
    heads = x.family.arc_head(x.seq)
    if x.polarity == IN_EVERYWHERE:
        return tails
    if x.polarity == OUT_EVERYWHERE:
        return heads
    return IntSeq.piecewise(IndexSet.evens(), tails, heads)


def tip_owner_vertex(x: InternalElement) -> InternalElement:
    """The internal vertex owning the tip (valid wherever the arc is)."""
    return InternalElement(x.family, VERTEX, tip_owner_seq(x))


def shorted_set(x: InternalElement, y: InternalElement) -> IndexSet:
    """{n : the tips x_n and y_n lie in the same vertex of D_n}."""
    _same_family(x, y)
    _expect_sort(x, DITIP)
    _expect_sort(y, DITIP)
    return tip_owner_seq(x).eq_set(tip_owner_seq(y))


def is_shorted(x: InternalElement, y: InternalElement,
               oracle: FilterOracle = DEFAULT_ORACLE) -> bool:
    return ultrafilter_decide(shorted_set(x, y), oracle)


def ns_vertex_partition(family: DigraphFamily, roster: list[InternalElement],
                        oracle: FilterOracle = DEFAULT_ORACLE) -> list[list[InternalElement]]:
    """Group a roster of internal ditips into nonstandard vertices.

    Same-vertex membership is an equivalence on valid tips (the filter's
    intersection closure carries transitivity), so grouping by pairwise
    decision yields a partition.
    """
    for x in roster:
        if x.family != family:
            raise FamilyMismatch("roster element belongs to a different family")
        _expect_sort(x, DITIP)
    owners = [tip_owner_seq(x) for x in roster]
    labels: list[int] = []
    reps: list[IntSeq] = []
    for seq in owners:
        for k, rep in enumerate(reps):
            if ultrafilter_decide(seq.eq_set(rep), oracle):
                labels.append(k)
                break
        else:
            labels.append(len(reps))
            reps.append(seq)
    return [[x for x, lab in zip(roster, labels) if lab == k] for k in range(len(reps))]


# ---- incidence and adjacency ----

def incidence_sets(u: InternalElement, a: InternalElement) -> tuple[IndexSet, IndexSet]:
    """({n : u_n holds a_n's in-tip}, {n : u_n holds a_n's out-tip})."""
    _same_family(u, a)
    _expect_sort(u, VERTEX)
    _expect_sort(a, ARC)
    fam = u.family
    return (u.seq.eq_set(fam.arc_tail(a.seq)), u.seq.eq_set(fam.arc_head(a.seq)))


def ns_incident(u: InternalElement, a: InternalElement,
                oracle: FilterOracle = DEFAULT_ORACLE) -> str:
    """inward, outward, both (self-loop at u), or none — decided a.e."""
    inward, outward = incidence_sets(u, a)
    di, do = ultrafilter_decide(inward, oracle), ultrafilter_decide(outward, oracle)
    if di and do:
        return BOTH
    if di:
        return INWARD
    if do:
        return OUTWARD
    return NONE


def adjacency_set(x: InternalElement, y: InternalElement, mode: str) -> IndexSet:
    fam = _same_family(x, y)
    if mode == "vertices":
        _expect_sort(x, VERTEX)
        _expect_sort(y, VERTEX)
        return fam.vertex_adj(x.seq, y.seq)
    if mode == "arcs":
        _expect_sort(x, ARC)
        _expect_sort(y, ARC)
        return fam.arc_adj(x.seq, y.seq)
    raise MalformedSpec(f"adjacency mode must be \"vertices\" or \"arcs\", got {mode!r}")


def ns_adjacent(x: InternalElement, y: InternalElement, mode: str,
                oracle: FilterOracle = DEFAULT_ORACLE) -> bool:
    """Almost-everywhere adjacency of two internal vertices or arcs.

    For arcs, indices where both selectors pick the same arc count as
    adjacent (the arc trivially shares a vertex with itself)."""
    return ultrafilter_decide(adjacency_set(x, y, mode), oracle)


# ---- the collapse onto a constant finite tail ----

def standardize(family: DigraphFamily, x: InternalElement,
                oracle: FilterOracle = DEFAULT_ORACLE):
    """Map an internal element of a constant finite family to the standard
    element it equals almost everywhere."""
    if x.family != family:
        raise FamilyMismatch("element belongs to a different family")
    tail = family.tail_digraph
    if tail is None:
        raise NotFiniteEnlargement(
            f"{family.name} is not the enlargement of a finite digraph")
    c = x.seq.eventual_constant()
    if c is None:  # unreachable for validated elements; keep the guard honest
        raise InvalidSelector("selector is not eventually constant")
    if x.sort == VERTEX:
        return tail.vertices[c]
    if x.sort == ARC:
        return tail.arcs[c]
    kind = ditip_kind(x, oracle)
    return Ditip(c, INTIP if kind == "intip" else OUTTIP)


def is_hyperfinite(family: DigraphFamily, oracle: FilterOracle = DEFAULT_ORACLE) -> bool:
    """True iff almost all members of the family are finite digraphs."""
    return ultrafilter_decide(family.finite_set(), oracle)


__all__ = [
    "ARC", "ALTERNATING", "BOTH", "DITIP", "IN_EVERYWHERE", "INWARD",
    "InternalElement", "NONE", "OUT_EVERYWHERE", "OUTWARD", "Selector", "SORTS",
    "VERTEX", "adjacency_set", "ditip_kind", "equality_set", "incidence_sets",
    "internal_arc", "internal_ditip", "internal_vertex", "is_hyperfinite",
    "is_shorted", "make_internal_element", "ns_adjacent", "ns_equal",
    "ns_incident", "ns_vertex_partition", "parse_selector", "polarity_set",
    "selector_to_json", "shorted_set", "standardize", "tip_owner_seq",
    "tip_owner_vertex",
]
