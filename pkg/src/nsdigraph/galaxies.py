"""Galaxies: the limited-distance decomposition of internal vertices.

The internal distance between two internal vertices is the hypernatural
of per-index semipath distances.  Two internal vertices are limitedly
distant when that distance is bounded by a standard natural almost
everywhere; this is an equivalence, and its classes are the vertex
galaxies.  The principal galaxy is the class of the standard vertices,
detected against one standard anchor.  Nonprincipal galaxies are totally
ordered by closeness to the principal one: a galaxy is closer when the
distance difference grows beyond every standard bound, which is decided
exactly from the tail polynomial on the oracle's residue class.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (AnchorNotStandard, FamilyMismatch, NotInfinite, NotLocallyFinite,
                     NotWeaklyConnectedAE, PrincipalGalaxy, UnsupportedFamily)
from .families import DigraphFamily
from .sequences import HyperNat, IntSeq
from .ultrafilter import DEFAULT_ORACLE, FilterOracle, ultrafilter_decide
from .ultrapower import (ARC, VERTEX, InternalElement, _expect_sort, internal_vertex,
                         tip_owner_vertex, internal_ditip, IN_EVERYWHERE, OUT_EVERYWHERE)

A_CLOSER = "a_closer"
B_CLOSER = "b_closer"
TIED = "tied"

_CHAIN_FAMILIES = ("one_way_dipath_enlargement", "two_way_dipath_enlargement")


def _check_weakly_connected(family: DigraphFamily, oracle: FilterOracle) -> None:
    if not ultrafilter_decide(family.weakly_connected_set(), oracle):
        raise NotWeaklyConnectedAE(
            f"{family.name} is not weakly connected almost everywhere")


def _check_vertex(family: DigraphFamily, x: InternalElement) -> None:
    if x.family != family:
        raise FamilyMismatch("element belongs to a different family")
    _expect_sort(x, VERTEX)


def ns_distance(family: DigraphFamily, u: InternalElement, v: InternalElement,
                oracle: FilterOracle = DEFAULT_ORACLE) -> HyperNat:
    """Hypernatural semipath distance between two internal vertices."""
    _check_weakly_connected(family, oracle)
    _check_vertex(family, u)
    _check_vertex(family, v)
    return HyperNat.of(family.semidist(u.seq, v.seq))


def limitedly_distant(family: DigraphFamily, u: InternalElement, v: InternalElement,
                      oracle: FilterOracle = DEFAULT_ORACLE) -> bool:
    """True iff the distance is bounded by some standard natural a.e."""
    return ns_distance(family, u, v, oracle).limit(oracle) is not None


def _require_standard_anchor(family: DigraphFamily, anchor: InternalElement) -> None:
    _check_vertex(family, anchor)
    if anchor.seq.eventual_constant() is None:
        raise AnchorNotStandard(
            "the anchor must denote a standard vertex: a constant selector")


@dataclass(frozen=True)
class Galaxy:
    """One limited-distance class of a roster, with its assigned arcs."""

    id: int
    vertex_class: tuple[InternalElement, ...]
    arcs: tuple[InternalElement, ...]
    is_principal: bool

    @property
    def representative(self) -> InternalElement:
        return self.vertex_class[0]


def galaxy_partition(family: DigraphFamily, roster: list[InternalElement],
                     arc_roster: list[InternalElement] = (),
                     anchor: InternalElement | None = None,
                     oracle: FilterOracle = DEFAULT_ORACLE) -> list[Galaxy]:
    """Partition a roster of internal vertices into galaxies.

    Classes are limited-distance classes; a class is principal when its
    members are limitedly distant from the standard anchor.  Each arc of
    arc_roster lands in the galaxy of its tail-side vertex (its two ends
    are at distance one, hence always in the same galaxy); arcs whose
    ends match no roster class found a fresh galaxy of their own ends.
    """
    _check_weakly_connected(family, oracle)
    if anchor is None:
        anchor = internal_vertex(family, 0)
    _require_standard_anchor(family, anchor)
    for x in roster:
        _check_vertex(family, x)
    for a in arc_roster:
        if a.family != family:
            raise FamilyMismatch("arc roster element belongs to a different family")
        _expect_sort(a, ARC)

    def limited(x: InternalElement, y: InternalElement) -> bool:
        return HyperNat.of(family.semidist(x.seq, y.seq)).limit(oracle) is not None

    classes: list[list[InternalElement]] = []
    for x in roster:
        for cls in classes:
            if limited(x, cls[0]):
                cls.append(x)
                break
        else:
            classes.append([x])

    arc_sets: list[list[InternalElement]] = [[] for _ in classes]
    fresh: list[tuple[list[InternalElement], list[InternalElement]]] = []
    for a in arc_roster:
        tail = tip_owner_vertex(internal_ditip(family, a.seq, IN_EVERYWHERE))
        head = tip_owner_vertex(internal_ditip(family, a.seq, OUT_EVERYWHERE))
        for k, cls in enumerate(classes):
            if limited(tail, cls[0]):
                arc_sets[k].append(a)
                break
        else:
            for members, arcs in fresh:
                if limited(tail, members[0]):
                    arcs.append(a)
                    break
            else:
                fresh.append(([tail, head], [a]))

    out = []
    for k, cls in enumerate(classes):
        out.append(Galaxy(k, tuple(cls), tuple(arc_sets[k]),
                          limited(cls[0], anchor)))
    for members, arcs in fresh:
        out.append(Galaxy(len(out), tuple(members), tuple(arcs),
                          limited(members[0], anchor)))
    return out


def order_from_distances(dist_a: IntSeq, dist_b: IntSeq,
                         oracle: FilterOracle = DEFAULT_ORACLE) -> str:
    """Closeness relation given the two anchor-distance sequences.

    Galaxy a is closer when dist_b - dist_a exceeds every standard bound
    almost everywhere: on the oracle's residue class the difference
    polynomial must be nonconstant, and its leading sign settles the
    direction; a bounded difference means the galaxies tie.
    """
    diff = dist_b - dist_a
    f = diff.class_poly(oracle)
    if f.degree >= 1:
        return A_CLOSER if f.lead > 0 else B_CLOSER
    return TIED


def galaxy_order_elements(family: DigraphFamily, v: InternalElement, w: InternalElement,
                          anchor: InternalElement | None = None,
                          oracle: FilterOracle = DEFAULT_ORACLE) -> str:
    """Closeness of the galaxy of v versus the galaxy of w, via representatives."""
    _check_weakly_connected(family, oracle)
    if anchor is None:
        anchor = internal_vertex(family, 0)
    _require_standard_anchor(family, anchor)
    _check_vertex(family, v)
    _check_vertex(family, w)
    dist_v = family.semidist(v.seq, anchor.seq)
    dist_w = family.semidist(w.seq, anchor.seq)
    for name, dist in (("first", dist_v), ("second", dist_w)):
        if HyperNat.of(dist).limit(oracle) is not None:
            raise PrincipalGalaxy(
                f"the {name} galaxy is principal; closeness is defined "
                "between nonprincipal galaxies only")
    return order_from_distances(dist_v, dist_w, oracle)


def galaxy_order(family: DigraphFamily, galaxy_a: Galaxy, galaxy_b: Galaxy,
                 anchor: InternalElement | None = None,
                 oracle: FilterOracle = DEFAULT_ORACLE) -> str:
    """Closeness of two galaxies from a partition, by their representatives."""
    if galaxy_a.is_principal or galaxy_b.is_principal:
        raise PrincipalGalaxy("closeness is defined between nonprincipal galaxies only")
    return galaxy_order_elements(family, galaxy_a.representative,
                                 galaxy_b.representative, anchor, oracle)


def galaxy_chain(family: DigraphFamily, j_lo: int, j_hi: int,
                 oracle: FilterOracle = DEFAULT_ORACLE) -> list[tuple[int, InternalElement]]:
    """A finite window of the two-way infinite chain of nonprincipal galaxies.

    Position j >= 0 is represented by the vertex sequence (j+1)*n and
    position j < 0 by floor(n / 2^|j|); ascending j moves strictly
    further from the principal galaxy.
    """
    if family.name not in _CHAIN_FAMILIES:
        raise UnsupportedFamily(
            f"galaxy chains are shipped for {', '.join(_CHAIN_FAMILIES)}; "
            f"got {family.name}")
    if j_hi < j_lo:
        raise UnsupportedFamily(f"empty chain window {j_lo}..{j_hi}")
    _check_weakly_connected(family, oracle)
    out = []
    for j in range(j_lo, j_hi + 1):
        if j >= 0:
            seq = IntSeq.identity() * (j + 1)
        else:
            seq = IntSeq.floor_of_index(2 ** (-j))
        out.append((j, internal_vertex(family, seq)))
    return out


def nonprincipal_witness(family: DigraphFamily,
                         anchor: InternalElement | None = None,
                         oracle: FilterOracle = DEFAULT_ORACLE) -> InternalElement:
    """An internal vertex provably outside the principal galaxy.

    Exists whenever the family is an enlargement of an infinite, locally
    finite, weakly connected digraph; here the vertex sequence n works
    for both infinite builtins, and the claim is verified before return.
    """
    if not family.base.locally_finite:
        raise NotLocallyFinite(f"{family.name} has a vertex with infinitely many tips")
    if not family.is_infinite:
        raise NotInfinite(
            f"{family.name} is finite almost everywhere; every internal vertex "
            "is limitedly distant from a standard one")
    _check_weakly_connected(family, oracle)
    if anchor is None:
        anchor = internal_vertex(family, 0)
    _require_standard_anchor(family, anchor)
    witness = internal_vertex(family, IntSeq.identity())
    if limitedly_distant(family, anchor, witness, oracle):  # honest self-check
        raise NotInfinite("witness construction failed: distance to anchor is bounded")
    return witness


__all__ = [
    "A_CLOSER", "B_CLOSER", "Galaxy", "TIED", "galaxy_chain", "galaxy_order",
    "galaxy_order_elements", "galaxy_partition", "limitedly_distant",
    "nonprincipal_witness", "ns_distance", "order_from_distances",
]
