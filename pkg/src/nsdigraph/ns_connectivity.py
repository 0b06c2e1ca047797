"""Connectedness of internal vertices and whole families, plus arc-count bounds.

Pair connectedness transfers through the filter: a grade holds for two
internal vertices when its per-index witness set (reachability one way,
both ways, or by semipath) is decided into the filter.  Whole-family
classification decides the per-index grade sets; components are computed
over finite rosters.  `check_bounds` verifies, per category, the
almost-everywhere inequality between the vertex count p and the arc
count q of a hyperfinite family with simple members.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EqualVertices, FamilyMismatch, MalformedSpec, NotHyperfinite, NotReachable, NotSimple
from .families import (DISCONNECTED, DigraphFamily, GRADES, STRICTLY_UNILATERAL,
                       STRICTLY_WEAK, STRONG)
from .sequences import HyperNat
from .ultrafilter import DEFAULT_ORACLE, FilterOracle, IndexSet, ultrafilter_decide
from .ultrapower import VERTEX, InternalElement, _expect_sort, ns_equal

CATEGORY_COMPLETE = "complete_symmetric"


@dataclass(frozen=True)
class NsClassification:
    """A connectedness grade plus the index sets that certify it."""

    grade: str
    witnesses: dict[str, IndexSet] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "grade": self.grade,
            "witnesses": {k: s.to_json() for k, s in sorted(self.witnesses.items())},
        }


def reach_sets(family: DigraphFamily, u: InternalElement,
               v: InternalElement) -> dict[str, IndexSet]:
    """The three witness sets behind every pair grade."""
    for x in (u, v):
        if x.family != family:
            raise FamilyMismatch("element belongs to a different family")
        _expect_sort(x, VERTEX)
    return {
        "reach_uv": family.reach(u.seq, v.seq),
        "reach_vu": family.reach(v.seq, u.seq),
        "semireach": family.semireach(u.seq, v.seq),
    }


def ns_pair_connectedness(family: DigraphFamily, u: InternalElement, v: InternalElement,
                          oracle: FilterOracle = DEFAULT_ORACLE) -> NsClassification:
    """Strict grade of a pair of distinct internal vertices."""
    if ns_equal(u, v, oracle):
        raise EqualVertices("pair connectedness needs two distinct internal vertices")
    w = reach_sets(family, u, v)
    fwd = ultrafilter_decide(w["reach_uv"], oracle)
    bwd = ultrafilter_decide(w["reach_vu"], oracle)
    if fwd and bwd:
        grade = STRONG
    elif fwd or bwd:
        grade = STRICTLY_UNILATERAL
    elif ultrafilter_decide(w["semireach"], oracle):
        grade = STRICTLY_WEAK
    else:
        grade = DISCONNECTED
    return NsClassification(grade, w)


def ns_dipath_length(family: DigraphFamily, u: InternalElement, v: InternalElement,
                     oracle: FilterOracle = DEFAULT_ORACLE) -> HyperNat:
    """Hypernatural shortest dipath length from u to v.

    Indices with no dipath contribute value 0; that can only happen on a
    set outside the filter, since the reach set must be decided in."""
    w = reach_sets(family, u, v)
    if not ultrafilter_decide(w["reach_uv"], oracle):
        raise NotReachable("no dipath from u to v almost everywhere")
    return HyperNat.of(family.dipath_len(u.seq, v.seq))


def ns_classify_family(family: DigraphFamily,
                       oracle: FilterOracle = DEFAULT_ORACLE) -> NsClassification:
    """The grade whose per-index set is decided into the filter.

    The four grade sets partition the indices, so exactly one is decided."""
    sets = family.classification_sets()
    for grade in GRADES:
        if ultrafilter_decide(sets[grade], oracle):
            return NsClassification(grade, sets)
    raise MalformedSpec("grade sets failed to partition the indices")  # unreachable


def ns_components(family: DigraphFamily, roster: list[InternalElement], kind: str,
                  oracle: FilterOracle = DEFAULT_ORACLE) -> list[list[InternalElement]]:
    """Components of a roster of internal vertices.

    strong and weak grades are equivalences and partition the roster;
    unilateral yields every maximal pairwise-unilateral subset, found by
    exhaustive search, and those may overlap.
    """
    for x in roster:
        if x.family != family:
            raise FamilyMismatch("roster element belongs to a different family")
        _expect_sort(x, VERTEX)
    k = len(roster)
    if k == 0:
        return []

    def pair(i: int, j: int) -> bool:
        w = reach_sets(family, roster[i], roster[j])
        fwd = ultrafilter_decide(w["reach_uv"], oracle)
        bwd = ultrafilter_decide(w["reach_vu"], oracle)
        if kind == "strong":
            return fwd and bwd
        if kind == "unilateral":
            return fwd or bwd
        if kind == "weak":
            return ultrafilter_decide(w["semireach"], oracle)
        raise MalformedSpec(f"unknown component kind {kind!r}")

    matrix = [[True] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            matrix[i][j] = matrix[j][i] = pair(i, j)

    if kind in ("strong", "weak"):
        labels: list[int] = []
        reps: list[int] = []
        for i in range(k):
            for lab, r in enumerate(reps):
                if matrix[i][r]:
                    labels.append(lab)
                    break
            else:
                labels.append(len(reps))
                reps.append(i)
        return [[roster[i] for i in range(k) if labels[i] == lab]
                for lab in range(len(reps))]

    # unilateral: all maximal subsets whose members are pairwise related
    ok_masks = []
    compat = [sum(1 << j for j in range(k) if matrix[i][j]) for i in range(k)]
    for mask in range(1, 1 << k):
        good = True
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            if mask & ~compat[i]:
                good = False
                break
            m &= m - 1
        if good:
            ok_masks.append(mask)
    maximal = [m for m in ok_masks
               if not any(m != o and m & o == m for o in ok_masks)]
    index_lists = sorted([i for i in range(k) if m >> i & 1] for m in maximal)
    return [[roster[i] for i in idx] for idx in index_lists]


@dataclass(frozen=True)
class BoundsReport:
    """Outcome of the arc-count bound check for one family."""

    category: str
    p: HyperNat
    q: HyperNat
    inequality: str
    holds: bool
    witness: IndexSet
    extras: dict[str, IndexSet] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "category": self.category,
            "p": self.p.to_json(),
            "q": self.q.to_json(),
            "inequality": self.inequality,
            "holds": self.holds,
            "witness": self.witness.to_json(),
            "extras": {k: s.to_json() for k, s in sorted(self.extras.items())},
        }


def check_bounds(family: DigraphFamily,
                 oracle: FilterOracle = DEFAULT_ORACLE) -> BoundsReport:
    """Verify the arc-count bound for the family's category.

    Requires a hyperfinite family with almost all members simple.  The
    category is complete_symmetric for that builtin, otherwise the
    decided classification grade; each category's inequality between the
    vertex count p and arc count q is turned into an exact index set and
    decided through the filter.
    """
    if not ultrafilter_decide(family.finite_set(), oracle):
        raise NotHyperfinite(f"{family.name} is not finite almost everywhere")
    if not ultrafilter_decide(family.simple_set(), oracle):
        raise NotSimple(f"{family.name} has self-loops or parallel arcs almost everywhere")

    ps = family.vertex_count_seq()
    qs = family.arc_count_seq()
    p, q = HyperNat.of(ps), HyperNat.of(qs)
    extras: dict[str, IndexSet] = {}

    if family.name == CATEGORY_COMPLETE:
        category = CATEGORY_COMPLETE
        inequality = "q = p*(p-1)"
        witness = qs.eq_set(ps * (ps - 1))
    else:
        category = ns_classify_family(family, oracle).grade
        if category == DISCONNECTED:
            inequality = "0 <= q <= (p-1)*(p-2)"
            witness = qs.compare("ge", 0) & qs.compare("le", ps.monus(1) * ps.monus(2))
        elif category == STRICTLY_WEAK:
            inequality = "p-1 <= q <= (p-1)*(p-2), with p >= 3"
            extras["p_at_least_3"] = ps.compare("ge", 3)
            witness = (ps.monus(1).compare("le", qs)
                       & qs.compare("le", ps.monus(1) * ps.monus(2))
                       & extras["p_at_least_3"])
        elif category == STRICTLY_UNILATERAL:
            inequality = "p-1 <= q <= (p-1)^2"
            witness = (ps.monus(1).compare("le", qs)
                       & qs.compare("le", ps.monus(1) * ps.monus(1)))
        else:
            inequality = "p <= q <= p*(p-1), with p > 1"
            extras["p_greater_1"] = ps.compare("gt", 1)
            witness = (ps.compare("le", qs) & qs.compare("le", ps * ps.monus(1))
                       & extras["p_greater_1"])

    return BoundsReport(category, p, q, inequality,
                        ultrafilter_decide(witness, oracle), witness, extras)


__all__ = [
    "BoundsReport", "CATEGORY_COMPLETE", "NsClassification", "check_bounds",
    "ns_classify_family", "ns_components", "ns_dipath_length",
    "ns_pair_connectedness", "reach_sets",
]
