"""Decidable fragment of a fixed nonprincipal ultrafilter on the naturals.

The fragment works over *ultimately periodic* index sets: a finite prefix
given bit by bit, then membership by residue class.  This Boolean algebra
is closed under union/intersection/complement and every membership
question is decidable, so "almost all n" statements about digraph
sequences can be settled exactly.

Membership in the ultrafilter itself is decided by a residue tower at a
configurable constant c: a set belongs to the filter iff the residue
c mod p lies in the set's eventual residue set.  That rule is the trace,
on this algebra, of any genuine nonprincipal ultrafilter containing every
tail of the progression {n : n == c (mod m)}, so dichotomy, upward
closure, finite-intersection closure and nonprincipality all hold
exactly (see the property suite in the tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import BadResidue, MalformedSpec


def _divisors(p: int) -> list[int]:
    out = [d for d in range(1, p + 1) if p % d == 0]
    return out


class IndexSet:
    """Ultimately periodic subset of the naturals, kept in canonical form.

    Canonical means: the period is the least eventual period, and the
    threshold is the least index from which the periodic rule applies
    (prefix bits agreeing with the rule are absorbed).  Two IndexSets are
    equal iff they contain the same naturals, and canonicalization makes
    that plain structural equality.
    """

    __slots__ = ("threshold", "prefix", "period", "residues")

    def __init__(self, prefix: Iterable[int | bool] = (), period: int = 1,
                 residues: Iterable[int] = ()):
        if period < 1:
            raise BadResidue(f"period must be >= 1, got {period}")
        res = frozenset(int(r) for r in residues)
        for r in res:
            if not 0 <= r < period:
                raise BadResidue(f"residue {r} outside 0..{period - 1}")
        bits = tuple(bool(b) for b in prefix)

        # minimal eventual period: least divisor of `period` whose residue
        # classes the residue set respects
        for d in _divisors(period):
            if all((r in res) == (((r + d) % period) in res) for r in range(period)):
                period_c = d
                res_c = frozenset(r for r in res if r < d)
                break

        # absorb prefix bits that already follow the periodic rule
        n = len(bits)
        while n > 0 and bits[n - 1] == ((n - 1) % period_c in res_c):
            n -= 1
        self.threshold = n
        self.prefix = bits[:n]
        self.period = period_c
        self.residues = res_c

    # ---- membership and classification ----

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if n < self.threshold:
            return self.prefix[n]
        return (n % self.period) in self.residues

    def classify(self) -> str:
        """'finite', 'cofinite' or 'mixed', by the eventual residue set."""
        if not self.residues:
            return "finite"
        if len(self.residues) == self.period:
            return "cofinite"
        return "mixed"

    def is_empty(self) -> bool:
        return not self.residues and not any(self.prefix)

    def is_full(self) -> bool:
        return len(self.residues) == self.period and all(self.prefix)

    def elements_below(self, bound: int) -> list[int]:
        return [n for n in range(bound) if n in self]

    # ---- boolean algebra ----

    def _pointwise(self, other: IndexSet, op) -> IndexSet:
        p = math.lcm(self.period, other.period)
        n0 = max(self.threshold, other.threshold)
        prefix = [op(n in self, n in other) for n in range(n0)]
        residues = [r for r in range(p)
                    if op((n0 + ((r - n0) % p)) in self, (n0 + ((r - n0) % p)) in other)]
        # evaluate each class at its first representative >= n0 so the
        # prefix never leaks into the periodic part
        return IndexSet(prefix, p, residues)

    def union(self, other: IndexSet) -> IndexSet:
        return self._pointwise(other, lambda a, b: a or b)

    def intersect(self, other: IndexSet) -> IndexSet:
        return self._pointwise(other, lambda a, b: a and b)

    def difference(self, other: IndexSet) -> IndexSet:
        return self._pointwise(other, lambda a, b: a and not b)

    def complement(self) -> IndexSet:
        prefix = [not b for b in self.prefix]
        residues = [r for r in range(self.period) if r not in self.residues]
        return IndexSet(prefix, self.period, residues)

    def is_subset_of(self, other: IndexSet) -> bool:
        return self.difference(other).is_empty()

    def __and__(self, other: IndexSet) -> IndexSet:
        return self.intersect(other)

    def __or__(self, other: IndexSet) -> IndexSet:
        return self.union(other)

    def __sub__(self, other: IndexSet) -> IndexSet:
        return self.difference(other)

    def __invert__(self) -> IndexSet:
        return self.complement()

    # ---- value semantics ----

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexSet):
            return NotImplemented
        return (self.threshold == other.threshold and self.prefix == other.prefix
                and self.period == other.period and self.residues == other.residues)

    def __hash__(self) -> int:
        return hash((self.prefix, self.period, self.residues))

    def __repr__(self) -> str:
        bits = "".join("1" if b else "0" for b in self.prefix)
        res = ",".join(str(r) for r in sorted(self.residues))
        return f"IndexSet(prefix={bits!r}, period={self.period}, residues={{{res}}})"

    # ---- convenience constructors ----

    @staticmethod
    def empty() -> IndexSet:
        return IndexSet((), 1, ())

    @staticmethod
    def full() -> IndexSet:
        return IndexSet((), 1, (0,))

    @staticmethod
    def finite(members: Iterable[int]) -> IndexSet:
        ms = set(members)
        if not ms:
            return IndexSet.empty()
        top = max(ms)
        return IndexSet([n in ms for n in range(top + 1)], 1, ())

    @staticmethod
    def from_threshold(n0: int) -> IndexSet:
        """All naturals >= n0."""
        return IndexSet([False] * n0, 1, (0,))

    @staticmethod
    def residue_class(period: int, residues: Iterable[int]) -> IndexSet:
        return IndexSet((), period, residues)

    @staticmethod
    def evens() -> IndexSet:
        return IndexSet((), 2, (0,))

    @staticmethod
    def odds() -> IndexSet:
        return IndexSet((), 2, (1,))

    # ---- JSON wire format ----

    def to_json(self) -> dict:
        return {
            "prefix": "".join("1" if b else "0" for b in self.prefix),
            "period": self.period,
            "residues": sorted(self.residues),
        }

    @staticmethod
    def from_json(obj: dict) -> IndexSet:
        if not isinstance(obj, dict):
            raise MalformedSpec(f"index set literal must be an object, got {type(obj).__name__}")
        prefix = obj.get("prefix", "")
        if not isinstance(prefix, str) or any(ch not in "01" for ch in prefix):
            raise MalformedSpec("index set prefix must be a string of 0s and 1s")
        period = obj.get("period", 1)
        residues = obj.get("residues", [])
        if not isinstance(period, int) or not isinstance(residues, list):
            raise MalformedSpec("index set needs an integer period and a residue list")
        return IndexSet([ch == "1" for ch in prefix], period, residues)


def make_index_set(prefix: Iterable[int | bool], period: int,
                   residues: Iterable[int]) -> IndexSet:
    """Build a canonical IndexSet from prefix bits, a period and residues."""
    return IndexSet(prefix, period, residues)


def index_algebra(op: str, s: IndexSet, t: IndexSet | None = None) -> IndexSet:
    """Exact set operation; `complement` ignores t, the rest require it."""
    if op == "complement":
        return s.complement()
    if t is None:
        raise MalformedSpec(f"operation {op!r} needs two operands")
    if op == "union":
        return s.union(t)
    if op == "intersect":
        return s.intersect(t)
    if op == "difference":
        return s.difference(t)
    raise MalformedSpec(f"unknown index-set operation {op!r}")


def classify_index_set(s: IndexSet) -> str:
    return s.classify()


@dataclass(frozen=True)
class FilterOracle:
    """Membership rule for the fixed nonprincipal ultrafilter.

    A canonical IndexSet S is decided into the filter iff
    (tower_constant mod S.period) is one of S's eventual residues.
    Different tower constants correspond to different ultrafilters over
    the same algebra, which is exactly how genuinely filter-dependent
    answers (alternating families) are demonstrated.
    """

    tower_constant: int = 0

    def decide(self, s: IndexSet) -> bool:
        return (self.tower_constant % s.period) in s.residues


DEFAULT_ORACLE = FilterOracle(0)


def ultrafilter_decide(s: IndexSet, oracle: FilterOracle = DEFAULT_ORACLE) -> bool:
    """True iff s belongs to the fixed ultrafilter under this oracle."""
    return oracle.decide(s)
