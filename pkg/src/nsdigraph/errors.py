"""Exception hierarchy for the nsdigraph library.

Every library error derives from NsdError so callers (and the CLI) can
distinguish "bad input or unmet precondition" from genuine bugs.  The
classes are grouped by the subsystem that raises them; the CLI maps
ParseError-like failures to exit code 2, validation failures to 3 and
unsupported-family failures to 4.
"""

from __future__ import annotations


class NsdError(Exception):
    """Base class for all nsdigraph errors."""


# ---- standard digraph construction and queries ----------------------------

class PartitionError(NsdError):
    """Vertex cells overlap, miss a ditip, or contain an empty cell."""


class EmptyDigraph(NsdError):
    """A digraph needs at least one arc; without arcs no ditips or vertices exist."""


class UnknownId(NsdError):
    """Vertex or arc id not present in the digraph."""


class SameArc(NsdError):
    """Arc adjacency needs two distinct arcs."""


class SameVertex(NsdError):
    """The operation needs two distinct vertices."""


class EmptySelection(NsdError):
    """An arc subset used to induce a subdigraph must be nonempty."""


# ---- index sets and the ultrafilter fragment -------------------------------

class BadResidue(NsdError):
    """A residue is >= the declared period."""


# ---- hypernatural sequences -------------------------------------------------

class NegativeTail(NsdError):
    """A tail polynomial takes a negative value on its residue class."""


class NonIntegralTail(NsdError):
    """A tail polynomial is not integer-valued on its residue class."""


# ---- families, selectors and internal elements ------------------------------

class UnknownBuiltin(NsdError):
    """Family spec names a builtin that does not exist."""


class MalformedSpec(NsdError):
    """A JSON spec (family, selector, index set, hypernatural, digraph) is malformed."""


class NonEventuallyConstantExplicit(NsdError):
    """An explicit family spec has no tail, so it is not eventually constant."""


class InvalidSelector(NsdError):
    """Selector is valid on at most finitely many indices of the family."""


class SortMismatch(NsdError):
    """Internal elements of the wrong sort (vertex / arc / ditip) for the operation."""


class FamilyMismatch(NsdError):
    """Internal elements belong to different digraph families."""


class NotFiniteEnlargement(NsdError):
    """Standardization needs an eventually constant family with a finite tail digraph."""


# ---- transferred connectivity ------------------------------------------------

class EqualVertices(NsdError):
    """Pairwise connectedness is defined for internal vertices that are not a.e. equal."""


class NotReachable(NsdError):
    """No directed path exists on an ultrafilter-large index set."""


class NotHyperfinite(NsdError):
    """Arc-count bounds apply to families that are finite almost everywhere."""


class NotSimple(NsdError):
    """Arc-count bounds apply to families with no self-loops or parallel arcs a.e."""


# ---- galaxies ------------------------------------------------------------------

class NotWeaklyConnectedAE(NsdError):
    """Distance queries need a family that is weakly connected almost everywhere."""


class AnchorNotStandard(NsdError):
    """The principal-galaxy anchor must be a constant (standard) vertex selector."""


class PrincipalGalaxy(NsdError):
    """Closeness ordering is defined only for galaxies other than the principal one."""


class UnsupportedFamily(NsdError):
    """The operation has no adapter for this family."""


class NotLocallyFinite(NsdError):
    """The operation needs a family whose vertices hold finitely many tips."""


class NotInfinite(NsdError):
    """The operation needs a family whose digraphs are infinite a.e."""
