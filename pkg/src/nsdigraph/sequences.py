"""Eventually quasi-polynomial sequences and hypernatural numbers.

Hypernatural lengths, counts and distances are represented by sequences
of naturals that, beyond a finite prefix, follow one polynomial with
rational coefficients per residue class of some period.  The class is
closed under addition, multiplication, truncated subtraction, min/max
and piecewise combination along an ultimately periodic condition, and
every comparison of two such sequences yields an ultimately periodic
index set, so every "almost all n" question about them stays decidable.

`IntSeq` is the raw integer-valued carrier (selectors over families with
integer vertex labels may go negative); `HyperNat` wraps an IntSeq whose
values are provably nonnegative.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import MalformedSpec, NegativeTail, NonIntegralTail
from .ultrafilter import DEFAULT_ORACLE, FilterOracle, IndexSet


class Poly:
    """Univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, n: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def __add__(self, other: Poly) -> Poly:
        k = max(len(self.coeffs), len(other.coeffs))
        return Poly([(self.coeffs[i] if i < len(self.coeffs) else 0)
                     + (other.coeffs[i] if i < len(other.coeffs) else 0)
                     for i in range(k)])

    def __neg__(self) -> Poly:
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def sign_stable_from(self) -> int:
        """Index beyond which every value has the sign of the leading coefficient.

        Cauchy's root bound: all real roots lie within 1 + max|a_i| / |a_d|,
        so for n strictly greater than that, the sign is settled.  Constant
        and zero polynomials are stable from 0.
        """
        if self.degree <= 0:
            return 0
        lead = abs(self.coeffs[-1])
        top = max(abs(c) for c in self.coeffs[:-1])
        bound = 1 + top / lead
        return int(math.floor(bound)) + 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*n")
            else:
                terms.append(f"{c}*n^{i}")
        return "Poly(" + " + ".join(terms) + ")"


def _coeff_from_json(c) -> Fraction:
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, list) and len(c) == 2 and all(isinstance(x, int) for x in c):
        return Fraction(c[0], c[1])
    raise MalformedSpec(f"polynomial coefficient must be an int or [num, den], got {c!r}")


def _coeff_to_json(c: Fraction):
    return c.numerator if c.denominator == 1 else [c.numerator, c.denominator]


_REL_NAMES = ("le", "lt", "eq", "ge", "gt", "ne")
_REL_ALIASES = {"<=": "le", "<": "lt", "=": "eq", "==": "eq",
                ">=": "ge", ">": "gt", "!=": "ne"}


def _rel_name(rel: str) -> str:
    name = _REL_ALIASES.get(rel, rel)
    if name not in _REL_NAMES:
        raise MalformedSpec(f"unknown comparison {rel!r}")
    return name


def _rel_holds(name: str, value: int) -> bool:
    # `value` is the sign-relevant difference x - y at one index
    if name == "le":
        return value <= 0
    if name == "lt":
        return value < 0
    if name == "eq":
        return value == 0
    if name == "ge":
        return value >= 0
    if name == "gt":
        return value > 0
    return value != 0


def _rel_eventual(name: str, diff_poly: Poly) -> bool:
    # truth of `x rel y` on a residue class where x - y follows diff_poly,
    # taken beyond the sign-stability bound
    if diff_poly.is_zero():
        return name in ("le", "eq", "ge")
    if diff_poly.degree == 0:
        c = diff_poly.coeffs[0]
        return _rel_holds(name, 1 if c > 0 else -1)
    return _rel_holds(name, 1 if diff_poly.lead > 0 else -1)


class IntSeq:
    """Eventually quasi-polynomial integer sequence in canonical form.

    value(n) is prefix[n] for n below the threshold and tail_polys[n mod
    period](n) beyond it.  Canonical form has the least structural period
    and the least threshold, so structural equality is pointwise equality.
    """

    __slots__ = ("threshold", "prefix", "period", "polys")

    def __init__(self, prefix: Iterable[int] = (), period: int = 1,
                 polys: Sequence[Poly | Iterable[Fraction | int]] = (Poly(),)):
        if period < 1:
            raise MalformedSpec(f"period must be >= 1, got {period}")
        ps = [p if isinstance(p, Poly) else Poly(p) for p in polys]
        if len(ps) != period:
            raise MalformedSpec(f"need {period} tail polynomials, got {len(ps)}")
        pre = [int(v) for v in prefix]
        n0 = len(pre)

        # tail must be integer valued on each residue class beyond the
        # threshold; checking degree+1 points settles the whole progression
        for r, f in enumerate(ps):
            first = n0 + ((r - n0) % period)
            for k in range(f.degree + 2):
                v = f(first + k * period)
                if v.denominator != 1:
                    raise NonIntegralTail(
                        f"tail polynomial for class {r} (mod {period}) takes "
                        f"value {v} at n={first + k * period}")

        # least structural period
        for d in range(1, period + 1):
            if period % d == 0 and all(ps[r] == ps[(r + d) % period] for r in range(period)):
                period_c = d
                ps_c = ps[:d]
                break

        # least threshold: absorb prefix values the tail already produces
        while n0 > 0 and ps_c[(n0 - 1) % period_c](n0 - 1) == pre[n0 - 1]:
            n0 -= 1
        self.threshold = n0
        self.prefix = tuple(pre[:n0])
        self.period = period_c
        self.polys = tuple(ps_c)

    # ---- evaluation ----

    def value(self, n: int) -> int:
        if n < 0:
            raise MalformedSpec("sequences are indexed by naturals")
        if n < self.threshold:
            return self.prefix[n]
        v = self.polys[n % self.period](n)
        return int(v)

    def values(self, upto: int) -> list[int]:
        return [self.value(n) for n in range(upto)]

    def class_poly(self, oracle: FilterOracle = DEFAULT_ORACLE) -> Poly:
        """Tail polynomial governing the residue class the oracle follows."""
        return self.polys[oracle.tower_constant % self.period]

    def eventual_constant(self) -> int | None:
        """The eventual value if the sequence is eventually constant, else None."""
        if self.period == 1 and self.polys[0].degree <= 0:
            return int(self.polys[0](0))
        return None

    # ---- pointwise arithmetic ----

    def __add__(self, other: IntSeq | int) -> IntSeq:
        other = _as_seq(other)
        p = math.lcm(self.period, other.period)
        n0 = max(self.threshold, other.threshold)
        return IntSeq([self.value(n) + other.value(n) for n in range(n0)], p,
                      [self.polys[r % self.period] + other.polys[r % other.period]
                       for r in range(p)])

    def __radd__(self, other: int) -> IntSeq:
        return self + other

    def __neg__(self) -> IntSeq:
        return IntSeq([-v for v in self.prefix], self.period, [-f for f in self.polys])

    def __sub__(self, other: IntSeq | int) -> IntSeq:
        return self + (-_as_seq(other))

    def __rsub__(self, other: int) -> IntSeq:
        return _as_seq(other) - self

    def __mul__(self, other: IntSeq | int) -> IntSeq:
        other = _as_seq(other)
        p = math.lcm(self.period, other.period)
        n0 = max(self.threshold, other.threshold)
        return IntSeq([self.value(n) * other.value(n) for n in range(n0)], p,
                      [self.polys[r % self.period] * other.polys[r % other.period]
                       for r in range(p)])

    def __rmul__(self, other: int) -> IntSeq:
        return self * other

    # ---- comparisons, piecewise and lattice ops ----

    def compare(self, rel: str, other: IntSeq | int) -> IndexSet:
        """The exact index set {n : self(n) rel other(n)}.

        Per residue class the difference polynomial changes sign finitely
        often, so the set is ultimately periodic: pointwise bits up to the
        sign-stability bound, then one bit per class.
        """
        name = _rel_name(rel)
        diff = self - _as_seq(other)
        n0 = max(diff.threshold,
                 max(f.sign_stable_from() for f in diff.polys) + 1)
        prefix = [_rel_holds(name, diff.value(n)) for n in range(n0)]
        residues = [r for r in range(diff.period)
                    if _rel_eventual(name, diff.polys[r])]
        return IndexSet(prefix, diff.period, residues)

    def eq_set(self, other: IntSeq | int) -> IndexSet:
        return self.compare("eq", other)

    @staticmethod
    def piecewise(cond: IndexSet, when_true: IntSeq | int, when_false: IntSeq | int) -> IntSeq:
        """The sequence that follows `when_true` on cond and `when_false` off it."""
        a, b = _as_seq(when_true), _as_seq(when_false)
        p = math.lcm(cond.period, a.period, b.period)
        n0 = max(cond.threshold, a.threshold, b.threshold)
        prefix = [a.value(n) if n in cond else b.value(n) for n in range(n0)]
        polys = []
        for r in range(p):
            probe = n0 + ((r - n0) % p)
            polys.append(a.polys[r % a.period] if probe in cond else b.polys[r % b.period])
        return IntSeq(prefix, p, polys)

    def monus(self, other: IntSeq | int) -> IntSeq:
        """Truncated subtraction max(self - other, 0), pointwise."""
        other = _as_seq(other)
        return IntSeq.piecewise(self.compare("ge", other), self - other, IntSeq.constant(0))

    def min_with(self, other: IntSeq | int) -> IntSeq:
        other = _as_seq(other)
        return self - self.monus(other)

    def max_with(self, other: IntSeq | int) -> IntSeq:
        other = _as_seq(other)
        return other + self.monus(other)

    def abs(self) -> IntSeq:
        return self.monus(0) + (-self).monus(0)

    def with_prefix_values(self, values: Sequence[int]) -> IntSeq:
        """Copy of the sequence with its first len(values) entries replaced."""
        k = len(values)
        n0 = max(k, self.threshold)
        prefix = [values[n] if n < k else self.value(n) for n in range(n0)]
        return IntSeq(prefix, self.period, self.polys)

    # ---- constructors ----

    @staticmethod
    def constant(c: int) -> IntSeq:
        return IntSeq((), 1, [Poly([c])])

    @staticmethod
    def identity() -> IntSeq:
        return IntSeq((), 1, [Poly([0, 1])])

    @staticmethod
    def floor_of_index(k: int) -> IntSeq:
        """floor(n / k) as a quasi-polynomial with period k."""
        if k < 1:
            raise MalformedSpec("floor divisor must be >= 1")
        return IntSeq((), k, [Poly([Fraction(-r, k), Fraction(1, k)]) for r in range(k)])

    @staticmethod
    def clamped_identity(lo: int) -> IntSeq:
        """max(n, lo): the index clamped from below."""
        return IntSeq([lo] * lo, 1, [Poly([0, 1])])

    @staticmethod
    def from_function(fn: Callable[[int], int], threshold: int, tail: IntSeq) -> IntSeq:
        """Sequence given pointwise below `threshold` and by `tail` beyond it."""
        n0 = max(threshold, tail.threshold)
        return IntSeq([fn(n) if n < threshold else tail.value(n) for n in range(n0)],
                      tail.period, tail.polys)

    # ---- value semantics ----

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntSeq):
            return NotImplemented
        return (self.threshold == other.threshold and self.prefix == other.prefix
                and self.period == other.period and self.polys == other.polys)

    def __hash__(self) -> int:
        return hash((self.prefix, self.period, self.polys))

    def __repr__(self) -> str:
        return (f"IntSeq(prefix={list(self.prefix)}, period={self.period}, "
                f"polys={list(self.polys)})")


def _as_seq(x: IntSeq | int) -> IntSeq:
    return x if isinstance(x, IntSeq) else IntSeq.constant(x)


class HyperNat:
    """Hypernatural number: an IntSeq with provably nonnegative values.

    The nonnegativity proof per residue class is: a zero or constant tail
    is checked directly; otherwise the leading coefficient must be
    positive and every class point up to the sign-stability bound is
    scanned.  Construction fails with NegativeTail otherwise.
    """

    __slots__ = ("seq",)

    def __init__(self, prefix: Iterable[int] = (), period: int = 1,
                 polys: Sequence[Poly | Iterable[Fraction | int]] = (Poly(),)):
        self.seq = _check_nonnegative(IntSeq(prefix, period, polys))

    @staticmethod
    def of(seq: IntSeq) -> HyperNat:
        out = object.__new__(HyperNat)
        out.seq = _check_nonnegative(seq)
        return out

    @staticmethod
    def constant(c: int) -> HyperNat:
        return HyperNat.of(IntSeq.constant(c))

    @staticmethod
    def identity() -> HyperNat:
        return HyperNat.of(IntSeq.identity())

    # ---- arithmetic ----

    def value(self, n: int) -> int:
        return self.seq.value(n)

    def values(self, upto: int) -> list[int]:
        return self.seq.values(upto)

    def add(self, other: HyperNat) -> HyperNat:
        return HyperNat.of(self.seq + other.seq)

    def mul(self, other: HyperNat) -> HyperNat:
        return HyperNat.of(self.seq * other.seq)

    def monus(self, other: HyperNat) -> HyperNat:
        return HyperNat.of(self.seq.monus(other.seq))

    def compare(self, rel: str, other: HyperNat) -> IndexSet:
        return self.seq.compare(rel, other.seq)

    def limit(self, oracle: FilterOracle = DEFAULT_ORACLE) -> int | None:
        """Least natural bound holding almost everywhere, or None if unbounded.

        On the residue class the oracle follows, the tail polynomial is
        either a constant (that constant is the least a.e. bound; prefix
        exceptions sit in a finite set and cannot matter) or nonconstant
        and hence unbounded on the class.
        """
        f = self.seq.class_poly(oracle)
        if f.degree <= 0:
            return int(f(0))
        return None

    def is_unlimited(self, oracle: FilterOracle = DEFAULT_ORACLE) -> bool:
        return self.limit(oracle) is None

    # ---- value semantics / wire format ----

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HyperNat):
            return NotImplemented
        return self.seq == other.seq

    def __hash__(self) -> int:
        return hash(self.seq)

    def __repr__(self) -> str:
        return f"HyperNat({self.seq!r})"

    def to_json(self) -> dict:
        return {
            "prefix": list(self.seq.prefix),
            "period": self.seq.period,
            "polys": [[_coeff_to_json(c) for c in f.coeffs] or [0] for f in self.seq.polys],
        }

    @staticmethod
    def from_json(obj: dict) -> HyperNat:
        if not isinstance(obj, dict):
            raise MalformedSpec("hypernatural literal must be an object")
        prefix = obj.get("prefix", [])
        period = obj.get("period", 1)
        polys = obj.get("polys")
        if not isinstance(prefix, list) or not all(isinstance(v, int) for v in prefix):
            raise MalformedSpec("hypernatural prefix must be a list of naturals")
        if not isinstance(period, int) or not isinstance(polys, list):
            raise MalformedSpec("hypernatural needs an integer period and a list of polys")
        return HyperNat(prefix, period, [Poly([_coeff_from_json(c) for c in cs]) for cs in polys])


def _check_nonnegative(seq: IntSeq) -> IntSeq:
    for n, v in enumerate(seq.prefix):
        if v < 0:
            raise NegativeTail(f"value {v} at n={n} is negative")
    for r, f in enumerate(seq.polys):
        if f.is_zero():
            continue
        if f.degree == 0:
            if f.coeffs[0] < 0:
                raise NegativeTail(f"tail for class {r} (mod {seq.period}) is {f.coeffs[0]}")
            continue
        if f.lead < 0:
            raise NegativeTail(
                f"tail for class {r} (mod {seq.period}) has negative leading coefficient")
        first = seq.threshold + ((r - seq.threshold) % seq.period)
        n = first
        stable = f.sign_stable_from()
        while n <= stable:
            if f(n) < 0:
                raise NegativeTail(f"tail value {f(n)} at n={n} is negative")
            n += seq.period
    return seq


# ---- functional entry points mirroring the library surface ----

def make_hypernat(prefix: Iterable[int], period: int,
                  polys: Sequence[Poly | Iterable[Fraction | int]]) -> HyperNat:
    return HyperNat(prefix, period, polys)


def hypernat_arith(op: str, x: HyperNat, y: HyperNat) -> HyperNat:
    if op == "add":
        return x.add(y)
    if op == "mul":
        return x.mul(y)
    if op == "monus":
        return x.monus(y)
    raise MalformedSpec(f"unknown hypernatural operation {op!r}")


def hypernat_compare(rel: str, x: HyperNat, y: HyperNat) -> IndexSet:
    return x.compare(rel, y)


def hypernat_limit(x: HyperNat, oracle: FilterOracle = DEFAULT_ORACLE) -> int | None:
    return x.limit(oracle)
