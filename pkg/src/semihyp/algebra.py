"""Exact measure algebra on a finite point space.

A finite semihypergroup is a point space together with a table assigning to
each ordered pair of points the probability measure that plays the role of
their product.  Convolution of arbitrary measures is the bilinear extension
of that table.  All scalars are `fractions.Fraction`; every check in this
module is exact, so the verdicts can serve as oracles for the rest of the
toolkit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Optional, Union

RationalLike = Union[Fraction, int, str]
PointRef = Union[int, str]


class DimensionMismatch(ValueError):
    """A vector or table does not match the point space it is used with."""


class UnknownLabel(ValueError):
    """A point reference does not name a point of the space."""


class PreconditionError(ValueError):
    """An operation was invoked on a structure that fails its precondition."""


def as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class PointSpace:
    """Ordered finite set of point labels; position in the tuple is the index."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(str(l) for l in self.labels))
        if not self.labels:
            raise ValueError("point space must contain at least one point")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("point labels must be pairwise distinct")

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, point: PointRef) -> int:
        if isinstance(point, int):
            if not 0 <= point < self.n:
                raise UnknownLabel(f"point index out of range: {point}")
            return point
        try:
            return self.labels.index(point)
        except ValueError:
            raise UnknownLabel(f"unknown point label: {point!r}") from None

    def label(self, index: int) -> str:
        return self.labels[index]


@dataclass(frozen=True)
class Measure:
    """Real rational measure on a point space, stored densely."""

    space: PointSpace
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "weights", tuple(as_fraction(w) for w in self.weights)
        )
        if len(self.weights) != self.space.n:
            raise DimensionMismatch(
                f"measure has {len(self.weights)} weights for a "
                f"{self.space.n}-point space"
            )

    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w != 0)

    def is_probability(self) -> bool:
        return all(w >= 0 for w in self.weights) and self.total() == 1

    def __add__(self, other: "Measure") -> "Measure":
        if other.space != self.space:
            raise DimensionMismatch("measures live on different point spaces")
        return Measure(self.space, tuple(a + b for a, b in zip(self.weights, other.weights)))

    def __sub__(self, other: "Measure") -> "Measure":
        return self + other.scale(-1)

    def scale(self, factor: RationalLike) -> "Measure":
        c = as_fraction(factor)
        return Measure(self.space, tuple(c * w for w in self.weights))

    def __rmul__(self, factor: RationalLike) -> "Measure":
        return self.scale(factor)


def point_mass(space: PointSpace, point: PointRef) -> Measure:
    i = space.index(point)
    return Measure(space, tuple(Fraction(1 if j == i else 0) for j in range(space.n)))


def zero_measure(space: PointSpace) -> Measure:
    return Measure(space, (Fraction(0),) * space.n)


@dataclass(frozen=True)
class ConvolutionTable:
    """The n-by-n array of measures assigned to ordered pairs of points."""

    space: PointSpace
    entries: tuple[tuple[Measure, ...], ...]

    def __post_init__(self) -> None:
        n = self.space.n
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise DimensionMismatch("convolution table must be n-by-n")
        for row in self.entries:
            for m in row:
                if m.space != self.space:
                    raise DimensionMismatch("table entry on a different point space")

    def entry(self, x: PointRef, y: PointRef) -> Measure:
        return self.entries[self.space.index(x)][self.space.index(y)]


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a structural check, with an exact witness on failure."""

    check: str
    passed: bool
    detail: str = ""
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class Semihypergroup:
    """Finite point space plus convolution table.

    The structural flags (`probability_report`, `associativity_report`,
    `identity`, `is_commutative`) are computed once on first use and cached;
    the value is immutable, so the cache can never go stale.  Operations that
    require associativity call :func:`require_associative` first.
    """

    space: PointSpace
    table: ConvolutionTable
    name: str = "semihypergroup"

    def __post_init__(self) -> None:
        if self.table.space != self.space:
            raise DimensionMismatch("table belongs to a different point space")

    @property
    def n(self) -> int:
        return self.space.n

    @cached_property
    def probability_report(self) -> CheckReport:
        return check_probability(self)

    @cached_property
    def associativity_report(self) -> CheckReport:
        return check_associativity(self)

    @property
    def is_associative(self) -> bool:
        return self.associativity_report.passed

    @cached_property
    def identity(self) -> Optional[int]:
        return find_identity(self)

    @cached_property
    def is_commutative(self) -> bool:
        return check_commutative(self)


def require_associative(s: Semihypergroup) -> None:
    if not s.is_associative:
        w = s.associativity_report.witness or {}
        raise PreconditionError(
            f"{s.name}: operation requires an associative structure; "
            f"witness triple {w.get('triple')}"
        )


def convolve(mu: Measure, nu: Measure, s: Semihypergroup) -> Measure:
    """Bilinear extension of the point-mass table to arbitrary measures."""
    if mu.space != s.space or nu.space != s.space:
        raise DimensionMismatch("measures must be indexed by the structure's space")
    n = s.n
    out = [Fraction(0)] * n
    entries = s.table.entries
    for x, wx in enumerate(mu.weights):
        if wx == 0:
            continue
        for y, wy in enumerate(nu.weights):
            if wy == 0:
                continue
            c = wx * wy
            for z, wz in enumerate(entries[x][y].weights):
                if wz != 0:
                    out[z] += c * wz
    return Measure(s.space, tuple(out))


def convolve_sets(
    a: Iterable[PointRef], b: Iterable[PointRef], s: Semihypergroup
) -> frozenset[str]:
    """Union of the supports of p_x * p_y over x in a, y in b, as labels."""
    ai = [s.space.index(p) for p in a]
    bi = [s.space.index(p) for p in b]
    out: set[str] = set()
    for x in ai:
        for y in bi:
            for z in s.table.entries[x][y].support():
                out.add(s.space.label(z))
    return frozenset(out)


def check_probability(s: Semihypergroup) -> CheckReport:
    """Every table entry must be a probability measure (nonnegative, total 1)."""
    for x in range(s.n):
        for y in range(s.n):
            m = s.table.entries[x][y]
            if not m.is_probability():
                return CheckReport(
                    check="probability",
                    passed=False,
                    detail=(
                        f"entry ({s.space.label(x)}, {s.space.label(y)}) has "
                        f"total {m.total()} or a negative weight"
                    ),
                    witness={
                        "pair": (s.space.label(x), s.space.label(y)),
                        "weights": m.weights,
                    },
                )
    return CheckReport(check="probability", passed=True)


def check_associativity(s: Semihypergroup) -> CheckReport:
    """Exact test of (p_x*p_y)*p_z = p_x*(p_y*p_z) over all point triples.

    By bilinearity this extends to arbitrary measures, so a pass makes the
    whole measure algebra associative.
    """
    n = s.n
    masses = [point_mass(s.space, i) for i in range(n)]
    for x, y, z in product(range(n), repeat=3):
        lhs = convolve(s.table.entries[x][y], masses[z], s)
        rhs = convolve(masses[x], s.table.entries[y][z], s)
        if lhs.weights != rhs.weights:
            triple = (s.space.label(x), s.space.label(y), s.space.label(z))
            return CheckReport(
                check="associativity",
                passed=False,
                detail=f"(p_{triple[0]}*p_{triple[1]})*p_{triple[2]} differs from "
                f"p_{triple[0]}*(p_{triple[1]}*p_{triple[2]})",
                witness={"triple": triple, "lhs": lhs.weights, "rhs": rhs.weights},
            )
    return CheckReport(check="associativity", passed=True)


def find_identity(s: Semihypergroup) -> Optional[int]:
    """Index of the unique two-sided identity, or None.

    A two-sided identity of a semihypergroup is necessarily unique, which the
    scan asserts rather than assumes.
    """
    found: Optional[int] = None
    for e in range(s.n):
        pe = point_mass(s.space, e)
        if all(
            s.table.entries[x][e].weights == point_mass(s.space, x).weights
            and s.table.entries[e][x].weights == point_mass(s.space, x).weights
            for x in range(s.n)
        ):
            assert found is None, "two distinct two-sided identities found"
            found = e
    return found


def check_commutative(s: Semihypergroup) -> bool:
    return all(
        s.table.entries[x][y].weights == s.table.entries[y][x].weights
        for x in range(s.n)
        for y in range(x + 1, s.n)
    )
