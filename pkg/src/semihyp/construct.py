"""Factories that build verified semihypergroups.

Sources: semigroup/group multiplication tables, the parametrized 3-point
family, left coset spaces and double coset spaces of a finite group modulo a
subgroup, and orbit spaces of a finite group action.  Every factory runs the
probability and associativity checks before returning and refuses to hand
back an unverified structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Optional, Sequence

from .algebra import (
    CheckReport,
    ConvolutionTable,
    Measure,
    PointRef,
    PointSpace,
    RationalLike,
    Semihypergroup,
    UnknownLabel,
    as_fraction,
    point_mass,
)


class ConstraintViolation(ValueError):
    """Input parameters break a documented arithmetic constraint."""

    def __init__(self, violations: Sequence[str], report: Optional[CheckReport] = None):
        self.violations = tuple(violations)
        self.report = report
        super().__init__("; ".join(self.violations))


class NotAssociativeError(ValueError):
    """A constructed table failed the brute-force associativity check."""

    def __init__(self, report: CheckReport):
        self.report = report
        w = report.witness or {}
        super().__init__(f"associativity fails at triple {w.get('triple')}")


class NotASubgroupError(ValueError):
    pass


class InvalidActionError(ValueError):
    pass


class RepresentativeDependenceError(RuntimeError):
    """Coset/orbit convolution depended on the chosen representatives.

    Signals an implementation bug, not bad user input: the defining averages
    are provably representative-independent.
    """


@dataclass(frozen=True)
class CayleyTable:
    """Multiplication table of a finite magma; entry product[x][y] = x*y."""

    labels: tuple[str, ...]
    product: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(str(l) for l in self.labels))
        object.__setattr__(
            self, "product", tuple(tuple(int(v) for v in row) for row in self.product)
        )
        n = len(self.labels)
        if len(set(self.labels)) != n or n == 0:
            raise ValueError("labels must be nonempty and pairwise distinct")
        if len(self.product) != n or any(len(row) != n for row in self.product):
            raise ValueError("product table must be n-by-n")
        for row in self.product:
            for v in row:
                if not 0 <= v < n:
                    raise ValueError(f"table entry {v} is not a valid index")

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, point: PointRef) -> int:
        if isinstance(point, int):
            if not 0 <= point < self.n:
                raise UnknownLabel(f"index out of range: {point}")
            return point
        try:
            return self.labels.index(point)
        except ValueError:
            raise UnknownLabel(f"unknown label: {point!r}") from None

    def mul(self, x: PointRef, y: PointRef) -> int:
        return self.product[self.index(x)][self.index(y)]

    def is_associative(self) -> bool:
        return self.associativity_witness() is None

    def associativity_witness(self) -> Optional[tuple[int, int, int]]:
        for x, y, z in product(range(self.n), repeat=3):
            if self.product[self.product[x][y]][z] != self.product[x][self.product[y][z]]:
                return (x, y, z)
        return None

    def identity(self) -> Optional[int]:
        for e in range(self.n):
            if all(self.product[e][x] == x == self.product[x][e] for x in range(self.n)):
                return e
        return None

    def is_group(self) -> bool:
        if not self.is_associative() or self.identity() is None:
            return False
        n = self.n
        full = set(range(n))
        return all(
            set(self.product[x]) == full and {row[x] for row in self.product} == full
            for x in range(n)
        )

    def inverse(self, x: PointRef) -> int:
        e = self.identity()
        if e is None:
            raise ValueError("table has no identity")
        i = self.index(x)
        for y in range(self.n):
            if self.product[i][y] == e and self.product[y][i] == e:
                return y
        raise ValueError(f"{self.labels[i]} has no inverse")

    def is_subgroup(self, members: Iterable[PointRef]) -> bool:
        idx = {self.index(p) for p in members}
        if not idx:
            return False
        # closed nonempty subset of a finite group is a subgroup
        return all(self.product[x][y] in idx for x in idx for y in idx)


@dataclass(frozen=True)
class GroupAction:
    """Action of a finite group on the points of a finite group's table.

    act[h][x] is the image of carrier point x under group element h.
    """

    group: CayleyTable
    carrier: CayleyTable
    act: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "act", tuple(tuple(int(v) for v in row) for row in self.act)
        )
        if not self.group.is_group():
            raise InvalidActionError("acting table is not a group")
        nh, ng = self.group.n, self.carrier.n
        if len(self.act) != nh or any(len(row) != ng for row in self.act):
            raise InvalidActionError("action table must be |H|-by-|G|")
        for row in self.act:
            for v in row:
                if not 0 <= v < ng:
                    raise InvalidActionError(f"action image {v} is not a carrier point")
        e = self.group.identity()
        assert e is not None
        if self.act[e] != tuple(range(ng)):
            raise InvalidActionError("group identity must act as the identity map")
        for h1 in range(nh):
            for h2 in range(nh):
                composed = tuple(self.act[h1][self.act[h2][x]] for x in range(ng))
                if composed != self.act[self.group.product[h1][h2]]:
                    raise InvalidActionError(
                        f"action is not a homomorphism at pair "
                        f"({self.group.labels[h1]}, {self.group.labels[h2]})"
                    )

    def orbit(self, x: PointRef) -> frozenset[int]:
        i = self.carrier.index(x)
        return frozenset(row[i] for row in self.act)


def _finish(space: PointSpace, rows: dict[tuple[int, int], Measure], name: str) -> Semihypergroup:
    """Assemble, then insist on probability rows and associativity."""
    n = space.n
    table = ConvolutionTable(
        space, tuple(tuple(rows[(x, y)] for y in range(n)) for x in range(n))
    )
    s = Semihypergroup(space=space, table=table, name=name)
    prob = s.probability_report
    if not prob.passed:
        raise ConstraintViolation([prob.detail], report=prob)
    assoc = s.associativity_report
    if not assoc.passed:
        raise NotAssociativeError(assoc)
    return s


def from_semigroup(table: CayleyTable, name: Optional[str] = None) -> Semihypergroup:
    """Semihypergroup with point-mass convolution p_x * p_y = p_{x.y}."""
    witness = table.associativity_witness()
    if witness is not None:
        x, y, z = (table.labels[i] for i in witness)
        raise ConstraintViolation([f"input table is not associative at ({x}, {y}, {z})"])
    space = PointSpace(table.labels)
    rows = {
        (x, y): point_mass(space, table.product[x][y])
        for x in range(table.n)
        for y in range(table.n)
    }
    return _finish(space, rows, name or "semigroup")


def triple_constraint_violations(
    x1: Fraction, x2: Fraction, x3: Fraction,
    y1: Fraction, y2: Fraction, y3: Fraction,
    z1: Fraction, z2: Fraction,
) -> list[str]:
    """Arithmetic preconditions of the 3-point family, with named failures."""
    out = []
    named = [("x1", x1), ("x2", x2), ("x3", x3), ("y1", y1), ("y2", y2),
             ("y3", y3), ("z1", z1), ("z2", z2)]
    for label, v in named:
        if v < 0:
            out.append(f"{label} = {v} is negative")
    if x1 + x2 + x3 != 1:
        out.append(f"x1+x2+x3 = {x1 + x2 + x3} != 1")
    if y1 + y2 + y3 != 1:
        out.append(f"y1+y2+y3 = {y1 + y2 + y3} != 1")
    if z1 + z2 != 1:
        out.append(f"z1+z2 = {z1 + z2} != 1")
    if y1 * x3 != z1 * x1:
        out.append(f"y1*x3 != z1*x1 ({y1 * x3} != {z1 * x1})")
    return out


def triple_hypergroup(
    x1: RationalLike, x2: RationalLike, x3: RationalLike,
    y1: RationalLike, y2: RationalLike, y3: RationalLike,
    z1: RationalLike, z2: RationalLike,
    name: Optional[str] = None,
) -> Semihypergroup:
    """3-point structure on {e, a, b} with parametrized products.

    e is the identity; p_a*p_a = x1 p_e + x2 p_a + x3 p_b, p_b*p_b uses the
    y's, and p_a*p_b = p_b*p_a = z1 p_a + z2 p_b.  The documented parameter
    constraints (three unit sums and y1*x3 = z1*x1) are necessary but not
    sufficient for associativity, so acceptance is decided by the brute-force
    associativity check; whichever diagnostics fail are reported together.
    """
    x1, x2, x3 = as_fraction(x1), as_fraction(x2), as_fraction(x3)
    y1, y2, y3 = as_fraction(y1), as_fraction(y2), as_fraction(y3)
    z1, z2 = as_fraction(z1), as_fraction(z2)
    violations = triple_constraint_violations(x1, x2, x3, y1, y2, y3, z1, z2)
    structural = [v for v in violations if "y1*x3" not in v]
    if structural:
        # without the sum/sign constraints the rows are not even probability
        # measures, so there is no table to check
        raise ConstraintViolation(violations)

    space = PointSpace(("e", "a", "b"))
    rows: dict[tuple[int, int], Measure] = {}
    e, a, b = 0, 1, 2
    rows[(e, e)] = point_mass(space, e)
    rows[(e, a)] = rows[(a, e)] = point_mass(space, a)
    rows[(e, b)] = rows[(b, e)] = point_mass(space, b)
    rows[(a, a)] = Measure(space, (x1, x2, x3))
    rows[(b, b)] = Measure(space, (y1, y2, y3))
    rows[(a, b)] = rows[(b, a)] = Measure(space, (Fraction(0), z1, z2))
    table = ConvolutionTable(
        space, tuple(tuple(rows[(x, y)] for y in range(3)) for x in range(3))
    )
    s = Semihypergroup(space=space, table=table, name=name or "triple")
    assoc = s.associativity_report
    if violations or not assoc.passed:
        if violations:
            raise ConstraintViolation(violations, report=assoc)
        raise NotAssociativeError(assoc)
    return s


def _require_subgroup(g: CayleyTable, members: Iterable[PointRef]) -> list[int]:
    if not g.is_group():
        raise NotASubgroupError("ambient table is not a group")
    idx = sorted({g.index(p) for p in members})
    if not idx or not g.is_subgroup(idx):
        raise NotASubgroupError(
            f"{{{', '.join(g.labels[i] for i in idx)}}} is not a subgroup"
        )
    return idx


def _partition_space(
    g: CayleyTable, classes: list[frozenset[int]], label_of: dict[frozenset[int], str]
) -> tuple[PointSpace, dict[frozenset[int], int]]:
    space = PointSpace(tuple(label_of[c] for c in classes))
    return space, {c: k for k, c in enumerate(classes)}


def coset_space(
    g: CayleyTable, subgroup: Iterable[PointRef], name: Optional[str] = None
) -> Semihypergroup:
    """Left coset space G/H with Haar-averaged convolution.

    Entry (xH, yH) is the average over t in H of the point mass at (x.t.y)H.
    Cosets are enumerated in first-seen order over G's element order and
    labeled "<rep>H" by their earliest-listed member.  Every entry is
    recomputed for every representative choice; a mismatch would be an
    implementation bug and raises RepresentativeDependenceError.
    """
    h = _require_subgroup(g, subgroup)

    def coset_of(x: int) -> frozenset[int]:
        return frozenset(g.product[x][t] for t in h)

    classes: list[frozenset[int]] = []
    for x in range(g.n):
        c = coset_of(x)
        if c not in classes:
            classes.append(c)
    labels = {c: f"{g.labels[min(c)]}H" for c in classes}
    space, index_of = _partition_space(g, classes, labels)

    def entry(x: int, y: int) -> Measure:
        w = [Fraction(0)] * space.n
        for t in h:
            w[index_of[coset_of(g.product[g.product[x][t]][y])]] += Fraction(1, len(h))
        return Measure(space, tuple(w))

    rows: dict[tuple[int, int], Measure] = {}
    for ca, cb in product(classes, repeat=2):
        reference = None
        for x, y in product(sorted(ca), sorted(cb)):
            m = entry(x, y)
            if reference is None:
                reference = m
            elif m.weights != reference.weights:
                raise RepresentativeDependenceError(
                    f"entry ({labels[ca]}, {labels[cb]}) depends on representatives"
                )
        rows[(index_of[ca], index_of[cb])] = reference  # type: ignore[assignment]
    return _finish(space, rows, name or "coset-space")


def double_coset_space(
    g: CayleyTable, subgroup: Iterable[PointRef], name: Optional[str] = None
) -> Semihypergroup:
    """Double coset space G//H; entries average point masses at H(x.t.y)H."""
    h = _require_subgroup(g, subgroup)

    def dcoset_of(x: int) -> frozenset[int]:
        return frozenset(g.product[g.product[s][x]][t] for s in h for t in h)

    classes: list[frozenset[int]] = []
    for x in range(g.n):
        c = dcoset_of(x)
        if c not in classes:
            classes.append(c)
    labels = {c: f"H{g.labels[min(c)]}H" for c in classes}
    space, index_of = _partition_space(g, classes, labels)

    def entry(x: int, y: int) -> Measure:
        w = [Fraction(0)] * space.n
        for t in h:
            w[index_of[dcoset_of(g.product[g.product[x][t]][y])]] += Fraction(1, len(h))
        return Measure(space, tuple(w))

    rows: dict[tuple[int, int], Measure] = {}
    for ca, cb in product(classes, repeat=2):
        reference = None
        for x, y in product(sorted(ca), sorted(cb)):
            m = entry(x, y)
            if reference is None:
                reference = m
            elif m.weights != reference.weights:
                raise RepresentativeDependenceError(
                    f"entry ({labels[ca]}, {labels[cb]}) depends on representatives"
                )
        rows[(index_of[ca], index_of[cb])] = reference  # type: ignore[assignment]
    return _finish(space, rows, name or "double-coset-space")


def orbit_space(action: GroupAction, name: Optional[str] = None) -> Semihypergroup:
    """Orbit space of a group action on a group, with double-averaged products.

    Entry (x^H, y^H) averages the point mass at (act(s,x).act(t,y))^H over all
    s, t in H.  Orbits are labeled by the sorted list of member labels, e.g.
    "{1,3}".  Associativity genuinely can fail when the action is not by
    automorphisms; the failure is reported with its witness triple.
    """
    g = action.carrier
    if not g.is_group():
        raise InvalidActionError("orbit construction needs a group as carrier")
    nh = action.group.n

    orbits: list[frozenset[int]] = []
    for x in range(g.n):
        o = action.orbit(x)
        if o not in orbits:
            orbits.append(o)
    labels = {
        o: "{" + ",".join(sorted(g.labels[i] for i in o)) + "}" for o in orbits
    }
    space, index_of = _partition_space(g, orbits, labels)

    def entry(x: int, y: int) -> Measure:
        w = [Fraction(0)] * space.n
        for s in range(nh):
            for t in range(nh):
                z = g.product[action.act[s][x]][action.act[t][y]]
                w[index_of[action.orbit(z)]] += Fraction(1, nh * nh)
        return Measure(space, tuple(w))

    rows: dict[tuple[int, int], Measure] = {}
    for oa, ob in product(orbits, repeat=2):
        reference = None
        for x, y in product(sorted(oa), sorted(ob)):
            m = entry(x, y)
            if reference is None:
                reference = m
            elif m.weights != reference.weights:
                raise RepresentativeDependenceError(
                    f"entry ({labels[oa]}, {labels[ob]}) depends on representatives"
                )
        rows[(index_of[oa], index_of[ob])] = reference  # type: ignore[assignment]
    return _finish(space, rows, name or "orbit-space")


# ---------------------------------------------------------------------------
# stock tables used by tests, fixtures and the command line


def cyclic_group(n: int) -> CayleyTable:
    return CayleyTable(
        labels=tuple(str(i) for i in range(n)),
        product=tuple(tuple((i + j) % n for j in range(n)) for i in range(n)),
    )


def _cycle_label(p: tuple[int, ...]) -> str:
    seen = [False] * len(p)
    out = ""
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cycle = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cycle.append(j)
            seen[j] = True
            j = p[j]
        out += "(" + "".join(str(k + 1) for k in cycle) + ")"
    return out or "e"


def symmetric_group(n: int) -> CayleyTable:
    """S_n on lexicographically ordered permutations, cycle-notation labels.

    Products come from composing right factor first; the table is the single
    source of truth downstream, so the convention never leaks.
    """
    elems = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(elems)}

    def mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(p[q[i]] for i in range(n))

    return CayleyTable(
        labels=tuple(_cycle_label(p) for p in elems),
        product=tuple(tuple(index[mul(p, q)] for q in elems) for p in elems),
    )


def left_zero_semigroup(n: int) -> CayleyTable:
    if not 1 <= n <= 26:
        raise ValueError("supported sizes are 1..26")
    labels = tuple(chr(ord("a") + i) for i in range(n))
    return CayleyTable(
        labels=labels, product=tuple((i,) * n for i in range(n))
    )


def inversion_action(g: CayleyTable) -> GroupAction:
    """Order-2 action of {0,1} on a group by x -> x^{-1}."""
    if not g.is_group():
        raise InvalidActionError("inversion action needs a group")
    z2 = cyclic_group(2)
    inv = tuple(g.inverse(x) for x in range(g.n))
    return GroupAction(group=z2, carrier=g, act=(tuple(range(g.n)), inv))
