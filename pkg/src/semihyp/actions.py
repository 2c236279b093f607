"""Affine representations on compact convex carriers and their fixed points.

An action assigns to every point s of an associative structure an affine map
T_s of a convex carrier (a standard simplex or the hull of finitely many
rational points) such that composing two maps equals averaging the family
against the convolution of the two point masses.  The module verifies the
action axiom and carrier invariance exactly, measures equicontinuity and
non-expansiveness through operator seminorms, solves for common fixed points
by exact LP, and builds the two canonical actions whose fixed points are
precisely the left invariant means: the translation-dual action on means and
the affine action on the subspace of functionals annihilating constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Optional, Sequence, Union

from .algebra import (
    CheckReport,
    PointRef,
    PreconditionError,
    Semihypergroup,
    as_fraction,
    require_associative,
)
from .amenability import Mean
from .functions import PointFunction
from .linprog import LPProblem, LPSolution, solve_linear_system, solve_lp_feasibility

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


class CarrierError(ValueError):
    """A point that should lie in the carrier does not."""


class SeminormError(ValueError):
    """Unsupported seminorm kind or invalid weights."""


# ---------------------------------------------------------------------------
# convex carriers


@dataclass(frozen=True)
class Simplex:
    """Standard probability simplex in R^dim (vertices = coordinate vectors)."""

    dim: int

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("simplex dimension must be at least 1")


@dataclass(frozen=True)
class Hull:
    """Convex hull of finitely many rational points, V-representation."""

    points: tuple[Vector, ...]

    def __post_init__(self) -> None:
        pts = tuple(tuple(as_fraction(v) for v in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("hull needs at least one point")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise ValueError("hull points must share one dimension")
        if len(set(pts)) != len(pts):
            raise ValueError("hull points must be pairwise distinct")


Carrier = Union[Simplex, Hull]


def carrier_dim(carrier: Carrier) -> int:
    return carrier.dim if isinstance(carrier, Simplex) else len(carrier.points[0])


def carrier_vertices(carrier: Carrier) -> tuple[Vector, ...]:
    if isinstance(carrier, Simplex):
        d = carrier.dim
        return tuple(
            tuple(Fraction(1 if j == i else 0) for j in range(d)) for i in range(d)
        )
    return carrier.points


def carrier_contains(carrier: Carrier, x: Sequence[Fraction]) -> bool:
    """Exact membership; hull membership solves for barycentric weights."""
    vec = tuple(as_fraction(v) for v in x)
    if len(vec) != carrier_dim(carrier):
        return False
    if isinstance(carrier, Simplex):
        return all(v >= 0 for v in vec) and sum(vec, Fraction(0)) == 1
    vertices = carrier.points
    d = len(vertices[0])
    rows = [tuple(p[i] for p in vertices) for i in range(d)]
    rows.append((Fraction(1),) * len(vertices))
    rhs = list(vec) + [Fraction(1)]
    problem = LPProblem(
        matrix=tuple(rows), rhs=tuple(rhs), nonneg=(True,) * len(vertices)
    )
    return solve_lp_feasibility(problem).feasible


def carrier_centroid(carrier: Carrier) -> Vector:
    vertices = carrier_vertices(carrier)
    k = len(vertices)
    return tuple(
        sum((p[i] for p in vertices), Fraction(0)) / k
        for i in range(carrier_dim(carrier))
    )


# ---------------------------------------------------------------------------
# affine maps and actions


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix @ x + offset with exact rational entries."""

    matrix: Matrix
    offset: Vector

    def __post_init__(self) -> None:
        m = tuple(tuple(as_fraction(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "offset", tuple(as_fraction(v) for v in self.offset))
        d = len(self.offset)
        if len(m) != d or any(len(row) != d for row in m):
            raise ValueError("affine map must be square and match its offset")

    @property
    def dim(self) -> int:
        return len(self.offset)

    def apply(self, x: Sequence[Fraction]) -> Vector:
        if len(x) != self.dim:
            raise ValueError("point dimension does not match the map")
        return tuple(
            sum((a * as_fraction(v) for a, v in zip(row, x)), Fraction(0)) + b
            for row, b in zip(self.matrix, self.offset)
        )

    def apply_float(self, x: Sequence[float]) -> tuple[float, ...]:
        return tuple(
            sum(float(a) * v for a, v in zip(row, x)) + float(b)
            for row, b in zip(self.matrix, self.offset)
        )


@dataclass(frozen=True)
class AffineFunctional:
    """x -> coeffs . x + constant, an affine scalar function on the carrier."""

    coeffs: Vector
    constant: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(as_fraction(v) for v in self.coeffs))
        object.__setattr__(self, "constant", as_fraction(self.constant))

    def apply(self, x: Sequence[Fraction]) -> Fraction:
        return (
            sum((c * as_fraction(v) for c, v in zip(self.coeffs, x)), Fraction(0))
            + self.constant
        )


def identity_map(dim: int) -> AffineMap:
    return AffineMap(
        matrix=tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(dim)) for i in range(dim)
        ),
        offset=(Fraction(0),) * dim,
    )


@dataclass(frozen=True)
class AffineAction:
    """One affine self-map of the carrier per point of the structure."""

    structure: Semihypergroup
    carrier: Carrier
    maps: tuple[AffineMap, ...]

    def __post_init__(self) -> None:
        if len(self.maps) != self.structure.n:
            raise ValueError("need exactly one affine map per point")
        d = carrier_dim(self.carrier)
        if any(m.dim != d for m in self.maps):
            raise ValueError("map dimension does not match the carrier")

    def map_for(self, s: PointRef) -> AffineMap:
        return self.maps[self.structure.space.index(s)]

    @cached_property
    def axiom_report(self) -> CheckReport:
        return check_action_axiom(self)

    @cached_property
    def invariance_report(self) -> CheckReport:
        return check_invariance(self)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt)
        for row in a
    )


def _mat_vec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def _mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def _mat_combination(
    weights: Sequence[Fraction], mats: Sequence[Matrix]
) -> Matrix:
    d = len(mats[0])
    out = [[Fraction(0)] * d for _ in range(d)]
    for w, m in zip(weights, mats):
        if w == 0:
            continue
        for i in range(d):
            for j in range(d):
                out[i][j] += w * m[i][j]
    return tuple(tuple(row) for row in out)


def _vec_combination(weights: Sequence[Fraction], vecs: Sequence[Vector]) -> Vector:
    d = len(vecs[0])
    out = [Fraction(0)] * d
    for w, v in zip(weights, vecs):
        if w == 0:
            continue
        for i in range(d):
            out[i] += w * v[i]
    return tuple(out)


def check_action_axiom(action: AffineAction) -> CheckReport:
    """Composition of coefficient maps must equal the convolution average.

    For affine maps the pointwise axiom is equivalent to two exact identities
    per pair (s, t): on the matrices, A_s A_t = sum_z (p_s*p_t)(z) A_z, and on
    the offsets, A_s b_t + b_s = sum_z (p_s*p_t)(z) b_z.  When the structure
    has an identity e, T_e must additionally be the identity map.
    """
    shg = action.structure
    require_associative(shg)
    mats = [m.matrix for m in action.maps]
    offs = [m.offset for m in action.maps]
    for s, t in product(range(shg.n), repeat=2):
        weights = shg.table.entries[s][t].weights
        lhs_mat = _mat_mul(mats[s], mats[t])
        rhs_mat = _mat_combination(weights, mats)
        if lhs_mat != rhs_mat:
            return CheckReport(
                check="action-axiom",
                passed=False,
                detail=f"matrix identity fails at pair "
                f"({shg.space.label(s)}, {shg.space.label(t)})",
                witness={"pair": (shg.space.label(s), shg.space.label(t)),
                         "part": "matrix"},
            )
        lhs_off = tuple(
            a + b for a, b in zip(_mat_vec(mats[s], offs[t]), offs[s])
        )
        rhs_off = _vec_combination(weights, offs)
        if lhs_off != rhs_off:
            return CheckReport(
                check="action-axiom",
                passed=False,
                detail=f"offset identity fails at pair "
                f"({shg.space.label(s)}, {shg.space.label(t)})",
                witness={"pair": (shg.space.label(s), shg.space.label(t)),
                         "part": "offset"},
            )
    e = shg.identity
    if e is not None:
        d = carrier_dim(action.carrier)
        if action.maps[e].matrix != identity_map(d).matrix or any(
            v != 0 for v in action.maps[e].offset
        ):
            return CheckReport(
                check="action-axiom",
                passed=False,
                detail=f"identity point {shg.space.label(e)} must act as the "
                "identity map",
                witness={"pair": (shg.space.label(e),), "part": "identity"},
            )
    return CheckReport(check="action-axiom", passed=True)


def check_invariance(action: AffineAction) -> CheckReport:
    """Each map must send the carrier into itself.

    Affine maps preserve convex combinations, so checking the images of the
    vertices (hull generators) is sufficient.
    """
    for s in range(action.structure.n):
        m = action.maps[s]
        for v in carrier_vertices(action.carrier):
            image = m.apply(v)
            if not carrier_contains(action.carrier, image):
                return CheckReport(
                    check="invariance",
                    passed=False,
                    detail=f"map at {action.structure.space.label(s)} sends a "
                    "vertex outside the carrier",
                    witness={
                        "point": action.structure.space.label(s),
                        "vertex": v,
                        "image": image,
                    },
                )
    return CheckReport(check="invariance", passed=True)


# ---------------------------------------------------------------------------
# seminorms


@dataclass(frozen=True)
class Seminorm:
    """Weighted l1 or weighted l-infinity seminorm with nonnegative weights."""

    kind: str
    weights: Vector

    def __post_init__(self) -> None:
        if self.kind not in ("l1", "linf"):
            raise SeminormError(f"unsupported seminorm kind: {self.kind!r}")
        w = tuple(as_fraction(v) for v in self.weights)
        object.__setattr__(self, "weights", w)
        if any(v < 0 for v in w):
            raise SeminormError("seminorm weights must be nonnegative")

    def value(self, x: Sequence[Fraction]) -> Fraction:
        if self.kind == "l1":
            return sum((w * abs(as_fraction(v)) for w, v in zip(self.weights, x)),
                       Fraction(0))
        return max(
            (w * abs(as_fraction(v)) for w, v in zip(self.weights, x)),
            default=Fraction(0),
        )


def uniform_seminorms(dim: int) -> tuple[Seminorm, ...]:
    ones = (Fraction(1),) * dim
    return (Seminorm("l1", ones), Seminorm("linf", ones))


def operator_seminorm(matrix: Matrix, seminorm: Seminorm) -> Optional[Fraction]:
    """Exact operator seminorm of the matrix on the ambient space.

    Weighted l1 is the largest weighted absolute column sum over its weight;
    weighted l-infinity is the largest weighted absolute row sum.  Returns
    None when a zero-weight direction makes the quantity unbounded.  The
    value bounds the map on differences of carrier points, and for the
    stochastic-transpose actions built here it is attained there.
    """
    d = len(matrix)
    w = seminorm.weights
    if len(w) != d:
        raise SeminormError("seminorm dimension does not match the matrix")
    if seminorm.kind == "l1":
        best = Fraction(0)
        for j in range(d):
            colsum = sum((w[i] * abs(matrix[i][j]) for i in range(d)), Fraction(0))
            if w[j] == 0:
                if colsum != 0:
                    return None
                continue
            best = max(best, colsum / w[j])
        return best
    best = Fraction(0)
    for i in range(d):
        if w[i] == 0:
            continue
        total = Fraction(0)
        for j in range(d):
            if matrix[i][j] == 0:
                continue
            if w[j] == 0:
                return None
            total += abs(matrix[i][j]) / w[j]
        best = max(best, w[i] * total)
    return best


def equicontinuity_bound(
    action: AffineAction, seminorms: Sequence[Seminorm]
) -> Optional[Fraction]:
    """Largest operator seminorm over all maps and seminorms.

    A finite bound certifies equicontinuity of the family: shrinking a
    neighborhood by the bound gives one modulus valid for every map at once.
    None flags an unbounded direction under a zero-weight seminorm.
    """
    best = Fraction(0)
    for m in action.maps:
        for p in seminorms:
            norm = operator_seminorm(m.matrix, p)
            if norm is None:
                return None
            best = max(best, norm)
    return best


def check_nonexpansive(
    action: AffineAction, seminorms: Sequence[Seminorm]
) -> CheckReport:
    """Every map must have operator seminorm at most 1 for every seminorm."""
    for s in range(action.structure.n):
        for k, p in enumerate(seminorms):
            norm = operator_seminorm(action.maps[s].matrix, p)
            if norm is None or norm > 1:
                return CheckReport(
                    check="nonexpansive",
                    passed=False,
                    detail=(
                        f"map at {action.structure.space.label(s)} has "
                        f"{p.kind} operator seminorm "
                        f"{'unbounded' if norm is None else norm}"
                    ),
                    witness={
                        "point": action.structure.space.label(s),
                        "seminorm": {"index": k, "kind": p.kind},
                        "norm": norm,
                    },
                )
    return CheckReport(check="nonexpansive", passed=True)


# ---------------------------------------------------------------------------
# common fixed points


def _require_verified(action: AffineAction) -> None:
    require_associative(action.structure)
    if not action.axiom_report.passed:
        raise PreconditionError(
            f"not an action: {action.axiom_report.detail}"
        )
    if not action.invariance_report.passed:
        raise PreconditionError(
            f"carrier is not invariant: {action.invariance_report.detail}"
        )


def common_fixed_point_problem(action: AffineAction) -> LPProblem:
    """Feasibility problem for {x in C : T_s x = x for all s}.

    Simplex carriers use the coordinates directly; hull carriers use
    barycentric weights over the hull points.
    """
    d = carrier_dim(action.carrier)
    rows: list[Vector] = []
    rhs: list[Fraction] = []
    if isinstance(action.carrier, Simplex):
        for m in action.maps:
            for i in range(d):
                rows.append(
                    tuple(
                        m.matrix[i][j] - (Fraction(1) if i == j else Fraction(0))
                        for j in range(d)
                    )
                )
                rhs.append(-m.offset[i])
        rows.append((Fraction(1),) * d)
        rhs.append(Fraction(1))
        return LPProblem(matrix=tuple(rows), rhs=tuple(rhs), nonneg=(True,) * d)
    vertices = action.carrier.points
    k = len(vertices)
    for m in action.maps:
        # (A_s - I) V lambda = -b_s
        for i in range(d):
            rows.append(
                tuple(
                    sum(
                        (m.matrix[i][j] * v[j] for j in range(d)), Fraction(0)
                    )
                    - v[i]
                    for v in vertices
                )
            )
            rhs.append(-m.offset[i])
    rows.append((Fraction(1),) * k)
    rhs.append(Fraction(1))
    return LPProblem(matrix=tuple(rows), rhs=tuple(rhs), nonneg=(True,) * k)


def common_fixed_point_solution(
    action: AffineAction,
) -> tuple[LPSolution, Optional[Vector]]:
    """LP outcome plus the reconstructed carrier point when feasible."""
    _require_verified(action)
    solution = solve_lp_feasibility(common_fixed_point_problem(action))
    if not solution.feasible:
        return solution, None
    assert solution.witness is not None
    if isinstance(action.carrier, Simplex):
        return solution, solution.witness
    vertices = action.carrier.points
    d = carrier_dim(action.carrier)
    point = tuple(
        sum((lam * v[i] for lam, v in zip(solution.witness, vertices)), Fraction(0))
        for i in range(d)
    )
    return solution, point


def find_common_fixed_point(action: AffineAction) -> Optional[Vector]:
    """A common fixed point in the carrier, or None with exact infeasibility.

    Positive-dimensional fixed sets yield the deterministic Bland-rule
    simplex vertex.
    """
    _, point = common_fixed_point_solution(action)
    return point


def canonical_means_action(shg: Semihypergroup) -> AffineAction:
    """Translation-dual action on the simplex of means.

    T_s is the transpose of the left-translation matrix of s acting on the
    standard simplex; its common fixed points are exactly the left invariant
    means.  The axiom and invariance checks hold by construction but are run
    anyway and asserted.
    """
    require_associative(shg)
    n = shg.n
    maps = []
    for s in range(n):
        rows = [shg.table.entries[s][y].weights for y in range(n)]
        transpose = tuple(tuple(rows[y][z] for y in range(n)) for z in range(n))
        maps.append(AffineMap(matrix=transpose, offset=(Fraction(0),) * n))
    action = AffineAction(structure=shg, carrier=Simplex(n), maps=tuple(maps))
    assert action.axiom_report.passed and action.invariance_report.passed
    return action


def induced_function(
    action: AffineAction, y: Sequence[Fraction], f: AffineFunctional
) -> PointFunction:
    """The function s -> f(T_s(y)) on the structure's points.

    On a finite space the result is automatically almost periodic.
    """
    point = tuple(as_fraction(v) for v in y)
    if not carrier_contains(action.carrier, point):
        raise CarrierError("base point is not in the carrier")
    return PointFunction(
        action.structure.space,
        tuple(f.apply(m.apply(point)) for m in action.maps),
    )


# ---------------------------------------------------------------------------
# the dual-space action on functionals annihilating constants


@dataclass(frozen=True)
class DualAction:
    """Affine action u -> M_s^T (u + v0) - v0 on the trace-zero dual subspace.

    v0 is evaluation at a designated base point, so v0(1) = 1, and every map
    preserves the subspace {u : sum(u) = 0} because each M_s is
    row-stochastic.  Fixed points w recover left invariant means as w + v0.
    """

    structure: Semihypergroup
    base_point: int

    def __post_init__(self) -> None:
        require_associative(self.structure)
        if not 0 <= self.base_point < self.structure.n:
            raise ValueError("base point index out of range")

    @property
    def v0(self) -> Vector:
        n = self.structure.n
        return tuple(
            Fraction(1 if i == self.base_point else 0) for i in range(n)
        )

    @cached_property
    def _transposes(self) -> tuple[Matrix, ...]:
        n = self.structure.n
        out = []
        for s in range(n):
            rows = [self.structure.table.entries[s][y].weights for y in range(n)]
            out.append(tuple(tuple(rows[y][z] for y in range(n)) for z in range(n)))
        return tuple(out)

    def map(self, s: PointRef, u: Sequence[Fraction]) -> Vector:
        vec = tuple(as_fraction(v) for v in u)
        if len(vec) != self.structure.n:
            raise ValueError("functional has the wrong dimension")
        if sum(vec, Fraction(0)) != 0:
            raise ValueError("functional must annihilate constants (sum to 0)")
        si = self.structure.space.index(s)
        v0 = self.v0
        shifted = tuple(a + b for a, b in zip(vec, v0))
        image = _mat_vec(self._transposes[si], shifted)
        return tuple(a - b for a, b in zip(image, v0))

    @cached_property
    def action_report(self) -> CheckReport:
        """Verify T_s(T_t u) = sum_z (p_s*p_t)(z) T_z(u) on the subspace.

        Both sides are affine in u.  Writing D for the difference of their
        linear parts, agreement on the trace-zero subspace means D has equal
        columns, and agreement of the offsets means D annihilates v0; both
        are checked as exact matrix identities per pair (s, t).
        """
        shg = self.structure
        n = shg.n
        mats = self._transposes
        for s, t in product(range(n), repeat=2):
            weights = shg.table.entries[s][t].weights
            diff = _mat_sub(_mat_mul(mats[s], mats[t]), _mat_combination(weights, mats))
            columns_equal = all(
                diff[i][j] == diff[i][0] for i in range(n) for j in range(1, n)
            )
            base_column_zero = all(diff[i][self.base_point] == 0 for i in range(n))
            if not (columns_equal and base_column_zero):
                return CheckReport(
                    check="dual-action-axiom",
                    passed=False,
                    detail=f"fails at pair ({shg.space.label(s)}, "
                    f"{shg.space.label(t)})",
                    witness={"pair": (shg.space.label(s), shg.space.label(t))},
                )
        return CheckReport(check="dual-action-axiom", passed=True)

    def orbit_bound(self, u0: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
        """(max_s ||T_s u0||_1, ||u0 + v0||_1 + ||v0||_1); the first never
        exceeds the second because each M_s^T contracts the l1 norm."""
        vec = tuple(as_fraction(v) for v in u0)
        sup = max(
            sum((abs(v) for v in self.map(s, vec)), Fraction(0))
            for s in range(self.structure.n)
        )
        v0 = self.v0
        bound = sum(
            (abs(a + b) for a, b in zip(vec, v0)), Fraction(0)
        ) + sum((abs(b) for b in v0), Fraction(0))
        return sup, bound


def dual_action(shg: Semihypergroup, base_point: PointRef = 0) -> DualAction:
    """Build and verify the dual-space action for a designated base point."""
    action = DualAction(structure=shg, base_point=shg.space.index(base_point))
    assert action.action_report.passed
    return action


def mean_via_dual_action(
    shg: Semihypergroup, base_point: PointRef = 0
) -> Optional[Mean]:
    """Left invariant mean recovered from the dual-space fixed-point route.

    Solves the exact linear system {T_s w = w for all s} on trace-zero
    coordinates by Gaussian elimination, translates the solution set by v0,
    and intersects it with the probability simplex by LP.  The route shares
    only the generic LP kernel with the direct mean search, so the two act
    as independent oracles for each other.
    """
    action = dual_action(shg, base_point)
    n = shg.n
    if n == 1:
        return Mean(shg.space, (Fraction(1),))
    v0 = action.v0

    # trace-zero basis u_k = e_k - e_{n-1}; w = sum alpha_k u_k
    basis: list[Vector] = []
    for k in range(n - 1):
        vec = [Fraction(0)] * n
        vec[k] = Fraction(1)
        vec[n - 1] = Fraction(-1)
        basis.append(tuple(vec))

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    zero = tuple(Fraction(0) for _ in range(n))
    for s in range(n):
        image_zero = action.map(s, zero)  # = M_s^T v0 - v0
        image_basis = [
            tuple(a - b for a, b in zip(action.map(s, u), image_zero))
            for u in basis
        ]  # linear parts
        for i in range(n):
            rows.append([image_basis[k][i] - basis[k][i] for k in range(n - 1)])
            rhs.append(-image_zero[i])
    solved = solve_linear_system(rows, rhs)
    if solved is None:
        return None
    alpha, null_basis = solved

    def expand(coeffs: Sequence[Fraction]) -> list[Fraction]:
        w = [Fraction(0)] * n
        for c, u in zip(coeffs, basis):
            if c != 0:
                for i in range(n):
                    w[i] += c * u[i]
        return w

    base_mean = tuple(a + b for a, b in zip(expand(alpha), v0))
    directions = [tuple(expand(nb)) for nb in null_basis]

    if not directions:
        if all(v >= 0 for v in base_mean):
            return Mean(shg.space, base_mean)
        return None

    # feasibility of base + sum beta_l * dir_l >= 0 with beta free
    k = len(directions)
    rows2: list[Vector] = []
    rhs2: list[Fraction] = []
    for i in range(n):
        rows2.append(
            tuple(directions[l][i] for l in range(k))
            + tuple(
                Fraction(-1) if j == i else Fraction(0) for j in range(n)
            )
        )
        rhs2.append(-base_mean[i])
    problem = LPProblem(
        matrix=tuple(rows2),
        rhs=tuple(rhs2),
        nonneg=(False,) * k + (True,) * n,
    )
    solution = solve_lp_feasibility(problem)
    if not solution.feasible:
        return None
    assert solution.witness is not None
    beta = solution.witness[:k]
    result = list(base_mean)
    for l in range(k):
        if beta[l] != 0:
            for i in range(n):
                result[i] += beta[l] * directions[l][i]
    return Mean(shg.space, tuple(result))


# ---------------------------------------------------------------------------
# heuristic fixed-point iteration (floating point)


PointMap = Union[AffineMap, Callable[[tuple[float, ...]], Sequence[float]]]


@dataclass(frozen=True)
class IterationResult:
    """Outcome of the averaged iteration; `residual` is the worst l-infinity
    displacement of the final point under any single map."""

    converged: bool
    point: tuple[float, ...]
    residual: float
    iterations: int


def iterate_fixed_point(
    maps: Sequence[PointMap],
    carrier: Carrier,
    weights: Optional[Mean] = None,
    tol: float = 1e-9,
    max_iter: int = 10000,
) -> IterationResult:
    """Averaged floating-point iteration x <- x/2 + (sum_s w_s T_s x)/2.

    Heuristic companion to the exact solver: there is no convergence
    guarantee for general non-expansive families, and a divergence report
    (converged=False with the final residual) is not a proof that the family
    has no common fixed point.  Maps are spot-checked numerically on the
    carrier vertices rather than verified.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if max_iter < 1:
        raise ValueError("need at least one iteration")
    applied: list[Callable[[tuple[float, ...]], tuple[float, ...]]] = []
    for m in maps:
        if isinstance(m, AffineMap):
            applied.append(m.apply_float)
        else:
            fn = m
            applied.append(lambda x, fn=fn: tuple(float(v) for v in fn(x)))
    if weights is None:
        w = [1.0 / len(applied)] * len(applied)
    else:
        if len(weights.weights) != len(applied):
            raise ValueError("weights must match the number of maps")
        w = [float(v) for v in weights.weights]

    _spot_check_maps(applied, carrier)

    x = tuple(float(v) for v in carrier_centroid(carrier))
    d = len(x)
    residual = _residual(applied, x)
    iterations = 0
    while residual > tol and iterations < max_iter:
        averaged = [0.0] * d
        for wi, fn in zip(w, applied):
            img = fn(x)
            for i in range(d):
                averaged[i] += wi * img[i]
        x = tuple(0.5 * x[i] + 0.5 * averaged[i] for i in range(d))
        iterations += 1
        residual = _residual(applied, x)
    return IterationResult(
        converged=residual <= tol, point=x, residual=residual, iterations=iterations
    )


def _residual(
    applied: Sequence[Callable[[tuple[float, ...]], tuple[float, ...]]],
    x: tuple[float, ...],
) -> float:
    worst = 0.0
    for fn in applied:
        img = fn(x)
        worst = max(worst, max((abs(a - b) for a, b in zip(img, x)), default=0.0))
    return worst


def _spot_check_maps(
    applied: Sequence[Callable[[tuple[float, ...]], tuple[float, ...]]],
    carrier: Carrier,
    slack: float = 1e-9,
) -> None:
    vertices = [tuple(float(v) for v in p) for p in carrier_vertices(carrier)]
    if isinstance(carrier, Simplex):
        for fn in applied:
            for p in vertices:
                img = fn(p)
                if min(img) < -slack or abs(sum(img) - 1.0) > slack:
                    raise CarrierError("a map leaves the simplex (numeric spot check)")
        return
    lo = [min(p[i] for p in vertices) - slack for i in range(len(vertices[0]))]
    hi = [max(p[i] for p in vertices) + slack for i in range(len(vertices[0]))]
    for fn in applied:
        for p in vertices:
            img = fn(p)
            if any(v < l or v > h for v, l, h in zip(img, lo, hi)):
                raise CarrierError(
                    "a map leaves the hull bounding box (numeric spot check)"
                )
