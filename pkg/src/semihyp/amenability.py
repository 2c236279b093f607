"""Invariant means on the (finite) almost periodic function space.

A mean is a probability vector acting on functions by weighted sum.  A left
invariant mean is one that every left translation fixes; on a finite space
its existence is an exact linear-programming feasibility question, which
gives a two-sided oracle: a witness mean when one exists, a Farkas
certificate when none does.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .algebra import (
    CheckReport,
    Measure,
    PointSpace,
    Semihypergroup,
    as_fraction,
    require_associative,
)
from .functions import PointFunction, indicator, left_translate, right_translate
from .linprog import LPProblem, LPSolution, solve_lp_feasibility


@dataclass(frozen=True)
class Mean:
    """Probability vector acting on functions as m(f) = sum_y m(y) f(y)."""

    space: PointSpace
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(as_fraction(w) for w in self.weights))
        if len(self.weights) != self.space.n:
            raise ValueError("mean has the wrong number of weights")
        if any(w < 0 for w in self.weights):
            raise ValueError("mean weights must be nonnegative")
        if sum(self.weights, Fraction(0)) != 1:
            raise ValueError("mean weights must sum to 1")

    def __call__(self, f: PointFunction) -> Fraction:
        return sum((w * v for w, v in zip(self.weights, f.values)), Fraction(0))

    def as_measure(self) -> Measure:
        return Measure(self.space, self.weights)


def uniform_mean(space: PointSpace) -> Mean:
    return Mean(space, (Fraction(1, space.n),) * space.n)


def left_invariance_problem(shg: Semihypergroup) -> LPProblem:
    """LP whose feasible points are exactly the left invariant means.

    Variables are the mean weights m_y >= 0; rows say that for every point s
    the pushforward of m through the left-translation matrix M_s equals m,
    plus the normalization sum(m) = 1.
    """
    n = shg.n
    rows: list[tuple[Fraction, ...]] = []
    rhs: list[Fraction] = []
    for s in range(n):
        entries = shg.table.entries[s]
        for z in range(n):
            row = tuple(
                entries[y].weights[z] - (Fraction(1) if y == z else Fraction(0))
                for y in range(n)
            )
            rows.append(row)
            rhs.append(Fraction(0))
    rows.append((Fraction(1),) * n)
    rhs.append(Fraction(1))
    return LPProblem(matrix=tuple(rows), rhs=tuple(rhs), nonneg=(True,) * n)


def right_invariance_problem(shg: Semihypergroup) -> LPProblem:
    """Same construction with right-translation matrices."""
    n = shg.n
    rows: list[tuple[Fraction, ...]] = []
    rhs: list[Fraction] = []
    for t in range(n):
        for z in range(n):
            row = tuple(
                shg.table.entries[x][t].weights[z]
                - (Fraction(1) if x == z else Fraction(0))
                for x in range(n)
            )
            rows.append(row)
            rhs.append(Fraction(0))
    rows.append((Fraction(1),) * n)
    rhs.append(Fraction(1))
    return LPProblem(matrix=tuple(rows), rhs=tuple(rhs), nonneg=(True,) * n)


def left_invariant_mean_solution(shg: Semihypergroup) -> LPSolution:
    """Raw LP outcome, exposing the witness or the infeasibility certificate."""
    require_associative(shg)
    return solve_lp_feasibility(left_invariance_problem(shg))


def find_left_invariant_mean(shg: Semihypergroup) -> Optional[Mean]:
    """A left invariant mean, or None when provably none exists.

    When the solution set is a positive-dimensional polytope the returned
    mean is the deterministic vertex produced by the Bland-rule simplex run,
    which this toolkit documents as canonical.
    """
    solution = left_invariant_mean_solution(shg)
    if not solution.feasible:
        return None
    assert solution.witness is not None
    return Mean(shg.space, solution.witness)


def find_right_invariant_mean(shg: Semihypergroup) -> Optional[Mean]:
    require_associative(shg)
    solution = solve_lp_feasibility(right_invariance_problem(shg))
    if not solution.feasible:
        return None
    assert solution.witness is not None
    return Mean(shg.space, solution.witness)


def is_left_amenable(shg: Semihypergroup) -> bool:
    """Whether the function space admits a left invariant mean.

    On a finite space every function is almost periodic, so this single
    predicate covers left amenability of the whole almost periodic algebra.
    """
    return find_left_invariant_mean(shg) is not None


MeanLike = Union[Mean, Measure, Sequence[Fraction]]


def _mean_weights(m: MeanLike, space: PointSpace) -> tuple[Fraction, ...]:
    if isinstance(m, (Mean, Measure)):
        if m.space != space:
            raise ValueError("mean lives on a different point space")
        return m.weights
    return tuple(as_fraction(v) for v in m)


def verify_left_invariant_mean(m: MeanLike, shg: Semihypergroup) -> CheckReport:
    """Exact check of m(L_s f) = m(f) on every point s and indicator f.

    Runs through the function-space translation path rather than the LP
    matrices, so it is an independent validation of any claimed mean.
    """
    weights = _mean_weights(m, shg.space)
    if any(w < 0 for w in weights) or sum(weights, Fraction(0)) != 1:
        return CheckReport(
            check="left-invariant-mean",
            passed=False,
            detail="candidate is not a mean (needs nonnegative weights summing to 1)",
            witness={"weights": weights},
        )

    def evaluate(f: PointFunction) -> Fraction:
        return sum((w * v for w, v in zip(weights, f.values)), Fraction(0))

    for s in range(shg.n):
        for p in range(shg.n):
            f = indicator(shg.space, p)
            lhs = evaluate(left_translate(s, f, shg))
            rhs = evaluate(f)
            if lhs != rhs:
                return CheckReport(
                    check="left-invariant-mean",
                    passed=False,
                    detail=(
                        f"m(L_{shg.space.label(s)} 1_{shg.space.label(p)}) = {lhs} "
                        f"but m(1_{shg.space.label(p)}) = {rhs}"
                    ),
                    witness={
                        "point": shg.space.label(s),
                        "indicator": shg.space.label(p),
                        "lhs": lhs,
                        "rhs": rhs,
                    },
                )
    return CheckReport(check="left-invariant-mean", passed=True)


def verify_right_invariant_mean(m: MeanLike, shg: Semihypergroup) -> CheckReport:
    weights = _mean_weights(m, shg.space)
    if any(w < 0 for w in weights) or sum(weights, Fraction(0)) != 1:
        return CheckReport(
            check="right-invariant-mean",
            passed=False,
            detail="candidate is not a mean (needs nonnegative weights summing to 1)",
            witness={"weights": weights},
        )

    def evaluate(f: PointFunction) -> Fraction:
        return sum((w * v for w, v in zip(weights, f.values)), Fraction(0))

    for t in range(shg.n):
        for p in range(shg.n):
            f = indicator(shg.space, p)
            if evaluate(right_translate(t, f, shg)) != evaluate(f):
                return CheckReport(
                    check="right-invariant-mean",
                    passed=False,
                    detail=f"fails at point {shg.space.label(t)}",
                    witness={"point": shg.space.label(t), "indicator": shg.space.label(p)},
                )
    return CheckReport(check="right-invariant-mean", passed=True)
