"""Bounded-integer linear feasibility via interval propagation and branching.

Programs are pure feasibility problems: integer variables with finite bounds
and linear constraints of the form ``sum(a_j * v_j) <= b`` or ``== b``. The
solver is complete within the variable domains; there is no objective.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Optional

from .errors import BudgetExceeded

VarName = Hashable
DEFAULT_BUDGET = 2_000_000

LE = "<="
EQ = "=="


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[tuple[VarName, int], ...]
    op: str  # LE or EQ
    rhs: int

    def __post_init__(self) -> None:
        if self.op not in (LE, EQ):
            raise ValueError(f"unknown relation {self.op!r}")


@dataclass(frozen=True)
class FeasibilityProgram:
    variables: tuple[tuple[VarName, int, int], ...]  # (name, lower, upper)
    constraints: tuple[Constraint, ...]

    def __post_init__(self) -> None:
        names = set()
        for name, lo, hi in self.variables:
            if name in names:
                raise ValueError(f"duplicate variable {name!r}")
            names.add(name)
        for con in self.constraints:
            for name, coef in con.coeffs:
                if name not in names:
                    raise ValueError(f"constraint uses unknown variable {name!r}")
                if coef != int(coef):
                    raise ValueError("coefficients must be integral")

    def check(self, assignment: dict[VarName, int]) -> bool:
        """Evaluate every bound and constraint on a full assignment."""
        for name, lo, hi in self.variables:
            if name not in assignment or not (lo <= assignment[name] <= hi):
                return False
        for con in self.constraints:
            total = sum(coef * assignment[name] for name, coef in con.coeffs)
            if con.op == LE and total > con.rhs:
                return False
            if con.op == EQ and total != con.rhs:
                return False
        return True


def _propagate(
    bounds: dict[VarName, tuple[int, int]],
    constraints: tuple[Constraint, ...],
) -> bool:
    """Tighten bounds to interval consistency in place; False if infeasible."""
    # each EQ is handled as a pair of <= rows
    rows: list[tuple[tuple[tuple[VarName, int], ...], int]] = []
    for con in constraints:
        rows.append((con.coeffs, con.rhs))
        if con.op == EQ:
            rows.append((tuple((n, -c) for n, c in con.coeffs), -con.rhs))
    changed = True
    while changed:
        changed = False
        for coeffs, rhs in rows:
            lo_sum = 0
            for name, coef in coeffs:
                lo, hi = bounds[name]
                lo_sum += coef * lo if coef > 0 else coef * hi
            if lo_sum > rhs:
                return False
            for name, coef in coeffs:
                lo, hi = bounds[name]
                others = lo_sum - (coef * lo if coef > 0 else coef * hi)
                slack = rhs - others
                if coef > 0:
                    new_hi = slack // coef  # floor(slack / coef)
                    if new_hi < hi:
                        if new_hi < lo:
                            return False
                        bounds[name] = (lo, new_hi)
                        changed = True
                else:
                    new_lo = -(slack // -coef)  # ceil(slack / coef), coef < 0
                    if new_lo > lo:
                        if new_lo > hi:
                            return False
                        bounds[name] = (new_lo, hi)
                        changed = True
    return True


def propagate_bounds(program: FeasibilityProgram) -> Optional[FeasibilityProgram]:
    """Interval (bounds) consistency; returns the tightened program or None if infeasible."""
    bounds = {name: (lo, hi) for name, lo, hi in program.variables}
    for name, (lo, hi) in bounds.items():
        if lo > hi:
            return None
    if not _propagate(bounds, program.constraints):
        return None
    variables = tuple((name, bounds[name][0], bounds[name][1]) for name, _, _ in program.variables)
    return FeasibilityProgram(variables, program.constraints)


def solve_feasibility(
    program: FeasibilityProgram, budget: int = DEFAULT_BUDGET
) -> Optional[dict[VarName, int]]:
    """Find a satisfying integral assignment, or None.

    Depth-first search branching on the smallest current domain, values
    ascending, with interval propagation at every node. Complete within the
    domain bounds; raises BudgetExceeded past the node budget.
    """
    bounds = {name: (lo, hi) for name, lo, hi in program.variables}
    for lo, hi in bounds.values():
        if lo > hi:
            return None
    nodes = [0]

    def dfs(bounds: dict[VarName, tuple[int, int]]) -> Optional[dict[VarName, int]]:
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"feasibility search exceeded {budget} nodes")
        if not _propagate(bounds, program.constraints):
            return None
        free = [(hi - lo, name) for name, (lo, hi) in bounds.items() if lo < hi]
        if not free:
            assignment = {name: lo for name, (lo, _) in bounds.items()}
            return assignment if program.check(assignment) else None
        _, pick = min(free, key=lambda t: (t[0], str(t[1])))
        lo, hi = bounds[pick]
        for value in range(lo, hi + 1):
            child = dict(bounds)
            child[pick] = (value, value)
            result = dfs(child)
            if result is not None:
                return result
        return None

    return dfs(dict(bounds))
