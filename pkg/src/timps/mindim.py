"""Minimal bond dimension search.

For a chain of length n and candidate bond dimension d, the trace
equations over all necklace classes form a polynomial system in the 2d^2
matrix entries.  The system has a common complex zero iff the reduced
Groebner basis of the generated ideal differs from [1] (weak
Nullstellensatz; Q(i) coefficients suffice because C is an algebraically
closed extension).  Iterating d upward, the first feasible d is the
minimal bond dimension.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .polynomials import (
    DEFAULT_BUDGET,
    GREVLEX,
    Budget,
    BudgetExceededError,
    MonomialOrder,
    MultiPoly,
    buchberger,
    contains_one,
)
from .scalars import GaussianRational
from .states import TIState, enumerate_necklaces, polya_count

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class MinDimOptions:
    """Knobs for the search; defaults mirror the CLI defaults."""

    order: MonomialOrder = GREVLEX
    budget_limit: int = DEFAULT_BUDGET
    gauge_fix: bool = False
    keep_basis: bool = False
    necklace_cap: int = 24


@dataclass(frozen=True)
class SystemSpec:
    """The polynomial system for one (state, d) instance: one generator
    per necklace class, in the matrix-entry variables."""

    state: TIState
    d: int
    gauge_fix: bool
    var_names: Tuple[str, ...]
    polys: Tuple[MultiPoly, ...]


def build_system(
    state: TIState,
    d: int,
    gauge_fix: bool = False,
    budget: Optional[Budget] = None,
    necklace_cap: int = 24,
) -> SystemSpec:
    """Build the trace system Tr(A_{i_1}..A_{i_n}) - c_I = 0, one
    polynomial per necklace class of length state.n.

    Variables are the entries a0_ij, a1_ij of the two candidate matrices.
    With gauge_fix, the entries a1_ij with i > j are dropped (A1 restricted
    to upper-triangular form, sound under simultaneous similarity).
    Every polynomial has total degree <= n.
    """
    if d < 1:
        raise ValueError("bond dimension must be at least 1")
    n = state.n
    names: List[str] = []
    index: dict = {}
    for b in (0, 1):
        for i in range(d):
            for j in range(d):
                if gauge_fix and b == 1 and i > j:
                    continue
                index[(b, i, j)] = len(names)
                names.append(f"a{b}_{i + 1}{j + 1}")
    arity = len(names)
    zero_p = MultiPoly.zero(arity)

    def symbolic(b: int) -> list:
        M = [[zero_p] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                slot = index.get((b, i, j))
                if slot is not None:
                    M[i][j] = MultiPoly.variable(arity, slot)
        return M

    from . import mps as _mps

    tables = [
        _mps._generic_powers(symbolic(0), n, zero_p),
        _mps._generic_powers(symbolic(1), n, zero_p),
    ]
    polys: List[MultiPoly] = []
    for neck in enumerate_necklaces(n, cap=necklace_cap):
        prod = None
        for bit, count in _mps._runs(neck.bits):
            block = tables[bit][count]
            prod = block if prod is None else _mps._mat_mul(prod, block, zero_p)
        poly = _mps._trace(prod, zero_p)
        c = state.coeffs.get(neck)
        if c is not None:
            poly = poly - MultiPoly.constant(arity, c)
        if budget is not None:
            budget.spend(len(poly.terms))
        polys.append(poly)
    assert len(polys) == polya_count(n)
    return SystemSpec(
        state=state,
        d=d,
        gauge_fix=gauge_fix,
        var_names=tuple(names),
        polys=tuple(polys),
    )


@dataclass(frozen=True)
class PerDResult:
    """Verdict for one candidate d, with timing and basis statistics."""

    d: int
    verdict: str
    seconds: float
    basis_size: Optional[int] = None
    basis: Optional[Tuple[str, ...]] = None

    def as_dict(self) -> dict:
        out = {
            "d": self.d,
            "verdict": self.verdict,
            "seconds": round(self.seconds, 6),
            "basis_size": self.basis_size,
        }
        if self.basis is not None:
            out["basis"] = list(self.basis)
        return out


@dataclass(frozen=True)
class MinDimReport:
    """Outcome of the upward iteration: per-d verdicts and, when the
    iteration reached a feasible d, the resolved minimal bond dimension."""

    per_d: Tuple[PerDResult, ...]
    resolved: Optional[int]
    bound_used: int

    def as_dict(self) -> dict:
        return {
            "resolved": self.resolved,
            "bound_used": self.bound_used,
            "per_d": [r.as_dict() for r in self.per_d],
        }

    def __str__(self):
        lines = [
            f"d={r.d}: {r.verdict} ({r.seconds:.2f}s"
            + (f", basis size {r.basis_size}" if r.basis_size is not None else "")
            + ")"
            for r in self.per_d
        ]
        head = (
            f"minimal bond dimension: {self.resolved}"
            if self.resolved is not None
            else f"unresolved up to d={self.bound_used}"
        )
        return "\n".join([head] + lines)


def _attempt(state: TIState, d: int, options: MinDimOptions) -> PerDResult:
    start = time.perf_counter()
    budget = Budget(options.budget_limit)
    try:
        system = build_system(
            state, d, options.gauge_fix, budget, options.necklace_cap
        )
        basis = buchberger(system.polys, options.order, budget)
    except BudgetExceededError:
        return PerDResult(
            d=d, verdict=BUDGET_EXCEEDED, seconds=time.perf_counter() - start
        )
    verdict = INFEASIBLE if contains_one(basis) else FEASIBLE
    dump = None
    if options.keep_basis:
        dump = tuple(p.to_str(system.var_names) for p in basis)
    return PerDResult(
        d=d,
        verdict=verdict,
        seconds=time.perf_counter() - start,
        basis_size=len(basis),
        basis=dump,
    )


def feasible_at(state: TIState, d: int, options: Optional[MinDimOptions] = None) -> str:
    """Verdict for one candidate d: "feasible" iff the trace system has a
    common complex zero, "infeasible" iff its reduced Groebner basis is
    [1], "budget-exceeded" when the engine hit its limit."""
    options = options or MinDimOptions()
    return _attempt(state, d, options).verdict


def min_bond_dimension(
    state: TIState,
    d_max: int,
    options: Optional[MinDimOptions] = None,
) -> MinDimReport:
    """Iterate d = 1..d_max recording verdicts, stopping at the first
    feasible d (which is then the minimal bond dimension) or at the first
    budget-exceeded verdict (after which minimality could not be
    certified)."""
    if d_max < 1:
        raise ValueError("d_max must be at least 1")
    options = options or MinDimOptions()
    results: List[PerDResult] = []
    resolved: Optional[int] = None
    for d in range(1, d_max + 1):
        result = _attempt(state, d, options)
        results.append(result)
        if result.verdict == FEASIBLE:
            resolved = d
            break
        if result.verdict == BUDGET_EXCEEDED:
            break
    return MinDimReport(per_d=tuple(results), resolved=resolved, bound_used=d_max)
