"""Explicit TI MPS constructions.

Three builders live here:

* `build_w` assembles the compact weight-1-state representation of bond
  dimension floor(n/2)+1, solving exactly for the free entry x(n) that
  kills the all-zero trace, and `normalize_w` rescales it to the
  unit-norm state.
* `check_unit_rep` decides, exactly, whether a given matrix A0 together
  with a scaled matrix unit A1 = lambda*E_{jk} represents a given state:
  the support must avoid cyclically adjacent 1s, and one product equation
  per sparse necklace (plus the all-zero trace) must hold.
* `canonicalize` rebuilds any scaled-matrix-unit representation as an
  equivalent n x n pair determined only by the gap products gamma_q and an
  n-th root omega of the all-zero trace.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .polynomials import MultiPoly
from .scalars import GaussianRational, as_scalar, rationalize
from .states import (
    Necklace,
    TIState,
    canonical_rotation,
    enumerate_necklaces,
    is_unit_sparse,
)
from . import mps
from .mps import EXACT, FLOATING, SYMBOLIC, MPSRep, mps_rep

ROOT_TOLERANCE = 1e-10


# -- the compact weight-1 construction ----------------------------------------

@dataclass(frozen=True)
class WConstruction:
    """The floor(n/2)+1 dimensional representation of the unnormalized
    weight-1 state, together with its symbolic form.

    `const` is the common value of the weight-1 coefficients, computed as
    the (d,1) entry of A0^(n-1); it equals 2^(n - floor(n/2) - 2) for
    n >= 3 (and 1 at n = 2, where the closed form does not apply).
    """

    n: int
    d: int
    x: complex
    rep: MPSRep
    symbolic_rep: MPSRep
    const: float
    const_exact: GaussianRational
    trace_poly: MultiPoly


def _w_symbolic_matrices(d: int) -> Tuple[list, list]:
    x = MultiPoly.variable(1, 0)
    one = MultiPoly.one(1)
    zero = MultiPoly.zero(1)
    A0 = [[zero] * d for _ in range(d)]
    for k in range(d - 1):
        A0[0][k] = one          # first row of ones
        A0[k + 1][k] = one      # subdiagonal
    A0[0][d - 1] = x            # free entry
    A1 = [[zero] * d for _ in range(d)]
    A1[0][d - 1] = one
    return A0, A1


def build_w(n: int) -> WConstruction:
    """Assemble the bond-dimension floor(n/2)+1 rep of the unnormalized
    weight-1 state of order n.

    Solves Tr(A0^n) = 0 for x(n) exactly-then-numerically, instantiates
    the floating rep, and computes const = (A0^(n-1))_{d,1} from the
    symbolic matrix (the entry is x-free).
    """
    if n < 2:
        raise ValueError("build_w requires n >= 2")
    d = n // 2 + 1
    A0s, A1s = _w_symbolic_matrices(d)
    symbolic_rep = mps_rep(A0s, A1s, SYMBOLIC)

    trace_poly = mps.trace_polynomial(symbolic_rep, "0" * n)
    x = solve_trace_root(trace_poly)

    zero_p = MultiPoly.zero(1)
    const_poly = mps._mat_pow(A0s, n - 1, zero_p, MultiPoly.one(1))[d - 1][0]
    if not const_poly.is_constant:
        raise AssertionError("(A0^(n-1))_{d,1} should be x-free")
    const_exact = const_poly.constant_value()
    if n >= 3 and const_exact != 2 ** (n - d - 1):
        raise AssertionError(
            f"weight-1 constant {const_exact} != 2^{n - d - 1} at n={n}"
        )

    A0f = [[complex(1) if (r == 0 and c < d - 1) or (r == c + 1) else 0j
            for c in range(d)] for r in range(d)]
    A0f[0][d - 1] = x
    A1f = [[0j] * d for _ in range(d)]
    A1f[0][d - 1] = 1 + 0j
    rep = mps_rep(A0f, A1f, FLOATING)

    residual = abs(trace_poly.evaluate([x]))
    if residual > ROOT_TOLERANCE:
        raise AssertionError(f"root residual {residual:.3e} above tolerance")

    return WConstruction(
        n=n,
        d=d,
        x=x,
        rep=rep,
        symbolic_rep=symbolic_rep,
        const=float(const_exact.re),
        const_exact=const_exact,
        trace_poly=trace_poly,
    )


def normalize_w(w: WConstruction) -> MPSRep:
    """Rescale the construction so every weight-1 coefficient equals
    1/sqrt(n) and everything else stays zero.

    Both matrices are multiplied by (c*sqrt(n))^(-1/n) with c the computed
    weight-1 constant.  The result is checked at 1e-9 before returning.
    """
    n = w.n
    factor = (w.const * math.sqrt(n)) ** (-1.0 / n)
    rep = mps.scale_rep(w.rep, complex(factor))
    target = 1.0 / math.sqrt(n)
    values = mps.evaluate_classes(rep, n)
    for neck, value in values.items():
        expected = target if neck.weight == 1 else 0.0
        if abs(value - expected) > 1e-9:
            raise AssertionError(
                f"normalized rep misses class {neck.bits}: {value} != {expected}"
            )
    return rep


# -- scaled-matrix-unit feasibility checker ------------------------------------

@dataclass(frozen=True)
class UnitRepSpec:
    """A candidate scaled-matrix-unit representation: A1 = lam * E_{jk}
    (1-based indices, j != k) together with an exact matrix A0."""

    lam: GaussianRational
    j: int
    k: int
    A0: Tuple[tuple, ...]

    def __post_init__(self):
        lam = as_scalar(self.lam)
        if not lam:
            raise ValueError("unit scale lambda must be nonzero")
        object.__setattr__(self, "lam", lam)
        A0 = tuple(tuple(as_scalar(e) for e in row) for row in self.A0)
        d = len(A0)
        if any(len(row) != d for row in A0):
            raise ValueError("A0 must be square")
        if not (1 <= self.j <= d and 1 <= self.k <= d):
            raise ValueError("unit indices out of range")
        if self.j == self.k:
            raise ValueError("matrix unit must be off-diagonal (j != k)")
        object.__setattr__(self, "A0", A0)

    @property
    def d(self) -> int:
        return len(self.A0)

    def a1_matrix(self) -> list:
        zero = GaussianRational(0)
        A1 = [[zero] * self.d for _ in range(self.d)]
        A1[self.j - 1][self.k - 1] = self.lam
        return A1

    def to_rep(self) -> MPSRep:
        return mps_rep([list(r) for r in self.A0], self.a1_matrix(), EXACT)


@dataclass(frozen=True)
class UnitEquationViolation:
    necklace: Necklace
    lhs: GaussianRational
    rhs: GaussianRational

    def __str__(self):
        return f"{self.necklace.bits}: got {self.lhs}, expected {self.rhs}"


@dataclass(frozen=True)
class UnitRepReport:
    """Every violated equation of the two feasibility conditions."""

    passed: bool
    condition1_violations: Tuple[Necklace, ...]
    condition2_violations: Tuple[UnitEquationViolation, ...]
    checked_equations: int

    def __str__(self):
        if self.passed:
            return f"PASS: {self.checked_equations} equations hold"
        lines = [
            f"FAIL: {len(self.condition1_violations)} support violations, "
            f"{len(self.condition2_violations)} equation violations "
            f"({self.checked_equations} equations checked)"
        ]
        for neck in self.condition1_violations:
            lines.append(f"  adjacent 1s with nonzero coefficient: {neck.bits}")
        for v in self.condition2_violations:
            lines.append(f"  {v}")
        return "\n".join(lines)


def _compositions(total: int, parts: int):
    """All tuples of `parts` positive integers summing to `total`."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def sparse_gap_patterns(n: int) -> dict:
    """Necklace -> gap tuple (p_1..p_l) for every class of the form
    1 0^{p_1} 1 0^{p_2} ... 1 0^{p_l} with all p_m > 0.

    These are exactly the classes of weight >= 1 with no two cyclically
    adjacent 1s.  Generated from compositions and deduplicated through
    canonical rotation.
    """
    out: dict = {}
    for l in range(1, n // 2 + 1):
        for gaps in _compositions(n - l, l):
            bits = "".join("1" + "0" * p for p in gaps)
            neck = canonical_rotation(bits)
            if neck not in out:
                out[neck] = gaps
    return out


def check_unit_rep(spec: UnitRepSpec, state: TIState) -> UnitRepReport:
    """Decide exactly whether (A0, lam*E_{jk}) represents `state`.

    Condition 1: every supported necklace avoids cyclically adjacent 1s.
    Condition 2: Tr A0^n = c_{0..0}, and for each sparse class the product
    of the (k,j) entries of the gap powers of A0 equals lambda^l * c_I.
    """
    if state.n < 2:
        raise ValueError("check_unit_rep requires chain length >= 2")
    n = state.n
    zero = GaussianRational(0)

    cond1 = tuple(
        neck for neck in sorted(state.coeffs)
        if "11" in neck.bits + neck.bits[0]
    )

    powers = mps._generic_powers(spec.A0, n, zero)
    kj = (spec.k - 1, spec.j - 1)

    violations: List[UnitEquationViolation] = []
    zero_neck = Necklace("0" * n)
    lhs = mps._trace(powers[n], zero)
    rhs = state.coeffs.get(zero_neck, zero)
    checked = 1
    if lhs != rhs:
        violations.append(UnitEquationViolation(zero_neck, lhs, rhs))

    patterns = sparse_gap_patterns(n)
    for neck in sorted(patterns):
        gaps = patterns[neck]
        lhs = GaussianRational(1)
        for p in gaps:
            lhs = lhs * powers[p][kj[0]][kj[1]]
        rhs = (spec.lam ** len(gaps)) * state.coeffs.get(neck, zero)
        checked += 1
        if lhs != rhs:
            violations.append(UnitEquationViolation(neck, lhs, rhs))

    return UnitRepReport(
        passed=not cond1 and not violations,
        condition1_violations=cond1,
        condition2_violations=tuple(violations),
        checked_equations=checked,
    )


# -- canonical n x n construction ----------------------------------------------

@dataclass(frozen=True)
class CanonicalParams:
    """Data of the canonical n x n scaled-matrix-unit form: the gap
    products gamma_q = ((B0/lam)^q)_{k,j} and an n-th root omega of
    Tr((B0/lam)^n)."""

    gamma: Tuple[GaussianRational, ...]
    omega: complex
    lam: GaussianRational


def _exact_nth_root(t: GaussianRational, n: int) -> Optional[GaussianRational]:
    """An omega in Q(i) with omega^n = t, if one exists among the branches
    whose float image rationalizes cleanly; None otherwise."""
    if not t:
        return GaussianRational(0)
    try:
        tc = t.to_complex()
    except OverflowError:
        return None
    r = abs(tc) ** (1.0 / n)
    base = cmath.phase(tc) / n
    for k in range(n):
        cand = rationalize(cmath.rect(r, base + 2 * math.pi * k / n))
        if cand ** n == t:
            return cand
    return None


def canonicalize(spec: UnitRepSpec, n: int) -> Tuple[CanonicalParams, MPSRep]:
    """Rebuild a scaled-matrix-unit representation as the canonical n x n
    pair.

    The output A0 carries lam*gamma_{n-j} across the first row, a
    lam-superdiagonal, and lam*omega at (2,2); A1 is lam*E_{n,1}.  When
    omega is exactly representable (always so for zero-trace states) the
    returned rep is exact, otherwise floating with the principal root.
    """
    if n < 2:
        raise ValueError("canonicalize requires n >= 2")
    zero = GaussianRational(0)
    lam = spec.lam
    lam_inv = lam.inverse()
    C0 = [[e * lam_inv for e in row] for row in spec.A0]
    powers = mps._generic_powers(C0, n, zero)
    gamma = tuple(powers[q][spec.k - 1][spec.j - 1] for q in range(1, n))
    t = mps._trace(powers[n], zero)

    omega_exact = _exact_nth_root(t, n)
    if omega_exact is not None:
        omega_c = omega_exact.to_complex()
        A0 = [[zero] * n for _ in range(n)]
        for col in range(1, n):
            A0[0][col] = lam * gamma[n - 1 - col]  # gamma_{n-col}
        for row in range(1, n - 1):
            A0[row][row + 1] = lam
        A0[1][1] = lam * omega_exact
        A1 = [[zero] * n for _ in range(n)]
        A1[n - 1][0] = lam
        rep = mps_rep(A0, A1, EXACT)
        _assert_canonical_exact(rep, lam, gamma, omega_exact, n)
    else:
        omega_c = cmath.exp(cmath.log(t.to_complex()) / n)
        lam_c = lam.to_complex()
        A0 = [[0j] * n for _ in range(n)]
        for col in range(1, n):
            A0[0][col] = lam_c * gamma[n - 1 - col].to_complex()
        for row in range(1, n - 1):
            A0[row][row + 1] = lam_c
        A0[1][1] = lam_c * omega_c
        A1 = [[0j] * n for _ in range(n)]
        A1[n - 1][0] = lam_c
        rep = mps_rep(A0, A1, FLOATING)
        _assert_canonical_floating(rep, lam_c, gamma, omega_c, n)

    return CanonicalParams(gamma=gamma, omega=omega_c, lam=lam), rep


def _assert_canonical_exact(rep, lam, gamma, omega, n):
    zero = GaussianRational(0)
    powers = mps._generic_powers(rep.A0, n, zero)
    for q in range(1, n):
        if powers[q][0][n - 1] != (lam ** q) * gamma[q - 1]:
            raise AssertionError(f"(A0^{q})_(1,n) != lam^{q} * gamma_{q}")
    if mps._trace(powers[n], zero) != (lam * omega) ** n:
        raise AssertionError("Tr A0^n != (lam*omega)^n")


def _assert_canonical_floating(rep, lam_c, gamma, omega_c, n):
    A = np.array(rep.A0, dtype=complex)
    P = np.eye(n, dtype=complex)
    for q in range(1, n + 1):
        P = P @ A
        if q < n:
            want = (lam_c ** q) * gamma[q - 1].to_complex()
            if abs(P[0][n - 1] - want) > 1e-9 * max(1.0, abs(want)):
                raise AssertionError(f"(A0^{q})_(1,n) != lam^{q} * gamma_{q}")
    want = (lam_c * omega_c) ** n
    if abs(np.trace(P) - want) > 1e-9 * max(1.0, abs(want)):
        raise AssertionError("Tr A0^n != (lam*omega)^n")


# -- root solving ----------------------------------------------------------------

def solve_trace_root(p: MultiPoly) -> complex:
    """A complex root of an arity-1 polynomial with |p(root)| <= 1e-10.

    Deterministic choice: among all roots, minimal modulus, ties broken by
    smallest principal argument.  Roots come from the companion-matrix
    eigenvalues and are polished by Newton iteration.
    """
    if p.arity != 1:
        raise ValueError("solve_trace_root expects an arity-1 polynomial")
    deg = p.total_degree
    if deg < 1:
        raise ValueError("polynomial must have degree >= 1")

    coeffs = [p.coefficient((e,)).to_complex() for e in range(deg, -1, -1)]
    if deg == 1:
        roots = [-coeffs[1] / coeffs[0]]
    else:
        roots = list(np.roots(coeffs))

    dcoeffs = [c * (deg - i) for i, c in enumerate(coeffs[:-1])]

    def horner(cs, z):
        acc = 0j
        for c in cs:
            acc = acc * z + c
        return acc

    polished = []
    for z in roots:
        z = complex(z)
        for _ in range(50):
            fz = horner(coeffs, z)
            if abs(fz) <= 1e-14:
                break
            dfz = horner(dcoeffs, z)
            if not dfz:
                break
            step = fz / dfz
            z -= step
            if abs(step) < 1e-16 * max(1.0, abs(z)):
                break
        polished.append(z)

    # quantize the modulus so conjugate pairs count as ties
    best = min(polished, key=lambda z: (round(abs(z), 9), cmath.phase(z)))
    if abs(p.evaluate([best])) > ROOT_TOLERANCE:
        raise RuntimeError(
            f"root refinement failed: residual {abs(p.evaluate([best])):.3e}"
        )
    return best


# -- example fixture --------------------------------------------------------------

def upper_shift_spec(n: int) -> UnitRepSpec:
    """The unscaled upper-shift pair of dimension n: A0 the shift matrix,
    A1 = E_{n,1}.  Represents the unnormalized weight-1 state; per-matrix
    scaling by n^(-1/(2n)) turns it into the normalized one."""
    if n < 2:
        raise ValueError("upper_shift_spec requires n >= 2")
    zero = GaussianRational(0)
    one = GaussianRational(1)
    A0 = [[one if c == r + 1 else zero for c in range(n)] for r in range(n)]
    return UnitRepSpec(lam=one, j=n, k=1, A0=tuple(tuple(r) for r in A0))


def scaled_upper_shift_rep(n: int) -> MPSRep:
    """Floating upper-shift rep with per-matrix factor n^(-1/(2n)),
    reproducing the normalized weight-1 state."""
    spec = upper_shift_spec(n)
    factor = float(n) ** (-1.0 / (2 * n))
    return mps.scale_rep(mps.as_floating(spec.to_rep()), complex(factor))
