"""Translation-invariant MPS representations with periodic boundary
conditions: the matrix-pair object, trace-based coefficient evaluation in
exact, floating and univariate-symbolic scalars, verification against a
TIState, and the scaling/gauge transforms.

For a bit string I the represented coefficient is the trace of the ordered
product of A_0/A_1 selected by the bits of I; by cyclicity it depends only
on the necklace class of I.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .polynomials import MultiPoly
from .scalars import GaussianRational, as_scalar
from .states import Necklace, TIState, canonical_rotation, enumerate_necklaces

EXACT = "exact"
FLOATING = "floating"
SYMBOLIC = "symbolic"

Matrix = Tuple[tuple, ...]


@dataclass(frozen=True)
class MPSRep:
    """Bond dimension d plus the matrix pair (A0, A1).

    `scalars` selects the entry domain: "exact" (GaussianRational),
    "floating" (complex) or "symbolic" (arity-1 MultiPoly in one formal
    variable).  Matrices are stored as immutable tuples of tuples.
    """

    d: int
    scalars: str
    A0: Matrix
    A1: Matrix


def mps_rep(A0, A1, scalars: str) -> MPSRep:
    """Validate and freeze a matrix pair into an MPSRep."""
    if scalars not in (EXACT, FLOATING, SYMBOLIC):
        raise ValueError(f"unknown scalar domain: {scalars!r}")
    A0 = _freeze(A0, scalars)
    A1 = _freeze(A1, scalars)
    d = len(A0)
    if len(A1) != d:
        raise ValueError("A0 and A1 must have equal dimension")
    return MPSRep(d=d, scalars=scalars, A0=A0, A1=A1)


def _freeze(M, scalars: str) -> Matrix:
    rows = [tuple(row) for row in M]
    d = len(rows)
    if d < 1 or any(len(r) != d for r in rows):
        raise ValueError("matrices must be square with dimension >= 1")
    out = []
    for row in rows:
        frozen = []
        for entry in row:
            if scalars == FLOATING:
                frozen.append(complex(entry))
            elif scalars == EXACT:
                frozen.append(as_scalar(entry))
            else:
                if isinstance(entry, (int, Fraction, GaussianRational)):
                    entry = MultiPoly.constant(1, entry)
                if not isinstance(entry, MultiPoly) or entry.arity != 1:
                    raise ValueError("symbolic entries must be arity-1 MultiPoly")
                frozen.append(entry)
        out.append(tuple(frozen))
    return tuple(out)


def _zero_one(scalars: str):
    if scalars == FLOATING:
        return 0j, 1 + 0j
    if scalars == EXACT:
        return GaussianRational(0), GaussianRational(1)
    return MultiPoly.zero(1), MultiPoly.one(1)


# -- generic (ring-valued) matrix helpers -------------------------------------

def _identity(d: int, zero, one) -> list:
    return [[one if i == j else zero for j in range(d)] for i in range(d)]


def _mat_mul(A, B, zero) -> list:
    d = len(A)
    out = [[zero] * d for _ in range(d)]
    for i in range(d):
        Ai = A[i]
        row = out[i]
        for k in range(d):
            a = Ai[k]
            if not a:
                continue
            Bk = B[k]
            for j in range(d):
                b = Bk[j]
                if not b:
                    continue
                row[j] = row[j] + a * b
    return out

def _mat_pow(A, k: int, zero, one) -> list:
    d = len(A)
    result = _identity(d, zero, one)
    base = [list(row) for row in A]
    while k:
        if k & 1:
            result = _mat_mul(result, base, zero)
        k >>= 1
        if k:
            base = _mat_mul(base, base, zero)
    return result


def _trace(A, zero):
    t = zero
    for i in range(len(A)):
        t = t + A[i][i]
    return t


def _runs(bits: str) -> List[Tuple[int, int]]:
    """Run-length encoding, rotated so a 1-run leads when one exists.

    Rotating the runs is a cyclic reordering of the trace product and does
    not change its value; starting at a (typically sparse) A1 block keeps
    intermediate products thin.
    """
    runs: List[Tuple[int, int]] = []
    for c in bits:
        b = int(c)
        if runs and runs[-1][0] == b:
            runs[-1] = (b, runs[-1][1] + 1)
        else:
            runs.append((b, 1))
    if len(runs) > 1 and runs[0][0] == runs[-1][0]:
        # the cyclic string wraps around; merge the boundary run
        runs[0] = (runs[0][0], runs[0][1] + runs.pop()[1])
    for idx, (b, _) in enumerate(runs):
        if b == 1:
            return runs[idx:] + runs[:idx]
    return runs


def eval_coefficient(rep: MPSRep, I: Union[str, Necklace]):
    """Trace of the matrix product selected by (any representative of) I.

    Returns a scalar in the rep's domain.  The product pools runs of equal
    matrices and raises them by repeated squaring.
    """
    neck = I if isinstance(I, Necklace) else canonical_rotation(str(I))
    zero, one = _zero_one(rep.scalars)
    mats = (rep.A0, rep.A1)
    prod = None
    for bit, count in _runs(neck.bits):
        block = _mat_pow(mats[bit], count, zero, one)
        prod = block if prod is None else _mat_mul(prod, block, zero)
    return _trace(prod, zero)


def evaluate_classes(rep: MPSRep, n: int, cap: int = 24):
    """Evaluate every necklace class of length n.

    Returns a dict Necklace -> scalar in the rep's domain.  Power tables of
    A0 and A1 are shared across classes; the floating domain additionally
    goes through numpy.
    """
    classes = enumerate_necklaces(n, cap=cap)
    if rep.scalars == FLOATING:
        tables = [_np_powers(rep.A0, n), _np_powers(rep.A1, n)]
        out = {}
        for neck in classes:
            prod = None
            for bit, count in _runs(neck.bits):
                block = tables[bit][count]
                prod = block if prod is None else prod @ block
            out[neck] = complex(np.trace(prod))
        return out
    zero, one = _zero_one(rep.scalars)
    tables = [_generic_powers(rep.A0, n, zero), _generic_powers(rep.A1, n, zero)]
    out = {}
    for neck in classes:
        prod = None
        for bit, count in _runs(neck.bits):
            block = tables[bit][count]
            prod = block if prod is None else _mat_mul(prod, block, zero)
        out[neck] = _trace(prod, zero)
    return out


def _np_powers(M: Matrix, n: int) -> List[np.ndarray]:
    A = np.array(M, dtype=complex)
    out = [np.eye(len(M), dtype=complex), A]
    for _ in range(n - 1):
        out.append(out[-1] @ A)
    return out


def _generic_powers(M: Matrix, n: int, zero) -> list:
    # index 0 is never used: runs always have positive length
    rows = [list(r) for r in M]
    out: list = [None, rows]
    for _ in range(n - 1):
        out.append(_mat_mul(out[-1], rows, zero))
    return out


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of checking a floating rep against a TIState."""

    max_abs_error: float
    worst_necklace: Optional[Necklace]
    passed: bool
    checked_classes: int

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        worst = self.worst_necklace.bits if self.worst_necklace else "-"
        return (
            f"{status}: max |error| {self.max_abs_error:.3e} over "
            f"{self.checked_classes} classes (worst: {worst})"
        )


def verify(
    rep: MPSRep,
    state: TIState,
    tol: float = 1e-9,
    relative: bool = False,
    cap: int = 24,
) -> VerifyReport:
    """Compare the rep's evaluated coefficients against `state` over every
    necklace class of length state.n, including zero-coefficient classes.

    The comparison is absolute by default (most classes carry coefficient
    zero); `relative=True` divides by max(1, |expected|).
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if rep.scalars != FLOATING:
        raise ValueError("verify requires a floating rep; see as_floating()")
    values = evaluate_classes(rep, state.n, cap=cap)
    max_err = -1.0
    worst: Optional[Necklace] = None
    for neck in sorted(values):
        expected = state.coeffs.get(neck)
        expected_c = expected.to_complex() if expected is not None else 0j
        err = abs(values[neck] - expected_c)
        if relative:
            err /= max(1.0, abs(expected_c))
        if err > max_err:
            max_err = err
            worst = neck
    return VerifyReport(
        max_abs_error=max_err,
        worst_necklace=worst,
        passed=max_err <= tol,
        checked_classes=len(values),
    )


def scale_rep(rep: MPSRep, root) -> MPSRep:
    """Multiply both matrices entrywise by an n-th root of the state scale.

    Scaling both matrices by r scales every length-n coefficient by r^n.
    """
    if rep.scalars == FLOATING:
        r = complex(root) if not isinstance(root, GaussianRational) else root.to_complex()
        scale = lambda e: e * r
    elif rep.scalars == EXACT:
        r = as_scalar(root)
        scale = lambda e: e * r
    else:
        r = root if isinstance(root, MultiPoly) else MultiPoly.constant(1, as_scalar(root))
        scale = lambda e: e * r
    A0 = tuple(tuple(scale(e) for e in row) for row in rep.A0)
    A1 = tuple(tuple(scale(e) for e in row) for row in rep.A1)
    return MPSRep(d=rep.d, scalars=rep.scalars, A0=A0, A1=A1)


def conjugate_rep(rep: MPSRep, S, cond_cap: float = 1e8) -> MPSRep:
    """Gauge transform A_i -> S A_i S^(-1); coefficients are unchanged.

    S must be invertible with condition number below `cond_cap`.
    """
    if rep.scalars != FLOATING:
        raise ValueError("conjugate_rep operates on floating reps")
    S = np.asarray(S, dtype=complex)
    if S.shape != (rep.d, rep.d):
        raise ValueError(f"gauge matrix must be {rep.d}x{rep.d}")
    cond = np.linalg.cond(S)
    if not np.isfinite(cond) or cond > cond_cap:
        raise ValueError(f"gauge matrix is singular or ill-conditioned ({cond:.3e})")
    Sinv = np.linalg.inv(S)
    A0 = S @ np.array(rep.A0, dtype=complex) @ Sinv
    A1 = S @ np.array(rep.A1, dtype=complex) @ Sinv
    return mps_rep(A0.tolist(), A1.tolist(), FLOATING)


def trace_polynomial(rep: MPSRep, I: Union[str, Necklace]) -> MultiPoly:
    """Exact trace coefficient of a univariate-symbolic rep as an arity-1
    polynomial in the formal variable."""
    if rep.scalars != SYMBOLIC:
        raise ValueError("trace_polynomial requires a symbolic rep")
    return eval_coefficient(rep, I)


def as_floating(rep: MPSRep) -> MPSRep:
    """Convert an exact rep to floating entries (identity on floating reps)."""
    if rep.scalars == FLOATING:
        return rep
    if rep.scalars != EXACT:
        raise ValueError("cannot convert a symbolic rep to floating")
    A0 = [[e.to_complex() for e in row] for row in rep.A0]
    A1 = [[e.to_complex() for e in row] for row in rep.A1]
    return mps_rep(A0, A1, FLOATING)


# -- JSON rep format -----------------------------------------------------------

def rep_to_dict(rep: MPSRep, n: int) -> dict:
    if rep.scalars == SYMBOLIC:
        raise ValueError("symbolic reps have no JSON form")
    if rep.scalars == EXACT:
        encode = str
    else:
        encode = lambda e: [e.real, e.imag]
    return {
        "n": n,
        "d": rep.d,
        "scalars": rep.scalars,
        "A0": [[encode(e) for e in row] for row in rep.A0],
        "A1": [[encode(e) for e in row] for row in rep.A1],
    }


def rep_from_dict(data: dict) -> Tuple[int, MPSRep]:
    try:
        n = int(data["n"])
        scalars = data["scalars"]
        raw0, raw1 = data["A0"], data["A1"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed rep file: {exc}") from None
    if scalars == EXACT:
        decode = GaussianRational.parse
    elif scalars == FLOATING:
        decode = lambda e: complex(e[0], e[1])
    else:
        raise ValueError(f"unknown scalar domain in rep file: {scalars!r}")
    try:
        A0 = [[decode(e) for e in row] for row in raw0]
        A1 = [[decode(e) for e in row] for row in raw1]
    except (TypeError, IndexError) as exc:
        raise ValueError(f"malformed rep entries: {exc}") from None
    rep = mps_rep(A0, A1, scalars)
    if int(data["d"]) != rep.d:
        raise ValueError("rep file d field does not match matrix dimension")
    return n, rep
