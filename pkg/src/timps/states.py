"""Translation-invariant n-qubit states keyed by necklace classes.

A necklace is an equivalence class of binary strings under cyclic rotation;
one trace equation per necklace, by cyclicity of the trace.  Keying states
by necklaces makes rotation invariance of the coefficient tensor true by
construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List

from .scalars import GaussianRational, as_scalar

DEFAULT_NECKLACE_CAP = 24  # keeps brute enumeration under ~16M strings


@dataclass(frozen=True, order=True)
class Necklace:
    """Canonical representative (lexicographically minimal rotation) of a
    binary string under cyclic rotation."""

    bits: str

    def __post_init__(self):
        if not self.bits:
            raise ValueError("necklace bits must be nonempty")
        if any(c not in "01" for c in self.bits):
            raise ValueError(f"necklace bits must be binary: {self.bits!r}")
        if self.bits != _min_rotation(self.bits):
            raise ValueError(
                f"{self.bits!r} is not a canonical rotation; "
                "use canonical_rotation()"
            )

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def weight(self) -> int:
        return self.bits.count("1")

    def period(self) -> int:
        """Smallest p dividing n with the string fixed by rotation by p;
        equals the orbit size of the class."""
        n = len(self.bits)
        for p in range(1, n + 1):
            if n % p == 0 and self.bits == self.bits[p:] + self.bits[:p]:
                return p
        return n

    def rotations(self) -> Iterator[str]:
        """Distinct rotations of the representative."""
        seen = set()
        for i in range(len(self.bits)):
            r = self.bits[i:] + self.bits[:i]
            if r not in seen:
                seen.add(r)
                yield r

    def __str__(self):
        return self.bits


def _min_rotation(bits: str) -> str:
    return min(bits[i:] + bits[:i] for i in range(len(bits)))


def canonical_rotation(bits: str) -> Necklace:
    """Necklace holding the lexicographically minimal rotation of `bits`."""
    if not bits:
        raise ValueError("cannot canonicalize an empty string")
    if any(c not in "01" for c in bits):
        raise ValueError(f"bit string must be binary: {bits!r}")
    return Necklace(_min_rotation(bits))


def enumerate_necklaces(n: int, cap: int = DEFAULT_NECKLACE_CAP) -> List[Necklace]:
    """All distinct necklaces of length n, sorted.

    Uses the classic FKM recursion, which emits canonical representatives
    directly in lexicographic order in O(output * n) time.
    """
    if n < 1:
        raise ValueError("necklace length must be at least 1")
    if n > cap:
        raise ValueError(f"necklace length {n} exceeds the cap {cap}")
    out: List[Necklace] = []
    a = [0] * (n + 1)

    def gen(t: int, p: int):
        if t > n:
            if n % p == 0:
                out.append(Necklace("".join("01"[b] for b in a[1:])))
            return
        a[t] = a[t - p]
        gen(t + 1, p)
        if a[t - p] == 0:
            a[t] = 1
            gen(t + 1, t)

    gen(1, 1)
    return out


def _totient(m: int) -> int:
    result = m
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def polya_count(n: int) -> int:
    """Number of binary necklaces of length n: (1/n) sum_{p|n} phi(p) 2^(n/p).

    This is the maximal number of distinct trace equations for a chain of
    length n.  The divisor sum is always a multiple of n.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    total = sum(_totient(p) * 2 ** (n // p) for p in range(1, n + 1) if n % p == 0)
    assert total % n == 0
    return total // n


@dataclass(frozen=True)
class TIState:
    """A translation-invariant state: chain length plus a sparse map from
    necklace classes to exact nonzero coefficients."""

    n: int
    coeffs: Dict[Necklace, GaussianRational] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("chain length must be at least 1")
        clean = {}
        for neck, value in self.coeffs.items():
            if not isinstance(neck, Necklace):
                neck = canonical_rotation(str(neck))
            if neck.n != self.n:
                raise ValueError(
                    f"necklace {neck.bits!r} has length {neck.n}, expected {self.n}"
                )
            value = as_scalar(value)
            if value:
                clean[neck] = value
        object.__setattr__(self, "coeffs", clean)

    def coefficient(self, bits) -> GaussianRational:
        """Coefficient of any representative bit string (0 when absent)."""
        neck = bits if isinstance(bits, Necklace) else canonical_rotation(str(bits))
        return self.coeffs.get(neck, GaussianRational(0))

    def support(self) -> List[Necklace]:
        return sorted(self.coeffs)

    def full_tensor(self) -> Dict[str, GaussianRational]:
        """Expand to the full 2^n coefficient map (rotation-invariant by
        construction).  Intended for small n only."""
        out = {}
        for i in range(2 ** self.n):
            bits = format(i, f"0{self.n}b")
            out[bits] = self.coefficient(bits)
        return out


def w_state(n: int, normalized: bool = False) -> TIState:
    """The weight-1 equal-superposition state of order n.

    Unnormalized: coefficient 1 on the single-one necklace.  Normalized
    requires an exactly representable 1/sqrt(n), i.e. n a perfect square.
    """
    if n < 2:
        raise ValueError("w_state requires n >= 2")
    neck = Necklace("0" * (n - 1) + "1")
    if not normalized:
        return TIState(n, {neck: GaussianRational(1)})
    root = math.isqrt(n)
    if root * root != n:
        raise ValueError(
            f"1/sqrt({n}) is irrational; build the unnormalized state and "
            "scale numerically instead"
        )
    return TIState(n, {neck: GaussianRational(Fraction(1, root))})


def scale_state(state: TIState, lam) -> TIState:
    """Multiply every coefficient by lam, pruning zeros."""
    lam = as_scalar(lam)
    return TIState(state.n, {k: v * lam for k, v in state.coeffs.items()})


def is_unit_sparse(state: TIState) -> bool:
    """True iff no supported necklace contains two cyclically adjacent 1s."""
    return not any(_has_adjacent_ones(neck.bits) for neck in state.coeffs)


def _has_adjacent_ones(bits: str) -> bool:
    return "11" in bits + bits[0]


# -- JSON state format --------------------------------------------------------

def state_to_dict(state: TIState) -> dict:
    return {
        "n": state.n,
        "coeffs": [
            {"necklace": neck.bits, "value": str(value)}
            for neck, value in sorted(state.coeffs.items())
        ],
    }


def state_from_dict(data: dict) -> TIState:
    """Parse the JSON state format.

    Keys not in canonical rotation are canonicalized; distinct keys that
    collide after canonicalization are a load error.
    """
    try:
        n = int(data["n"])
        entries = data["coeffs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed state file: {exc}") from None
    coeffs: Dict[Necklace, GaussianRational] = {}
    for entry in entries:
        bits = entry["necklace"]
        raw = entry["value"]
        if not isinstance(raw, str):
            raise ValueError(
                f"state coefficient for {bits!r} must be an exact "
                f"\"p/q+r/s*i\" string, got {raw!r}"
            )
        neck = canonical_rotation(bits)
        if neck.n != n:
            raise ValueError(f"necklace {bits!r} does not have length {n}")
        if neck in coeffs:
            raise ValueError(
                f"duplicate necklace class {neck.bits!r} after canonicalization"
            )
        coeffs[neck] = GaussianRational.parse(raw)
    return TIState(n, coeffs)
