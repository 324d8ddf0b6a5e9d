"""Sparse multivariate polynomial arithmetic over the Gaussian rationals.

Monomials are exponent tuples of fixed arity; polynomials are dicts from
monomial to nonzero GaussianRational coefficient.  The module provides the
two classical monomial orders (lex and graded reverse lex), multivariate
division, and Buchberger's algorithm with the product and chain criteria
(Gebauer-Moeller pair update), producing reduced Groebner bases.

All potentially long-running entry points accept a Budget that converts
nontermination-in-practice into a BudgetExceededError.
"""

from __future__ import annotations

import bisect
import heapq
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Optional, Sequence

from .scalars import GaussianRational, ONE, ZERO, as_scalar

Monomial = tuple  # tuple[int, ...] with non-negative entries

DEFAULT_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """Raised when a computation exhausts its term-operation budget."""


class Budget:
    """A mutable counter of elementary Groebner steps with a hard limit.

    One unit is one leading-term elimination during division or one
    S-polynomial formation; the default limit of 10**7 converts
    nontermination-in-practice into a BudgetExceededError.
    """

    __slots__ = ("limit", "used")

    def __init__(self, limit: int = DEFAULT_BUDGET):
        if limit <= 0:
            raise ValueError("budget limit must be positive")
        self.limit = limit
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise BudgetExceededError(
                f"budget of {self.limit} monomial operations exceeded"
            )


# -- monomial helpers -------------------------------------------------------

def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """a / b, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        d = x - y
        if d < 0:
            return None
        out.append(d)
    return tuple(out)


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x >= y else y for x, y in zip(a, b))


def monomial_degree(a: Monomial) -> int:
    return sum(a)


class MonomialOrder:
    """A total monomial order compatible with multiplication.

    `key` maps a monomial to a tuple that sorts ascending in the order;
    `negkey` is the elementwise negation, used for min-heaps that must pop
    the largest monomial first.
    """

    __slots__ = ("kind",)

    def __init__(self, kind: str):
        if kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown monomial order: {kind!r}")
        self.kind = kind

    def key(self, m: Monomial):
        if self.kind == "lex":
            return m
        return (sum(m), tuple(-e for e in reversed(m)))

    def negkey(self, m: Monomial):
        if self.kind == "lex":
            return tuple(-e for e in m)
        return (-sum(m), tuple(reversed(m)))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r})"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.kind == other.kind

    def __hash__(self):
        return hash(self.kind)


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def order_by_name(name: str) -> MonomialOrder:
    return MonomialOrder(name)


# -- polynomials ------------------------------------------------------------

class MultiPoly:
    """A sparse multivariate polynomial over GaussianRational."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[Monomial, object] = ()):
        if arity < 0:
            raise ValueError("arity must be non-negative")
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for monom, coeff in items:
            monom = tuple(monom)
            if len(monom) != arity or any(e < 0 for e in monom):
                raise ValueError(f"bad monomial {monom} for arity {arity}")
            coeff = as_scalar(coeff)
            if coeff:
                prev = clean.get(monom)
                coeff = coeff if prev is None else prev + coeff
                if coeff:
                    clean[monom] = coeff
                else:
                    del clean[monom]
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def _raw(cls, arity: int, terms: dict) -> "MultiPoly":
        # trusted constructor: terms must be pruned and well formed
        self = object.__new__(cls)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "terms", terms)
        return self

    @classmethod
    def zero(cls, arity: int) -> "MultiPoly":
        return cls._raw(arity, {})

    @classmethod
    def one(cls, arity: int) -> "MultiPoly":
        return cls.constant(arity, ONE)

    @classmethod
    def constant(cls, arity: int, value) -> "MultiPoly":
        value = as_scalar(value)
        if not value:
            return cls.zero(arity)
        return cls._raw(arity, {(0,) * arity: value})

    @classmethod
    def variable(cls, arity: int, index: int, coeff=ONE) -> "MultiPoly":
        if not 0 <= index < arity:
            raise ValueError(f"variable index {index} out of range for arity {arity}")
        monom = tuple(1 if i == index else 0 for i in range(arity))
        return cls(arity, {monom: coeff})

    # -- ring operations ---------------------------------------------------

    def _check_arity(self, other: "MultiPoly"):
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction, GaussianRational)):
                other = MultiPoly.constant(self.arity, other)
            else:
                return NotImplemented
        self._check_arity(other)
        out = dict(self.terms)
        for monom, coeff in other.terms.items():
            prev = out.get(monom)
            val = coeff if prev is None else prev + coeff
            if val:
                out[monom] = val
            else:
                del out[monom]
        return MultiPoly._raw(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.arity, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = MultiPoly.constant(self.arity, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction, GaussianRational)):
                return self.scale(other)
            return NotImplemented
        self._check_arity(other)
        if not self.terms or not other.terms:
            return MultiPoly.zero(self.arity)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                monom = tuple(x + y for x, y in zip(ma, mb))
                prev = get(monom)
                val = ca * cb if prev is None else prev + ca * cb
                if val:
                    out[monom] = val
                else:
                    del out[monom]
        return MultiPoly._raw(self.arity, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.one(self.arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, coeff) -> "MultiPoly":
        coeff = as_scalar(coeff)
        if not coeff:
            return MultiPoly.zero(self.arity)
        return MultiPoly._raw(
            self.arity, {m: c * coeff for m, c in self.terms.items()}
        )

    def mul_term(self, monom: Monomial, coeff) -> "MultiPoly":
        coeff = as_scalar(coeff)
        if not coeff:
            return MultiPoly.zero(self.arity)
        return MultiPoly._raw(
            self.arity,
            {monomial_mul(m, monom): c * coeff for m, c in self.terms.items()},
        )

    # -- structure ----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.arity == other.arity and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = as_scalar(other)
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.arity: other}
        return NotImplemented

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    @property
    def total_degree(self) -> int:
        """Total degree; zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    @property
    def is_constant(self) -> bool:
        return not self.terms or (
            len(self.terms) == 1 and (0,) * self.arity in self.terms
        )

    def constant_value(self) -> GaussianRational:
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.arity, ZERO)

    def leading(self, order: MonomialOrder = GREVLEX):
        """(monomial, coefficient) of the leading term; errors on zero."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key
        lm = max(self.terms, key=key)
        return lm, self.terms[lm]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        """Terms in descending order under `order`."""
        key = order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def coefficient(self, monom: Monomial) -> GaussianRational:
        return self.terms.get(tuple(monom), ZERO)

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, point: Sequence[complex]) -> complex:
        """Numeric value at `point` by Horner-style accumulation per variable."""
        if len(point) != self.arity:
            raise ValueError(
                f"point length {len(point)} does not match arity {self.arity}"
            )
        pts = [complex(p) for p in point]
        terms = [(m, c.to_complex()) for m, c in self.terms.items()]
        return _horner(terms, 0, pts)

    # -- text ----------------------------------------------------------------

    def to_str(self, names: Optional[Sequence[str]] = None) -> str:
        """Debug dump in "coeff*x1^e1*..." form, descending grevlex."""
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.arity)]
        parts = []
        for monom, coeff in self.sorted_terms(GREVLEX):
            factors = [
                f"{names[i]}^{e}" if e > 1 else names[i]
                for i, e in enumerate(monom)
                if e
            ]
            if not factors:
                parts.append(str(coeff))
                continue
            body = "*".join(factors)
            if coeff == ONE:
                parts.append(body)
            elif coeff == -ONE:
                parts.append(f"-{body}")
            else:
                coeff_s = str(coeff)
                if ("+" in coeff_s[1:]) or ("-" in coeff_s[1:]):
                    coeff_s = f"({coeff_s})"
                parts.append(f"{coeff_s}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.arity}, {self.to_str()!r})"


def _horner(terms, var: int, point) -> complex:
    if not terms:
        return 0j
    if var == len(point):
        return sum(c for _, c in terms)
    groups: dict = {}
    for m, c in terms:
        groups.setdefault(m[var], []).append((m, c))
    acc = 0j
    prev = None
    z = point[var]
    for e in sorted(groups, reverse=True):
        if prev is not None:
            acc *= z ** (prev - e)
        acc += _horner(groups[e], var + 1, point)
        prev = e
    if prev:
        acc *= z ** prev
    return acc


# -- division and Groebner bases ---------------------------------------------

def reduce(
    p: MultiPoly,
    basis: Sequence[MultiPoly],
    order: MonomialOrder = GREVLEX,
    budget: Optional[Budget] = None,
) -> MultiPoly:
    """Normal form of p modulo `basis` under `order`.

    The result r satisfies: p - r lies in the ideal generated by the basis,
    and no monomial of r is divisible by any basis leading monomial.
    """
    divisors = []
    for g in basis:
        if g.arity != p.arity:
            raise ValueError("arity mismatch between polynomial and basis")
        if not g:
            raise ValueError("cannot reduce by the zero polynomial")
        lm, lc = g.leading(order)
        divisors.append((g.terms, lm, lc.inverse()))
    return _reduce_with_divisors(p, divisors, order, budget)


def _reduce_with_divisors(
    p: MultiPoly,
    divisors: Sequence[tuple],
    order: MonomialOrder,
    budget: Optional[Budget],
) -> MultiPoly:
    """Division core; divisors are precomputed (terms, lm, lc_inverse)."""
    if not p.terms or not divisors:
        return p
    spend = budget.spend if budget is not None else _no_budget
    negkey = order.negkey
    work = dict(p.terms)
    heap = [(negkey(m), m) for m in work]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, lm = heapq.heappop(heap)
        lc = work.pop(lm, None)
        if lc is None:
            continue  # stale heap entry
        for gterms, glm, glc_inv in divisors:
            q = monomial_div(lm, glm)
            if q is None:
                continue
            factor = lc * glc_inv
            spend()
            for gm, gc in gterms.items():
                if gm is glm or gm == glm:
                    continue  # cancels the popped leading term
                mm = monomial_mul(gm, q)
                prev = work.get(mm)
                if prev is None:
                    val = -(factor * gc)
                    if val:
                        work[mm] = val
                        heapq.heappush(heap, (negkey(mm), mm))
                else:
                    val = prev - factor * gc
                    if val:
                        work[mm] = val
                    else:
                        del work[mm]
            break
        else:
            rem[lm] = lc
    return MultiPoly._raw(p.arity, rem)


def _no_budget(amount: int = 1) -> None:
    return None


def spoly(
    f: MultiPoly,
    g: MultiPoly,
    order: MonomialOrder = GREVLEX,
    budget: Optional[Budget] = None,
) -> MultiPoly:
    """The S-polynomial of f and g."""
    fm, fc = f.leading(order)
    gm, gc = g.leading(order)
    lcm = monomial_lcm(fm, gm)
    if budget is not None:
        budget.spend()
    left = f.mul_term(monomial_div(lcm, fm), fc.inverse())
    right = g.mul_term(monomial_div(lcm, gm), gc.inverse())
    return left - right


def _monic(f: MultiPoly, order: MonomialOrder) -> MultiPoly:
    _, lc = f.leading(order)
    if lc == ONE:
        return f
    return f.scale(lc.inverse())


def buchberger(
    gens: Sequence[MultiPoly],
    order: MonomialOrder = GREVLEX,
    budget: Optional[Budget] = None,
) -> list:
    """Reduced Groebner basis of the ideal generated by `gens`.

    Uses Buchberger's algorithm with the product and chain criteria
    (Gebauer-Moeller pair update) and normal pair selection.  Leading
    coefficients are normalized to 1 and the result is sorted ascending by
    leading monomial, which makes the output unique.  A nonzero constant
    anywhere in the computation short-circuits to [1].  Exceeding the
    budget raises BudgetExceededError.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("buchberger requires a nonempty generator list")
    arity = gens[0].arity
    for g in gens:
        if g.arity != arity:
            raise ValueError("generators must share arity")
    gens = [g for g in gens if g]
    if not gens:
        return []  # the zero ideal
    if budget is None:
        budget = Budget(DEFAULT_BUDGET)
    if arity > 0 and all(
        not c.im for g in gens for c in g.terms.values()
    ):
        return _buchberger_rational(gens, order, budget)
    return _buchberger_generic(gens, order, budget)


def contains_one(basis: Sequence[MultiPoly]) -> bool:
    """True iff a reduced Groebner basis equals [1] up to scalar."""
    return len(basis) == 1 and basis[0].is_constant and bool(basis[0])


# -- generic engine (Gaussian-rational coefficients) ---------------------------

def _gm_update(lmG, P, lmf, key):
    """Gebauer-Moeller pair update for the element with leading monomial
    lmf about to be appended: prune by the product and chain criteria.
    Returns the surviving old pairs plus the new ones."""
    m = len(lmG)
    kept = set()
    for i, j in P:
        L = monomial_lcm(lmG[i], lmG[j])
        if (
            monomial_div(L, lmf) is None
            or L == monomial_lcm(lmG[i], lmf)
            or L == monomial_lcm(lmG[j], lmf)
        ):
            kept.add((i, j))
    groups: dict = {}
    for i in range(m):
        groups.setdefault(monomial_lcm(lmG[i], lmf), []).append(i)
    minimal: list = []
    for L in sorted(groups, key=key):
        if all(monomial_div(L, L2) is None for L2 in minimal):
            minimal.append(L)
    for L in minimal:
        if not any(
            monomial_lcm(lmG[i], lmf) == monomial_mul(lmG[i], lmf)
            for i in groups[L]
        ):
            kept.add((min(groups[L]), m))
    return kept


def _buchberger_generic(gens, order, budget):
    arity = gens[0].arity
    okey = order.key

    G: list = []
    lmG: list = []
    divisors: list = []  # (terms, lm, lc_inverse) cached per basis element
    P: set = set()

    def push(f):
        nonlocal P
        lm, lc = f.leading(order)
        P = _gm_update(lmG, P, lm, okey)
        f = f if lc == ONE else f.scale(lc.inverse())
        G.append(f)
        lmG.append(lm)
        divisors.append((f.terms, lm, ONE))

    for f in sorted(gens, key=lambda h: okey(h.leading(order)[0])):
        if f.is_constant:
            return [MultiPoly.one(arity)]
        push(f)

    while P:
        pair = min(P, key=lambda ij: (okey(monomial_lcm(lmG[ij[0]], lmG[ij[1]])), ij))
        P.discard(pair)
        i, j = pair
        s = spoly(G[i], G[j], order, budget)
        if not s:
            continue
        r = _reduce_with_divisors(s, divisors, order, budget)
        if r:
            if r.is_constant:
                return [MultiPoly.one(arity)]
            push(r)

    return _interreduce_generic(G, order, budget)


def _interreduce_generic(G, order, budget):
    okey = order.key
    # minimalize: drop elements whose leading monomial is divisible by
    # another one
    Gmin: list = []
    lmin: list = []
    for f in sorted(G, key=lambda h: okey(h.leading(order)[0])):
        lm = f.leading(order)[0]
        if all(monomial_div(lm, l2) is None for l2 in lmin):
            Gmin.append(f)
            lmin.append(lm)
    # interreduce tails: leading monomials are pairwise non-divisible, so a
    # single normal-form pass yields the reduced basis
    out = []
    for idx, f in enumerate(Gmin):
        others = Gmin[:idx] + Gmin[idx + 1:]
        r = reduce(f, others, order, budget) if others else f
        out.append(_monic(r, order))
    out.sort(key=lambda h: okey(h.leading(order)[0]))
    return out


# -- fast engine (packed monomials, integer coefficients) ----------------------
#
# Systems whose coefficients are all real are run over plain integers:
# generators are cleared of denominators and kept primitive, reduction is
# fraction-free (cross-multiplied), and monomials are packed into single
# Python ints whose natural ordering realizes the monomial order, so that
# dict keys, divisibility tests and heap ordering all act on machine-level
# int operations.

class _PackedOrder:
    """Packs exponent vectors into ints ordered like the monomial order.

    grevlex layout (most significant first):
        [ total degree | CAP - e_{m-1} | ... | CAP - e_0 ]
    lex layout:
        [ e_0 | e_1 | ... | e_{m-1} ]

    Per-field guard bits make divisibility a subtract-and-mask test.  The
    packing is valid while every exponent stays below CAP; new basis
    elements are checked against DEGREE_LIMIT to keep multiplication safe.
    """

    FIELD_BITS = 8
    CAP = (1 << (FIELD_BITS - 1)) - 1  # 127
    DEG_BITS = 28
    DEGREE_LIMIT = CAP // 2

    def __init__(self, arity: int, kind: str):
        self.arity = arity
        self.kind = kind
        w = self.FIELD_BITS
        self.guards = sum(
            (1 << (w - 1)) << (w * i) for i in range(arity)
        )
        if kind == "grevlex":
            self.guards |= (1 << (self.DEG_BITS - 1)) << (w * arity)
            self.comp_const = sum(self.CAP << (w * i) for i in range(arity))
        else:
            self.comp_const = 0
        self.zero_monom = self.pack((0,) * arity)

    def pack(self, monom) -> int:
        w = self.FIELD_BITS
        if self.kind == "grevlex":
            # bit position w*i holds CAP - e_i, so the most significant
            # comparison after the degree is the complemented last exponent
            out = sum(monom) << (w * self.arity)
            for i, e in enumerate(monom):
                out |= (self.CAP - e) << (w * i)
            return out
        out = 0
        for e in monom:
            out = (out << w) | e
        return out

    def unpack(self, packed: int):
        w = self.FIELD_BITS
        mask = (1 << w) - 1
        out = [0] * self.arity
        if self.kind == "grevlex":
            for i in range(self.arity):
                out[i] = self.CAP - ((packed >> (w * i)) & mask)
            return tuple(out)
        for i in range(self.arity - 1, -1, -1):
            out[i] = packed & mask
            packed >>= w
        return tuple(out)

    def mul(self, a: int, b: int) -> int:
        return a + b - self.comp_const

    def div(self, a: int, b: int):
        c = a + self.comp_const - b
        if c < 0 or (c & self.guards):
            return None
        return c

    def lcm(self, a: int, b: int) -> int:
        ea = self.unpack(a)
        eb = self.unpack(b)
        return self.pack(tuple(x if x >= y else y for x, y in zip(ea, eb)))

    def degree(self, a: int) -> int:
        if self.kind == "grevlex":
            return a >> (self.FIELD_BITS * self.arity)
        return sum(self.unpack(a))


def _to_int_poly(f: MultiPoly, ctx: _PackedOrder) -> dict:
    """Clear denominators and pack monomials; coefficients become ints."""
    den = 1
    for c in f.terms.values():
        d = c.re.denominator
        den = den * d // gcd(den, d)
    out = {}
    for m, c in f.terms.items():
        out[ctx.pack(m)] = int(c.re * den)
    return out


def _strip_content(terms: dict) -> dict:
    """Divide out the integer content and normalize the sign of the
    largest monomial's coefficient to positive."""
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            break
    lead = max(terms)
    if terms[lead] < 0:
        g = -g
    if g == 1:
        return terms
    return {m: c // g for m, c in terms.items()}


class _Divisors:
    """Basis elements indexed for fast divisibility scans.

    Kept sorted ascending by packed leading monomial so that a bisect
    bounds the candidates for any reduced monomial (a divisor is never
    larger than its multiple).  A per-divisor variable-support mask gives
    a one-AND rejection before the exact packed division test.
    """

    __slots__ = ("ctx", "lms", "info")

    def __init__(self, ctx: _PackedOrder):
        self.ctx = ctx
        self.lms: list = []
        self.info: list = []  # (glm, gmask, glc, tail_pairs)

    def support_mask(self, packed: int) -> int:
        ctx = self.ctx
        w = ctx.FIELD_BITS
        mask = (1 << w) - 1
        out = 0
        if ctx.kind == "grevlex":
            for i in range(ctx.arity):
                if ((packed >> (w * i)) & mask) != ctx.CAP:
                    out |= 1 << i
            return out
        for i in range(ctx.arity - 1, -1, -1):
            if packed & mask:
                out |= 1 << i
            packed >>= w
        return out

    def insert(self, terms: dict, lm: int, lc: int) -> None:
        tail = [(m, c) for m, c in terms.items() if m != lm]
        tail.sort(reverse=True)
        entry = (lm, self.support_mask(lm), lc, tail)
        pos = bisect.bisect_left(self.lms, lm)
        self.lms.insert(pos, lm)
        self.info.insert(pos, entry)


def _reduce_fast(work: dict, divisors: _Divisors, ctx: _PackedOrder, spend) -> dict:
    """Fraction-free normal form over integer coefficients.

    The remainder is only determined up to a positive rational factor,
    which is irrelevant for basis construction and is normalized away
    later.  Budget: one unit per leading-term elimination.
    """
    comp = ctx.comp_const
    guards = ctx.guards
    lms = divisors.lms
    info = divisors.info
    supmask = divisors.support_mask
    heap = [-m for m in work]
    heapq.heapify(heap)
    rem: dict = {}
    get = work.get
    pop = work.pop
    push = heapq.heappush
    while heap:
        lm = -heapq.heappop(heap)
        lc = pop(lm, None)
        if lc is None:
            continue
        hi = bisect.bisect_right(lms, lm)
        if hi:
            mmask = ~supmask(lm)
            lmc = lm + comp
        hit = None
        for idx in range(hi):
            glm, gmask, glc, tail = info[idx]
            if gmask & mmask:
                continue
            q = lmc - glm
            if q >= 0 and not (q & guards):
                hit = (glc, tail, q)
                break
        if hit is None:
            rem[lm] = lc
            continue
        glc, tail, q = hit
        spend()
        g0 = gcd(lc, glc)
        m1 = glc // g0   # positive: scales the pending work + remainder
        m2 = lc // g0
        if m1 != 1:
            for m in work:
                work[m] *= m1
            for m in rem:
                rem[m] *= m1
        q -= comp
        for gm, gc in tail:
            mm = gm + q
            prev = get(mm)
            if prev is None:
                work[mm] = -m2 * gc
                push(heap, -mm)
            else:
                val = prev - m2 * gc
                if val:
                    work[mm] = val
                else:
                    del work[mm]
    return rem


def _spoly_fast(f, g, ctx: _PackedOrder, spend):
    """Integer S-polynomial of primitive int polys f=(terms,lm,lc), g."""
    fterms, flm, flc = f
    gterms, glm, glc = g
    L = ctx.lcm(flm, glm)
    qf = L + ctx.comp_const - flm
    qg = L + ctx.comp_const - glm
    g0 = gcd(flc, glc)
    cf = glc // g0
    cg = flc // g0
    spend()
    out = {}
    comp = ctx.comp_const
    for m, c in fterms.items():
        out[m + qf - comp] = c * cf
    for m, c in gterms.items():
        mm = m + qg - comp
        prev = out.get(mm)
        val = -c * cg if prev is None else prev - c * cg
        if val:
            out[mm] = val
        else:
            del out[mm]
    return out


def _gm_update_fast(lmG, P, lmf, ctx: _PackedOrder):
    """Gebauer-Moeller update on packed leading monomials."""
    m = len(lmG)
    lcm = ctx.lcm
    div = ctx.div
    kept = set()
    for i, j in P:
        L = lcm(lmG[i], lmG[j])
        if (
            div(L, lmf) is None
            or L == lcm(lmG[i], lmf)
            or L == lcm(lmG[j], lmf)
        ):
            kept.add((i, j))
    groups: dict = {}
    for i in range(m):
        groups.setdefault(lcm(lmG[i], lmf), []).append(i)
    minimal: list = []
    for L in sorted(groups):
        if all(div(L, L2) is None for L2 in minimal):
            minimal.append(L)
    for L in minimal:
        if not any(lcm(lmG[i], lmf) == ctx.mul(lmG[i], lmf) for i in groups[L]):
            kept.add((min(groups[L]), m))
    return kept


def _buchberger_rational(gens, order, budget):
    """Fast path for all-real systems: integer coefficients over packed
    monomials.  Produces the same reduced (monic, rational) basis as the
    generic engine."""
    arity = gens[0].arity
    ctx = _PackedOrder(arity, order.kind)
    spend = budget.spend
    limit = _PackedOrder.DEGREE_LIMIT

    G: list = []    # (terms, lm, lc) primitive with positive lc
    lmG: list = []
    P: set = set()
    pair_heap: list = []
    divisors = _Divisors(ctx)

    def push(terms: dict):
        nonlocal P
        terms = _strip_content(terms)
        lm = max(terms)
        if ctx.degree(lm) > limit:
            raise BudgetExceededError(
                "monomial degree exceeded the packed-representation limit"
            )
        new = _gm_update_fast(lmG, P, lm, ctx)
        m = len(lmG)
        for pair in new - P:
            i, j = pair
            other = lm if j == m else lmG[j]
            heapq.heappush(pair_heap, (ctx.lcm(lmG[i], other), pair))
        P = new
        G.append((terms, lm, terms[lm]))
        lmG.append(lm)
        divisors.insert(terms, lm, terms[lm])

    prepared = sorted(
        (_to_int_poly(f, ctx) for f in gens), key=lambda t: max(t)
    )
    for terms in prepared:
        if max(terms) == ctx.zero_monom:
            return [MultiPoly.one(arity)]
        push(terms)

    while P:
        _, pair = heapq.heappop(pair_heap)
        if pair not in P:
            continue  # eliminated by a later update
        P.discard(pair)
        i, j = pair
        s = _spoly_fast(G[i], G[j], ctx, spend)
        if not s:
            continue
        r = _reduce_fast(s, divisors, ctx, spend)
        if r:
            if max(r) == ctx.zero_monom:
                return [MultiPoly.one(arity)]
            push(r)

    # minimalize
    div = ctx.div
    order_idx = sorted(range(len(G)), key=lambda i: lmG[i])
    keep: list = []
    for i in order_idx:
        if all(div(lmG[i], lmG[k]) is None for k in keep):
            keep.append(i)
    # interreduce tails and convert back to monic rational polynomials
    out = []
    for i in keep:
        rest = _Divisors(ctx)
        for k in keep:
            if k != i:
                rest.insert(G[k][0], G[k][1], G[k][2])
        r = (
            _reduce_fast(dict(G[i][0]), rest, ctx, spend)
            if len(keep) > 1
            else G[i][0]
        )
        r = _strip_content(r)
        lc = r[max(r)]
        out.append(
            MultiPoly._raw(
                arity,
                {
                    ctx.unpack(m): GaussianRational(Fraction(c, lc))
                    for m, c in r.items()
                },
            )
        )
    out.sort(key=lambda h: order.key(h.leading(order)[0]))
    return out
