"""Exact sparse polynomials over the variables x1..xn, y1..yn, w.

Monomials are plain tuples of exponents in *natural layout*: indices
``0..n-1`` are x1..xn, ``n..2n-1`` are y1..yn and ``2n`` is w.  Extended
rings (used for elimination) append auxiliary variables after w.

The monomial order is lexicographic with an explicit precedence list; the
default precedence is ``w > xn > ... > x1 > yn > ... > y1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from operator import itemgetter
from typing import Iterable, Mapping, Sequence, Union

Monomial = tuple  # tuple[int, ...]
Coefficient = Union[int, Fraction]


class DimensionError(ValueError):
    """Raised when monomials or polynomials from different rings are mixed."""


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def normalize_coefficient(c) -> Coefficient:
    """Return ``c`` as an int when integral, else as a Fraction."""
    if isinstance(c, int) and not isinstance(c, bool):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


# ----------------------------------------------------------------------------
# Monomial primitives


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m1, m2))


def lcm_monomials(m1: Monomial, m2: Monomial) -> Monomial:
    if len(m1) != len(m2):
        raise DimensionError(f"monomials of length {len(m1)} and {len(m2)}")
    return tuple(a if a > b else b for a, b in zip(m1, m2))


def gcd_monomials(m1: Monomial, m2: Monomial) -> Monomial:
    if len(m1) != len(m2):
        raise DimensionError(f"monomials of length {len(m1)} and {len(m2)}")
    return tuple(a if a < b else b for a, b in zip(m1, m2))


def divides(m1: Monomial, m2: Monomial) -> bool:
    """Return True if ``m1`` divides ``m2``."""
    if len(m1) != len(m2):
        raise DimensionError(f"monomials of length {len(m1)} and {len(m2)}")
    return all(a <= b for a, b in zip(m1, m2))


def div_monomials(m1: Monomial, m2: Monomial) -> Monomial:
    """Return ``m1 / m2``; ``m2`` must divide ``m1``."""
    if not divides(m2, m1):
        raise ValueError(f"{m2} does not divide {m1}")
    return tuple(a - b for a, b in zip(m1, m2))


def is_coprime(m1: Monomial, m2: Monomial) -> bool:
    return not any(a and b for a, b in zip(m1, m2))


# ----------------------------------------------------------------------------
# Variable sets, weights and orders


@dataclass(frozen=True)
class VarSet:
    """The 2n+1 variables x1..xn, y1..yn, w."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"need n >= 2 x-variables, got n={self.n!r}")

    @property
    def size(self) -> int:
        return 2 * self.n + 1

    def x(self, i: int) -> int:
        """Index of x_i (1-based)."""
        self._check(i)
        return i - 1

    def y(self, i: int) -> int:
        """Index of y_i (1-based)."""
        self._check(i)
        return self.n + i - 1

    @property
    def w(self) -> int:
        return 2 * self.n

    def _check(self, i):
        if not 1 <= i <= self.n:
            raise IndexError(f"variable index {i} outside 1..{self.n}")

    @property
    def names(self) -> tuple[str, ...]:
        n = self.n
        return tuple([f"x{i}" for i in range(1, n + 1)]
                     + [f"y{i}" for i in range(1, n + 1)] + ["w"])

    def default_precedence(self) -> tuple[int, ...]:
        """w > xn > ... > x1 > yn > ... > y1."""
        n = self.n
        return ((self.w,) + tuple(range(n - 1, -1, -1))
                + tuple(range(2 * n - 1, n - 1, -1)))

    def monomial(self, x: Mapping[int, int] | Sequence[int] = (),
                 y: Mapping[int, int] | Sequence[int] = (), w: int = 0) -> Monomial:
        """Build a monomial from 1-based exponent maps for x and y.

        Sequences are read as lists of indices, each contributing exponent 1.
        """
        e = [0] * self.size
        for block, acc in ((x, self.x), (y, self.y)):
            items = block.items() if isinstance(block, Mapping) else ((i, 1) for i in block)
            for i, k in items:
                if k < 0:
                    raise ValueError(f"negative exponent {k}")
                e[acc(i)] += k
        if w < 0:
            raise ValueError(f"negative exponent {w}")
        e[self.w] = w
        return tuple(e)


@dataclass(frozen=True)
class WeightVector:
    """Weights for the quasi-homogeneous grading: x's weigh 1."""

    n: int
    wy: int
    ww: int

    @classmethod
    def for_params(cls, n: int, a: int, b: int) -> "WeightVector":
        if a <= n * b:
            return cls(n, 1, n * b - a + 1)
        return cls(n, a - n * b + 1, 1)

    def as_tuple(self) -> tuple[int, ...]:
        return (1,) * self.n + (self.wy,) * self.n + (self.ww,)


def weighted_degree(weights: WeightVector | Sequence[int], m: Monomial) -> int:
    wt = weights.as_tuple() if isinstance(weights, WeightVector) else tuple(weights)
    if len(wt) != len(m):
        raise DimensionError(f"weight vector of length {len(wt)} for monomial of length {len(m)}")
    return sum(a * b for a, b in zip(wt, m))


@dataclass(frozen=True)
class MonomialOrder:
    """Lexicographic order scanning variables in ``precedence`` order."""

    precedence: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.precedence) != list(range(len(self.precedence))):
            raise ValueError(f"precedence {self.precedence} is not a permutation")
        if len(self.precedence) < 2:
            raise ValueError("need at least two variables")

    @property
    def nvars(self) -> int:
        return len(self.precedence)

    @cached_property
    def key(self):
        """Map a monomial to a tuple whose native ordering is this order."""
        return itemgetter(*self.precedence)

    @cached_property
    def unkey(self):
        inverse = [0] * len(self.precedence)
        for pos, var in enumerate(self.precedence):
            inverse[var] = pos
        return itemgetter(*inverse)

    def compare(self, m1: Monomial, m2: Monomial) -> Cmp:
        if len(m1) != self.nvars or len(m2) != self.nvars:
            raise DimensionError(
                f"order on {self.nvars} variables got monomials of length {len(m1)}, {len(m2)}")
        k1, k2 = self.key(m1), self.key(m2)
        return Cmp.GT if k1 > k2 else Cmp.LT if k1 < k2 else Cmp.EQ


def compare_monomials(order: MonomialOrder, m1: Monomial, m2: Monomial) -> Cmp:
    return order.compare(m1, m2)


@dataclass(frozen=True)
class Ring:
    """A polynomial ring over Q: variable names, a lex order and optional weights."""

    names: tuple[str, ...]
    order: MonomialOrder
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.order.nvars != len(self.names):
            raise DimensionError("order and names disagree on the number of variables")
        if self.weights is not None and len(self.weights) != len(self.names):
            raise DimensionError("weights and names disagree on the number of variables")

    @classmethod
    def standard(cls, vs: VarSet, weights: WeightVector | None = None) -> "Ring":
        return cls(vs.names, MonomialOrder(vs.default_precedence()),
                   weights.as_tuple() if weights is not None else None)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def extend(self, name: str, weight: int = 0) -> "Ring":
        """Append a variable ranked above every existing one."""
        if name in self.names:
            raise ValueError(f"variable {name!r} already present")
        k = self.nvars
        weights = None if self.weights is None else self.weights + (weight,)
        return Ring(self.names + (name,), MonomialOrder((k,) + self.order.precedence), weights)

    def one(self) -> Monomial:
        return (0,) * self.nvars

    def var(self, name_or_index) -> "Polynomial":
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {self.one(): c})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def mono(self, m: Monomial, c=1) -> "Polynomial":
        return Polynomial(self, {tuple(m): c})

    def binomial(self, m1: Monomial, m2: Monomial) -> "Polynomial":
        """Return m1 - m2."""
        return Polynomial(self, {tuple(m1): 1}) - Polynomial(self, {tuple(m2): 1})

    def weighted_degree(self, m: Monomial) -> int:
        if self.weights is None:
            return sum(m)
        return sum(a * b for a, b in zip(self.weights, m))

    def render_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def embed(self, p: "Polynomial") -> "Polynomial":
        """Pad ``p`` with zero exponents for trailing variables of this ring."""
        pad = (0,) * (self.nvars - p.ring.nvars)
        if self.names[:p.ring.nvars] != p.ring.names:
            raise DimensionError("ring is not an extension of the polynomial's ring")
        return Polynomial(self, {m + pad: c for m, c in p.terms})

    def restrict(self, p: "Polynomial", base: "Ring") -> "Polynomial":
        """Inverse of ``base-ring -> self`` embedding; trailing exponents must vanish."""
        k = base.nvars
        out = {}
        for m, c in p.terms:
            if any(m[k:]):
                raise ValueError("polynomial involves eliminated variables")
            out[m[:k]] = c
        return Polynomial(base, out)


# ----------------------------------------------------------------------------
# Polynomials


class Polynomial:
    """Immutable polynomial: terms sorted strictly descending in the ring order."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Coefficient] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        nv = ring.nvars
        for m, c in items:
            m = tuple(m)
            if len(m) != nv:
                raise DimensionError(f"monomial of length {len(m)} in ring on {nv} variables")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            acc[m] = acc.get(m, 0) + c
        key = ring.order.key
        self.ring = ring
        self.terms = tuple(sorted(((m, normalize_coefficient(c)) for m, c in acc.items() if c != 0),
                                  key=lambda t: key(t[0]), reverse=True))
        self._hash = None

    @classmethod
    def _from_sorted(cls, ring: Ring, terms: tuple) -> "Polynomial":
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.terms]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        wt = weights if weights is not None else self.ring.weights
        if wt is None:
            degs = {sum(m) for m, _ in self.terms}
        else:
            degs = {sum(a * b for a, b in zip(wt, m)) for m, _ in self.terms}
        return len(degs) <= 1

    def leading_term(self) -> tuple[Coefficient, Monomial]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m, c = self.terms[0]
        return c, m

    @property
    def lm(self) -> Monomial:
        return self.leading_term()[1]

    @property
    def lc(self) -> Coefficient:
        return self.leading_term()[0]

    def coefficient(self, m: Monomial) -> Coefficient:
        for mm, c in self.terms:
            if mm == m:
                return c
        return 0

    def max_exponent(self) -> int:
        return max((max(m) for m, _ in self.terms), default=0)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise DimensionError("polynomials from different rings")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, 0) + c
        return Polynomial(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_sorted(self.ring, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.ring.zero()
            return Polynomial._from_sorted(
                self.ring, tuple((m, normalize_coefficient(c * other)) for m, c in self.terms))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, m: Monomial, c=1) -> "Polynomial":
        """Multiply by the term ``c*m``; keeps the term order (multiplicativity)."""
        c = normalize_coefficient(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial._from_sorted(
            self.ring, tuple((tuple(a + b for a, b in zip(mm, m)), normalize_coefficient(cc * c))
                             for mm, cc in self.terms))

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.terms[0][1]
        if lc == 1:
            return self
        return self * (Fraction(1) / lc)

    # -- comparisons and hashing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == ((self.ring.one(), other),)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, self.terms))
        return self._hash

    # -- rendering ------------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self.terms):
            neg = c < 0
            a = -c if neg else c
            mono = self.ring.render_monomial(m)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if k == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"


def leading_term(p: Polynomial) -> tuple[Coefficient, Monomial]:
    return p.leading_term()
