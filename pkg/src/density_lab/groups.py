"""Concrete group families and their arithmetic.

Four families are supported: integer lattices Z^d, finite abelian products of
cyclic groups, the real line with exact rational coordinates, and finite-depth
materializations of sigma-finite chains (increasing unions of finite
subgroups). Elements are plain immutable values: integer tuples for the
discrete families (chain elements canonically strip trailing zeros) and
Fractions on the real line. All operations are pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .config import DEFAULT_CAPS
from .errors import CapExceededError, PreconditionError, ShapeMismatchError
from .rational import rat

Element = Union[tuple, Fraction]


def _as_int_tuple(g, dimension: int, what: str = "element") -> tuple[int, ...]:
    if isinstance(g, int) and not isinstance(g, bool) and dimension == 1:
        return (g,)
    if isinstance(g, (tuple, list)) and len(g) == dimension and all(
        isinstance(c, int) and not isinstance(c, bool) for c in g
    ):
        return tuple(g)
    raise ShapeMismatchError(f"{what} {g!r} is not an integer {dimension}-tuple")


@dataclass(frozen=True)
class ZLattice:
    """The lattice Z^d with counting Haar measure."""

    dimension: int = 1

    def __post_init__(self):
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise PreconditionError("lattice dimension must be a positive integer")

    def check(self, g) -> tuple[int, ...]:
        return _as_int_tuple(g, self.dimension)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.dimension

    def add(self, g, h):
        g, h = self.check(g), self.check(h)
        return tuple(a + b for a, b in zip(g, h))

    def negate(self, g):
        g = self.check(g)
        return tuple(-a for a in g)

    def lex_key(self, g):
        return self.check(g)


@dataclass(frozen=True)
class FiniteAbelian:
    """Product of cyclic groups Z_{m_1} x ... x Z_{m_k}; empty moduli = trivial group."""

    moduli: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(self.moduli))
        if any(not isinstance(m, int) or m < 2 for m in self.moduli):
            raise PreconditionError("all moduli must be integers >= 2")

    @property
    def order(self) -> int:
        n = 1
        for m in self.moduli:
            n *= m
        return n

    def check(self, g) -> tuple[int, ...]:
        g = _as_int_tuple(g, len(self.moduli))
        if any(not (0 <= c < m) for c, m in zip(g, self.moduli)):
            raise ShapeMismatchError(f"{g!r} has coordinates outside the moduli {self.moduli}")
        return g

    def reduce(self, g) -> tuple[int, ...]:
        g = _as_int_tuple(g, len(self.moduli))
        return tuple(c % m for c, m in zip(g, self.moduli))

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.moduli)

    def add(self, g, h):
        g, h = self.check(g), self.check(h)
        return tuple((a + b) % m for a, b, m in zip(g, h, self.moduli))

    def negate(self, g):
        g = self.check(g)
        return tuple((-a) % m for a, m in zip(g, self.moduli))

    def elements(self, cap: int = DEFAULT_CAPS.enumeration) -> list[tuple[int, ...]]:
        """All elements exactly once, in lexicographic order.

        This is the canonical tie-breaking order used by every greedy search.
        """
        if self.order > cap:
            raise CapExceededError(f"group order {self.order} exceeds enumeration cap {cap}")
        return list(itertools.product(*(range(m) for m in self.moduli)))

    def lex_key(self, g):
        return self.check(g)


@dataclass(frozen=True)
class RealLine:
    """The real line; group arithmetic is exact rational arithmetic."""

    def check(self, g) -> Fraction:
        if isinstance(g, Fraction):
            return g
        if isinstance(g, int) and not isinstance(g, bool):
            return Fraction(g)
        if isinstance(g, str):
            return rat(g)
        raise ShapeMismatchError(f"{g!r} is not an exact rational")

    def zero(self) -> Fraction:
        return Fraction(0)

    def add(self, g, h):
        return self.check(g) + self.check(h)

    def negate(self, g):
        return -self.check(g)

    def lex_key(self, g):
        return self.check(g)


@dataclass(frozen=True)
class SigmaFiniteChain:
    """Direct sum of Z_{m_i}, materialized to depth n = len(moduli).

    The chain subgroup H_n consists of the elements supported on the first n
    coordinates. Elements are finitely supported tuples with trailing zeros
    stripped, so representations are canonical across depths.
    """

    moduli: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(self.moduli))
        if len(self.moduli) < 1 or any(not isinstance(m, int) or m < 2 for m in self.moduli):
            raise PreconditionError("chain moduli must be a nonempty list of integers >= 2")

    @property
    def depth(self) -> int:
        return len(self.moduli)

    def check(self, g) -> tuple[int, ...]:
        if not isinstance(g, (tuple, list)):
            raise ShapeMismatchError(f"{g!r} is not a chain element")
        g = tuple(g)
        if len(g) > self.depth:
            raise ShapeMismatchError(
                f"{g!r} has support beyond the materialized depth {self.depth}"
            )
        if any(not isinstance(c, int) or not (0 <= c < m) for c, m in zip(g, self.moduli)):
            raise ShapeMismatchError(f"{g!r} has coordinates outside the moduli")
        return _strip(g)

    def zero(self) -> tuple[int, ...]:
        return ()

    def add(self, g, h):
        g, h = self.check(g), self.check(h)
        n = max(len(g), len(h))
        out = tuple(
            (self._coord(g, i) + self._coord(h, i)) % self.moduli[i] for i in range(n)
        )
        return _strip(out)

    def negate(self, g):
        g = self.check(g)
        return _strip(tuple((-c) % self.moduli[i] for i, c in enumerate(g)))

    @staticmethod
    def _coord(g, i):
        return g[i] if i < len(g) else 0

    def pad(self, g, n: int) -> tuple[int, ...]:
        g = self.check(g)
        return g + (0,) * (n - len(g))

    def lex_key(self, g):
        return self.pad(g, self.depth)

    def subgroup_order(self, n: int) -> int:
        self._check_depth(n)
        out = 1
        for m in self.moduli[:n]:
            out *= m
        return out

    def subgroup(self, n: int) -> FiniteAbelian:
        self._check_depth(n)
        return FiniteAbelian(self.moduli[:n])

    def subgroup_elements(self, n: int, cap: int = DEFAULT_CAPS.enumeration):
        """Elements of H_n in canonical (padded-lexicographic) order."""
        return [_strip(e) for e in self.subgroup(n).elements(cap)]

    def in_subgroup(self, g, n: int) -> bool:
        return len(self.check(g)) <= n

    def _check_depth(self, n: int):
        if not (1 <= n <= self.depth):
            raise CapExceededError(
                f"depth {n} outside the materialized chain (1..{self.depth})"
            )


def _strip(g: tuple[int, ...]) -> tuple[int, ...]:
    end = len(g)
    while end > 0 and g[end - 1] == 0:
        end -= 1
    return g[:end]


GroupSpec = Union[ZLattice, FiniteAbelian, RealLine, SigmaFiniteChain]


@dataclass(frozen=True)
class LatticeBox:
    """Fundamental domain [0,m_1) x ... x [0,m_d) of a diagonal period lattice."""

    period: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "period", tuple(self.period))
        if any(not isinstance(m, int) or m < 1 for m in self.period):
            raise PreconditionError("all periods must be positive integers")

    @property
    def size(self) -> int:
        n = 1
        for m in self.period:
            n *= m
        return n

    def cells(self, cap: int = DEFAULT_CAPS.enumeration) -> list[tuple[int, ...]]:
        if self.size > cap:
            raise CapExceededError(f"fundamental domain of size {self.size} exceeds cap {cap}")
        return list(itertools.product(*(range(m) for m in self.period)))

    def reduce(self, g) -> tuple[int, ...]:
        g = _as_int_tuple(g, len(self.period))
        return tuple(c % m for c, m in zip(g, self.period))


@dataclass(frozen=True)
class LineSegment:
    """Fundamental domain [0, p) of the period-p translation on the real line."""

    period: Fraction

    def __post_init__(self):
        object.__setattr__(self, "period", rat(self.period))
        if self.period <= 0:
            raise PreconditionError("period must be positive")

    def reduce(self, q: Fraction) -> Fraction:
        q = rat(q)
        return q - (q / self.period).__floor__() * self.period


def fundamental_domain(period) -> Union[LatticeBox, LineSegment]:
    """Domain descriptor for a diagonal lattice period (ints) or a rational period.

    A bare int is read as a one-dimensional lattice period; pass a Fraction for
    the real line.
    """
    if isinstance(period, int) and not isinstance(period, bool):
        return LatticeBox((period,))
    if isinstance(period, (tuple, list)):
        return LatticeBox(tuple(period))
    if isinstance(period, (Fraction, str)):
        return LineSegment(rat(period))
    raise PreconditionError(f"cannot build a fundamental domain from {period!r}")


def moduli_factorizations(n: int) -> list[tuple[int, ...]]:
    """All multisets of integers >= 2 with product n, ascending, n=1 gives ()."""
    if n < 1:
        raise PreconditionError("order must be >= 1")
    if n == 1:
        return [()]
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, min_factor: int, acc: tuple[int, ...]):
        f = min_factor
        while f * f <= remaining:
            if remaining % f == 0:
                rec(remaining // f, f, acc + (f,))
            f += 1
        if remaining >= min_factor:
            out.append(acc + (remaining,))

    rec(n, 2, ())
    return sorted(out)


def all_finite_abelian_up_to(max_order: int) -> list[FiniteAbelian]:
    """Every moduli presentation of every abelian group of order <= max_order."""
    groups = []
    for n in range(1, max_order + 1):
        for moduli in moduli_factorizations(n):
            groups.append(FiniteAbelian(moduli))
    return groups
