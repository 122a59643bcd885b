import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from density_lab import (
    CapExceededError,
    FiniteAbelian,
    PreconditionError,
    RealLine,
    ShapeMismatchError,
    SigmaFiniteChain,
    ZLattice,
    all_finite_abelian_up_to,
    fundamental_domain,
    moduli_factorizations,
)

rng = random.Random(42)


def test_modular_addition_example():
    G = FiniteAbelian((3, 6))
    assert G.add((1, 2), (2, 5)) == (0, 1)


def test_rational_addition_example():
    G = RealLine()
    assert G.add(Fraction(1, 3), Fraction(1, 6)) == Fraction(1, 2)


def test_negate_examples():
    G = FiniteAbelian((3, 6))
    assert G.negate((1, 2)) == (2, 4)
    assert G.negate((0, 0)) == (0, 0)
    assert RealLine().negate(Fraction(-5, 7)) == Fraction(5, 7)


def _random_element(G):
    if isinstance(G, FiniteAbelian):
        return tuple(rng.randrange(m) for m in G.moduli)
    if isinstance(G, ZLattice):
        return tuple(rng.randrange(-50, 50) for _ in range(G.dimension))
    if isinstance(G, RealLine):
        return Fraction(rng.randrange(-100, 100), rng.randrange(1, 30))
    return tuple(rng.randrange(m) for m in G.moduli[: rng.randrange(0, G.depth + 1)])


FAMILIES = [
    FiniteAbelian((3, 6)),
    FiniteAbelian((8,)),
    ZLattice(2),
    ZLattice(1),
    RealLine(),
    SigmaFiniteChain((2, 3, 2, 5)),
]


def test_identity_on_random_elements():
    for G in FAMILIES:
        zero = G.zero()
        for _ in range(100):
            g = G.check(_random_element(G))
            assert G.add(g, zero) == g


def test_group_axioms_random_triples():
    # associativity, commutativity, inverses on 10^3 triples per family
    for G in FAMILIES:
        for _ in range(1000):
            a, b, c = (G.check(_random_element(G)) for _ in range(3))
            assert G.add(G.add(a, b), c) == G.add(a, G.add(b, c))
            assert G.add(a, b) == G.add(b, a)
            assert G.add(a, G.negate(a)) == G.zero()


def test_enumerate_golden():
    assert FiniteAbelian((2, 2)).elements() == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert FiniteAbelian((5,)).elements() == [(0,), (1,), (2,), (3,), (4,)]
    e = FiniteAbelian((2, 3)).elements()
    assert len(e) == 6 and e[0] == (0, 0) and e[-1] == (1, 2)


def test_enumerate_is_bijection():
    for G in all_finite_abelian_up_to(12):
        elems = G.elements()
        assert len(elems) == G.order
        assert len(set(elems)) == G.order


def test_enumerate_cap():
    with pytest.raises(CapExceededError):
        FiniteAbelian((2,) * 10).elements(cap=100)


def test_real_arithmetic_is_exact_roundtrip():
    G = RealLine()
    for _ in range(200):
        g = G.check(_random_element(G))
        h = G.check(_random_element(G))
        assert G.add(G.add(g, h), G.negate(h)) == g


def test_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        FiniteAbelian((3, 6)).add((1, 2), (1,))
    with pytest.raises(ShapeMismatchError):
        FiniteAbelian((3,)).check((5,))
    with pytest.raises(ShapeMismatchError):
        SigmaFiniteChain((2, 2)).check((0, 0, 1))


def test_fundamental_domain_examples():
    box = fundamental_domain(6)
    assert box.cells() == [(i,) for i in range(6)]
    seg = fundamental_domain(Fraction(1))
    assert seg.period == 1 and seg.reduce(Fraction(7, 3)) == Fraction(1, 3)
    box2 = fundamental_domain((2, 3))
    assert box2.size == 6
    with pytest.raises(PreconditionError):
        fundamental_domain((0, 3))


def test_moduli_factorizations():
    assert moduli_factorizations(1) == [()]
    assert moduli_factorizations(8) == [(2, 2, 2), (2, 4), (8,)]
    assert moduli_factorizations(6) == [(2, 3), (6,)]
    assert moduli_factorizations(12) == [(2, 2, 3), (2, 6), (3, 4), (12,)]
    for n in range(1, 13):
        for moduli in moduli_factorizations(n):
            prod = 1
            for m in moduli:
                prod *= m
            assert prod == n


def test_all_groups_up_to_8():
    groups = all_finite_abelian_up_to(8)
    # orders 1..8 with every presentation: 1+1+1+2+1+2+1+3
    assert len(groups) == 12
    assert FiniteAbelian(()) in groups


@given(st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_lattice_add_commutes(a, b):
    G = ZLattice(1)
    assert G.add((a,), (b,)) == G.add((b,), (a,))


def test_chain_subgroups():
    chain = SigmaFiniteChain((2, 3, 2))
    assert chain.subgroup_order(2) == 6
    assert chain.subgroup(2) == FiniteAbelian((2, 3))
    elems = chain.subgroup_elements(2)
    assert len(elems) == 6 and elems[0] == ()
    assert chain.in_subgroup((0, 1), 2)
    assert not chain.in_subgroup((0, 0, 1), 2)
    assert chain.add((1, 2), (1, 1)) == ()  # coordinates wrap to zero and strip
    assert chain.add((1,), (0, 2)) == (1, 2)
