import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathhom.digraph import Digraph, circulant, weak_components
from pathhom.pathcomplex import (BettiTable, Chain, all_regular_paths, allowed_paths, betti,
                                 boundary, clique_homology, cliques, faces, in_omega,
                                 is_boundary, is_cycle, omega_basis, random_chain)


def test_faces_skip_irregular():
    assert faces((0, 1, 2)) == [((1, 2), 1), ((0, 2), -1), ((0, 1), 1)]
    assert faces((0, 1, 0)) == [((1, 0), 1), ((0, 1), 1)]


def test_boundary_of_a_triangle_path():
    c = Chain.path(0, 1, 2) - Chain.path(0, 2, 3)
    assert boundary(c) == (Chain.path(1, 2) - Chain.path(0, 2) + Chain.path(0, 1)
                           - Chain.path(2, 3) + Chain.path(0, 3) - Chain.path(0, 2))


def test_boundary_of_zero_and_vertices():
    assert boundary(Chain()) == Chain()
    with pytest.raises(ValueError):
        boundary(Chain.path(3))


@st.composite
def regular_chains(draw):
    n = draw(st.integers(2, 6))
    m = draw(st.integers(1, 4))
    paths = draw(st.lists(
        st.lists(st.integers(0, n - 1), min_size=m + 1, max_size=m + 1)
        .filter(lambda p: all(a != b for a, b in zip(p, p[1:]))), min_size=1, max_size=6))
    coeffs = draw(st.lists(st.integers(-5, 5), min_size=len(paths), max_size=len(paths)))
    return Chain({tuple(p): c for p, c in zip(paths, coeffs)})


@settings(max_examples=300)
@given(regular_chains())
def test_boundary_squares_to_zero(c):
    if c.is_zero() or c.degree < 2:
        return
    assert boundary(boundary(c)).is_zero()


def test_chain_json_and_mod():
    c = Chain({(0, 1, 3): Fraction(1, 2), (0, 2, 3): -3})
    assert Chain.from_json(c.to_json()) == c
    assert Chain.path(5, 8).mod(5) == Chain.path(0, 3)


@pytest.mark.parametrize("n,S", [(6, (1,)), (6, (2,)), (6, (2, 4)), (9, (3, 6)), (8, (2, 3))])
def test_beta0_counts_components(n, S):
    g = circulant(n, S)
    assert betti(g, 1).betti[0] == len(weak_components(g))


def test_disconnected_digraph():
    g = Digraph(5, frozenset({(0, 1), (2, 3)}))
    t = betti(g, 2)
    assert t.betti == [3, 0, 0]


def test_c5_12_omega_dims_and_betti():
    t = betti(circulant(5, (1, 2)), 4)
    assert t.omega_dims == [5, 10, 10, 10, 10, 10]
    assert t.betti == [1, 1, 0, 0, 0]


def test_omega_basis_elements_live_in_omega():
    g = circulant(7, (1, 3))
    for m in range(4):
        for c in omega_basis(g, m).chains:
            assert in_omega(g, c)


def test_omega_basis_matches_brute_force_on_small_digraph():
    # brute force: Omega_2 of a square 0->1->3, 0->2->3 with the diagonal missing
    g = Digraph(4, frozenset({(0, 1), (1, 3), (0, 2), (2, 3)}))
    basis = omega_basis(g, 2).chains
    square = Chain.path(0, 1, 3) - Chain.path(0, 2, 3)
    assert len(basis) == 1 and basis[0] in (square, -square)
    assert betti(g, 2).betti == [1, 0, 0]


def test_allowed_paths_and_regular_paths():
    g = circulant(4, (1,))
    assert allowed_paths(g, 2) == [(0, 1, 2), (1, 2, 3), (2, 3, 0), (3, 0, 1)]
    assert len(list(all_regular_paths(3, 2))) == 3 * 2 * 2


def test_cycles_and_boundaries():
    g = circulant(5, (1, 2))
    loop = Chain({(a, (a + 1) % 5): 1 for a in range(5)})
    assert is_cycle(loop) and not is_boundary(g, loop)
    tri = Chain.path(0, 1, 2)
    assert is_boundary(g, boundary(tri))
    with pytest.raises(ValueError):
        is_boundary(g, Chain.path(0, 3))


def test_random_chains_reproducible():
    g = circulant(7, (1, 2))
    a = random_chain(g, 3, random.Random(5))
    b = random_chain(g, 3, random.Random(5))
    assert a == b and all(len(p) == 4 for p in a.support())


def test_betti_table_roundtrip_and_check():
    t = betti(circulant(7, (1, 3)), 3, S=(1, 3))
    assert t.betti == [1, 2, 1, 0]
    back = BettiTable.from_json(t.to_json())
    assert back == t and back.same_homology(t)
    with pytest.raises(ValueError):
        BettiTable(5, 1, [1, 5], [5, 10, 10], [0, 4, 5])


def test_cliques_and_clique_homology():
    g = circulant(5, (1, 4))
    assert len(cliques(g, 3)[2]) == 5 and 3 not in cliques(g, 3)
    assert clique_homology(g, 2).betti == [1, 1, 0]
    k4 = Digraph(4, frozenset((u, v) for u in range(4) for v in range(4) if u != v))
    assert clique_homology(k4, 3).betti == [1, 0, 0, 0]
    with pytest.raises(ValueError):
        clique_homology(circulant(5, (1,)), 1)
