import pytest

from pathhom.constructions import (AlgebraicRetraction, HomotopyCertificate, RetractionError,
                                   RetractionReport, alpha_beta_boundary, alpha_beta_coordinates,
                                   alpha_beta_symbol, alpha_chain, beta_chain, commutator_square,
                                   defect, e_max, gamma_chain, homotopy_H, path_steps, pi_step,
                                   recursion_variant, retract_Pi, retraction_suite, split_h,
                                   square_filler, w_cycle)
from pathhom.digraph import circulant
from pathhom.exactalg import LaurentPoly
from pathhom.pathcomplex import Chain, betti, boundary, in_omega, is_boundary, omega_basis

e = Chain.path
T = LaurentPoly.monomial(1)


# --- explicit chains --------------------------------------------------------

def test_alpha_and_beta_small():
    assert alpha_chain(5, 0, 2) == e(0, 1, 2)
    assert alpha_chain(5, 4, 1) == e(4, 0)
    assert beta_chain(5, 0, 1) == e(0, 2)
    assert beta_chain(5, 0, 2) == e(0, 1, 3) - e(0, 2, 3)
    with pytest.raises(ValueError):
        beta_chain(5, 0, 0)


@pytest.mark.parametrize("m", range(1, 7))
def test_alpha_beta_span_omega_of_c5(m):
    g = circulant(5, (1, 2))
    for a in range(5):
        assert in_omega(g, alpha_chain(5, a, m))
        assert in_omega(g, beta_chain(5, a, m))
    for u in omega_basis(g, m).chains:
        alpha_beta_coordinates(u, 5, m)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_boundary_recursion_uses_the_alpha_shift(m):
    assert recursion_variant(5, m) == "alpha_shift"
    al, be = alpha_beta_boundary(5, m)["alpha"]
    sm = (-1) ** m
    assert al == [sm, 1, 0, 0, 0] and be == [-sm, 0, 0, 0, 0]


def test_two_by_two_symbol():
    assert alpha_beta_symbol(5, 3) == [[T - 1, T ** 2 - 1], [LaurentPoly.const(1), T + 1]]
    for m in (3, 4, 5, 6):
        (a, b), (c, d) = alpha_beta_symbol(5, m)
        assert (a * d - b * c).is_zero()


def test_commutator_squares_and_w_cycles():
    n = 7
    assert commutator_square(n, 0, 1, 3) == e(0, 1, 4) - e(0, 3, 4)
    assert gamma_chain(n, 2, 3) == commutator_square(n, 2, 1, 3)
    with pytest.raises(ValueError):
        commutator_square(n, 0, 3, 3)
    assert commutator_square(n, 0, 3, 3, allow_equal=True) == Chain()
    with pytest.raises(ValueError):
        commutator_square(n, 0, 1, 2, S=(1, 3))
    assert w_cycle(n, 1, 3) == -w_cycle(n, 3, 1)
    for s, t in [(1, 3), (1, 4), (3, 6), (4, 1)]:
        assert boundary(w_cycle(n, s, t)).is_zero()


def test_h2_generator_of_c7_13():
    g = circulant(7, (1, 3))
    gen = (e(0, 1, 4) - e(0, 3, 4) + e(1, 2, 5) - e(1, 4, 5) + e(2, 3, 6) - e(2, 5, 6)
           + e(3, 4, 0) - e(3, 6, 0) + e(4, 5, 1) - e(4, 0, 1) + e(5, 6, 2) - e(5, 1, 2)
           + e(6, 0, 3) - e(6, 2, 3))
    assert gen == w_cycle(7, 1, 3)
    assert in_omega(g, gen)
    assert boundary(gen).is_zero()
    assert not is_boundary(g, gen)


def test_square_fillers_on_symmetric_c7():
    S = (1, 3, 4, 6)
    p13 = square_filler(7, 1, 3, S)
    p44 = square_filler(7, 4, 4, S)
    assert p13 == Chain({(a, (a + 1) % 7, (a + 4) % 7, (a + 5) % 7): 1 for a in range(7)})
    assert boundary(p13) == w_cycle(7, 1, 4) - w_cycle(7, 1, 3)
    w44 = w_cycle(7, 4, 4, allow_equal=True)
    assert boundary(p44) == w_cycle(7, 4, 1) - w44 == -w_cycle(7, 1, 4)
    assert boundary(-p13 - p44) == w_cycle(7, 1, 3)
    with pytest.raises(ValueError):
        square_filler(7, 1, 1, (1, 3))


# --- defects and the local retraction --------------------------------------

def test_defects():
    assert defect((0, 3, 5), 3, 12).entries == (1, 0)
    assert defect((1, 4, 2), 4).entries == (0, 2, 0)
    assert path_steps((11, 2, 3), 12) == (3, 1)
    with pytest.raises(ValueError):
        defect((0, 5), 3, 12)
    assert e_max(e(0, 3, 4) + e(0, 1, 4), 12, 3).entries == (1, 0)
    assert e_max(Chain(), 12, 3) is None


def test_split_and_pi_on_a_single_edge():
    u = e(0, 3)
    assert split_h(u, 12, 3) == -e(0, 1, 3)
    assert pi_step(u, 12, 3) == e(0, 1) + e(1, 3)
    assert retract_Pi(u, 12, 3) == e(0, 1) + e(1, 3)
    cert = homotopy_H(u, 12, 3)
    assert cert.valid and cert.steps == 1
    assert HomotopyCertificate.from_dict(cert.to_dict()).to_dict() == cert.to_dict()


def test_split_needs_large_n():
    with pytest.raises(ValueError):
        split_h(e(0, 3), 6, 3)


def test_pi_rejects_chains_outside_omega():
    with pytest.raises(ValueError):
        pi_step(e(0, 3, 6), 12, 3)


def test_local_retraction_leaves_omega():
    x = e(0, 3, 5) - e(0, 2, 5)
    assert in_omega(circulant(12, (1, 2, 3)), x)
    with pytest.raises(RetractionError) as info:
        pi_step(x, 12, 3)
    assert info.value.kind == "left_omega"


def test_local_pi_is_a_chain_map_and_lowers_defect_when_it_succeeds():
    n, d = 12, 3
    g = circulant(n, range(1, d + 1))
    succeeded = 0
    for m in (1, 2):
        for u in omega_basis(g, m).chains:
            try:
                out = pi_step(u, n, d)
            except RetractionError:
                continue
            succeeded += 1
            du = boundary(u)
            assert boundary(out) == du - boundary(split_h(du, n, d))
            before = e_max(u, n, d)
            if not before.is_zero():
                after = e_max(out, n, d)
                assert after is None or after < before
    assert succeeded > 0


def test_local_suite_reports_failures_honestly():
    rep = retraction_suite(12, 3, 2, method="local")
    assert not rep.valid
    assert {k for k, _, _ in rep.failures} <= {"left_omega", "no_decrease", "no_termination",
                                                "section", "identity", "subcomplex"}
    assert RetractionReport.from_dict(rep.to_dict()).to_dict() == rep.to_dict()


# --- the algebraic retraction ----------------------------------------------

def test_algebraic_retraction_small():
    rep = retraction_suite(12, 3, 3)
    assert rep.valid and not rep.failures and rep.checked > 0
    assert RetractionReport.from_dict(rep.to_dict()).to_dict() == rep.to_dict()


def test_algebraic_pi_and_h_on_examples():
    alg = AlgebraicRetraction(12, 3, 2)
    for u in (e(0, 3), e(0, 3, 5) - e(0, 2, 5), e(4, 6, 7)):
        cert = alg.certificate(u)
        assert cert.valid and cert.method == "algebraic"
    assert alg.Pi(e(0, 1, 2)) == e(0, 1, 2)
    assert alg.H(e(0, 1, 2)) == Chain()
    with pytest.raises(ValueError):
        AlgebraicRetraction(6, 3, 2)


def test_algebraic_pi_is_a_chain_map():
    n, d = 13, 3
    alg = AlgebraicRetraction(n, d, 2)
    for m in (1, 2):
        for u in omega_basis(circulant(n, range(1, d + 1)), m).chains:
            assert boundary(alg.Pi(u)) == alg.Pi(boundary(u))


def test_retraction_preserves_betti():
    big = betti(circulant(12, (1, 2, 3)), 3)
    small = betti(circulant(12, (1, 2)), 3)
    assert big.betti == small.betti == [1, 1, 0, 0]
