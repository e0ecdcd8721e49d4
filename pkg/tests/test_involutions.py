import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from svalg.algebra import C, Element, L, M, Window, Y, grade, parse_element, vir_prime_generator
from svalg.involutions import (
    InvalidParams,
    MinusParams,
    PlusParams,
    apply,
    axioms_check,
    closed_form_beta,
    flipped_beta_image,
    params_from_json,
    parse_params,
    replay_coefficient_recurrence,
    replay_y_coefficients,
    restrict_check_vir_prime,
    sample_minus,
    sample_plus,
    uncorrected_minus_image,
    y_coefficient,
)
from svalg.scalars import GaussRat, I, parse_scalar

E = parse_element


def th(p, text):
    return apply(p, E(text))


def test_apply_examples():
    assert th(PlusParams(1, 0, 1), "L[5]") == E("L[-5]")
    assert th(PlusParams(1, 1, 1), "L[2]") == E("L[-2] + 2*M[-2]")
    assert th(PlusParams(2, 0, 1), "Y[1]") == E("2*Y[-1]")
    m = MinusParams(1, 0, 0, I)
    assert th(m, "L[3]") == E("-L[3]")
    assert th(m, "Y[1]") == E("(1*i)*Y[1]")


def test_conjugate_linear():
    p = PlusParams(2, "1+1*i", "3/5+4/5*i")
    x = E("(2+1*i)*L[1] - 3*Y[-3]")
    assert apply(p, x * I) == apply(p, x) * -I


def test_central_element_images():
    assert th(PlusParams(2, 5, 1), "c") == E("c")
    assert th(MinusParams(1, 1, 1, I), "c") == E("-c")


def test_involutive_instance():
    p = PlusParams(2, 5, 1)
    assert apply(p, apply(p, E("L[1]"))) == E("L[1]")


def test_params_validation():
    with pytest.raises(InvalidParams):
        PlusParams(0, 0, 1)
    with pytest.raises(InvalidParams):
        PlusParams("1+1*i", 0, 1)
    with pytest.raises(InvalidParams):
        PlusParams(1, 0, 2)
    with pytest.raises(InvalidParams):
        MinusParams(2, 0, 0, I)
    with pytest.raises(ValueError):
        MinusParams(1, I, 0, I)


def test_derived_quantities():
    p = PlusParams(I, 0, "3/5+4/5*i")
    assert p.alpha == -1
    assert p.mu == parse_scalar("3/5+4/5*i") ** 2
    m = MinusParams("3/5+4/5*i", 0, 0, I)
    assert m.mu == 1
    assert m.alpha == parse_scalar("3/5+4/5*i") ** 2


@pytest.mark.parametrize("p", [PlusParams(2, "1+1*i", "3/5+4/5*i"), MinusParams("3/5+4/5*i", 1, -2, "4/5+3/5*i")])
def test_json_round_trip(p):
    assert params_from_json(json.loads(json.dumps(p.to_json()))) == p
    assert parse_params(p.describe()) == p


def test_parse_params_errors():
    for bad in ("plus:rho=1,beta=0", "circle:rho=1", "plus:rho=1,beta=0,nu=1,zz=3", "plus:rho"):
        with pytest.raises(ValueError):
            parse_params(bad)


def test_sampling_set_sizes():
    assert len(sample_plus()) >= 6
    assert len(sample_minus()) >= 6
    assert len(sample_plus(positive_only=False)) == 36


def test_axioms_example_pack():
    assert axioms_check(PlusParams(1, "1+1*i", "3/5+4/5*i"), Window(12)).passed


@pytest.mark.parametrize("p", sample_plus()[::4] + sample_minus()[::6], ids=lambda p: p.describe())
def test_axioms_sampled(p):
    rep = axioms_check(p, Window(8))
    assert rep.passed, rep.violations


def test_negative_alpha_is_not_an_involution():
    # theta^2 = sign(alpha) on Y, so rho = i fails only the involutive axiom
    p = PlusParams(I, 1, 1)
    rep = axioms_check(p, Window(8))
    assert rep.info["failed_axioms"] == ["involutive"]
    assert apply(p, apply(p, E("Y[1]"))) == E("-Y[1]")


def test_flipped_beta_fails_with_witness():
    p = PlusParams(1, 1, 1)
    rep = axioms_check(p, Window(12), flipped_beta_image(p))
    assert not rep.passed and rep.violations
    # the flip is itself anti-multiplicative; it is theta^2 that breaks
    assert rep.info["failed_axioms"] == ["involutive"]


def test_uncorrected_minus_formula_fails_off_unit_values():
    p = MinusParams("3/5+4/5*i", 1, -2, I)
    rep = axioms_check(p, Window(8), uncorrected_minus_image(p))
    assert "involutive" in rep.info["failed_axioms"]
    # at alpha = mu = 1 the two expressions coincide
    q = MinusParams(1, 1, -2, I)
    assert axioms_check(q, Window(8), uncorrected_minus_image(q)).passed


def test_degree_map():
    p, m = PlusParams(2, 1, 1), MinusParams(1, 1, 1, I)
    for g in Window(8).basis():
        for t in apply(p, Element.basis(g)).terms:
            assert grade(t) == -grade(g)
        for t in apply(m, Element.basis(g)).terms:
            assert grade(t) == grade(g)


symbols = st.one_of(
    st.integers(-5, 5).map(L),
    st.integers(-5, 5).map(M),
    st.integers(-5, 4).map(lambda n: Y(2 * n + 1)),
    st.just(C),
)
coeffs = st.builds(GaussRat, st.integers(-3, 3), st.integers(-3, 3))
elements = st.lists(st.tuples(symbols, coeffs), max_size=6).map(Element)
packs = st.sampled_from(sample_plus() + sample_minus())


@settings(max_examples=150, deadline=None)
@given(packs, elements)
def test_theta_squared_is_identity(p, x):
    assert apply(p, apply(p, x)) == x


# -- Vir' restriction --


def test_restriction_example():
    p = PlusParams(1, 2, 1)
    got = apply(p, vir_prime_generator(3, p))
    assert got == vir_prime_generator(-3, p) == E("L[-3] + 4*M[-3]")


def test_restriction_l0_fixed():
    p = PlusParams(2, 3, 1)
    assert apply(p, vir_prime_generator(0, p)) == vir_prime_generator(0, p)


@pytest.mark.parametrize("p", [MinusParams(1, 1, 0, I), PlusParams(2, "1+1*i", -1), MinusParams("3/5+4/5*i", -2, 1, "4/5+3/5*i")])
def test_restriction_window(p):
    assert restrict_check_vir_prime(p, Window(8)).passed


# -- recurrence replays --


def test_closed_form_identity_alpha_one():
    for m in range(-6, 7):
        assert closed_form_beta(1, 1, -1, m) == m
    assert closed_form_beta(1, 1, -1, 5) * (3 - 2) == 3 * 3 - 2 * 2


@pytest.mark.parametrize("alpha,b1,bm1", [(1, 1, -1), (1, 0, 0), (2, 1, 0), (Fraction(1, 3), "1+1*i", "2-1*i")])
def test_recurrence_replay(alpha, b1, bm1):
    assert replay_coefficient_recurrence(alpha, parse_scalar(str(b1)), parse_scalar(str(bm1)), 8).passed


def test_recurrence_seed_compatibility():
    assert replay_coefficient_recurrence(1, 1, -1, 4, mu=1).passed
    assert not replay_coefficient_recurrence(1, 1, 1, 4, mu=1).passed


def test_closed_form_matches_plus_family():
    p = PlusParams(2, "1+1*i", "3/5+4/5*i")
    b1 = p.beta
    bm1 = -(GaussRat(p.alpha) ** -2) * p.mu * p.beta.conj()
    for m in range(-5, 6):
        assert apply(p, E(f"L[{m}]")).coefficient(M(-m)) == closed_form_beta(p.alpha, b1, bm1, m)


def test_y_coefficients():
    p = PlusParams(2, 0, 1)
    assert y_coefficient(p, 1) == 8
    for q in (p, PlusParams(1, 0, "3/5+4/5*i"), PlusParams(I, 1, -1)):
        assert replay_y_coefficients(q, 8).passed
    with pytest.raises(InvalidParams):
        replay_y_coefficients(MinusParams(1, 0, 0, I), 4)
