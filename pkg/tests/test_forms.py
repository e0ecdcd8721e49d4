import random
from fractions import Fraction
from itertools import product

import pytest

from fuzz import CASES, check_contravariance, contravariance_instance
from oracles import oracle_verdict
from svalg.algebra import L, Y, vir_prime_generator
from svalg.forms import (
    INDEFINITE,
    NON_HERMITIAN,
    PD,
    PSD,
    FormContext,
    RescaledForm,
    ReducibleParameters,
    contravariant_form,
    gram,
    highest_weight_analysis,
    positivity,
    quad,
    radical_basis,
    rescale_factor,
    rescale_form,
    rescaled_target,
    series_unitarity_feasibility,
    weight_compatible,
)
from svalg.involutions import InvalidParams, MinusParams, PlusParams, apply
from svalg.representations import Weight, level_basis, verma_module
from svalg.scalars import I, as_gauss, parse_scalar

THETA = PlusParams(1, 0, 1)
ONE_V = {(): Fraction(1)}


def G(rows):
    return [[as_gauss(x) for x in r] for r in rows]


# -- form values --


def test_form_examples():
    wt = Weight(Fraction(-3, 2), Fraction(2, 3), 1)
    yv = {(Y(-1),): 1}
    lv = {(L(-1),): 1}
    assert contravariant_form(wt, THETA, ONE_V, ONE_V, 4) == 1
    assert contravariant_form(wt, THETA, yv, yv, 4) == -wt.m
    assert contravariant_form(wt, THETA, lv, lv, 4) == -2 * wt.h
    assert contravariant_form(wt, THETA, lv, yv, 4) == 0


def test_conjugate_linear_in_first_slot():
    wt = Weight(-1, 0, 2)
    lv = {(L(-1),): Fraction(1)}
    ilv = {(L(-1),): I}
    assert contravariant_form(wt, THETA, ilv, lv, 2) == -I * 2
    assert contravariant_form(wt, THETA, lv, ilv, 2) == I * 2


def test_gram_level_two():
    h, m = Fraction(-1, 2), Fraction(3, 4)
    got = gram(Weight(h, m, 1), THETA, 2, 2)
    assert got == G([[-2 * h, -m, m], [-m, 0, 0], [m, 0, 2 * m * m]])
    assert gram(Weight(h, 0, 1), THETA, 2, 2) == G([[-2 * h, 0, 0], [0, 0, 0], [0, 0, 0]])
    assert gram(Weight(h, m, 1), THETA, 1, 2) == G([[-m]])


def test_distinct_levels_pair_to_zero():
    wt = Weight(-1, 1, 2)
    mod = verma_module(wt, 5)
    ctx = FormContext(mod, THETA)
    for d1, d2 in product(range(6), repeat=2):
        if d1 != d2:
            for a in level_basis(d1):
                for b in level_basis(d2):
                    assert ctx.pair_monos(a, b) == 0


@pytest.mark.parametrize("case", CASES, ids=lambda c: c[0].describe())
def test_hermitian_on_compatible_weights(case):
    p, wt = case
    assert weight_compatible(wt, p)
    for d in range(5):
        g = gram(wt, p, d, 4)
        assert all(g[i][j] == g[j][i].conj() for i in range(len(g)) for j in range(len(g)))


def test_incompatible_weight_is_non_hermitian():
    p = PlusParams(1, "1+1*i", 1)
    wt = Weight(-1, 1, 2)
    assert not weight_compatible(wt, p)
    assert positivity(gram(wt, p, 2, 2)).tag == NON_HERMITIAN


def test_minus_family_rejected():
    with pytest.raises(InvalidParams):
        FormContext(verma_module(Weight(0, 0, 0), 2), MinusParams(1, 0, 0, I))


def test_contravariance_fuzz_small():
    rng = random.Random(5)
    ctxs = {}
    for _ in range(150):
        p, wt, x, u, v = contravariance_instance(rng, 4)
        key = (p, wt)
        if key not in ctxs:
            ctxs[key] = FormContext(verma_module(wt, 4), p)
        ctx = ctxs[key]
        assert check_contravariance(ctx, p, x, u, v, ctx.module)


# -- positivity --


def test_positivity_examples():
    assert positivity(G([[2, 1], [1, 2]])).tag == PD
    v = positivity(G([[0, 1], [1, 0]]))
    assert v.tag == INDEFINITE and v.witness == [1, -1]
    v = positivity(G([[1, 0], [0, 0]]))
    assert v.tag == PSD and v.radical_dim == 1
    v = positivity(G([[1, 2], [3, 1]]))
    assert v.tag == NON_HERMITIAN and v.cell == (0, 1)


def test_level_two_indefinite_for_nonzero_m():
    for m in (Fraction(1), Fraction(-1, 2)):
        for h in (Fraction(0), Fraction(-1), Fraction(3)):
            g = G([[-2 * h, -m], [-m, 0]])
            v = positivity(g)
            assert v.tag == INDEFINITE
            assert quad(g, v.witness).re < 0


def test_positivity_agrees_with_minor_oracle_complex_entries():
    vals = [as_gauss(x) for x in (0, 1, -1)] + [I, -I]
    for d0, d1 in product((0, 1, -1), repeat=2):
        for off in vals:
            g = G([[d0, off], [off.conj(), d1]])
            v = positivity(g)
            tag, rad = oracle_verdict(g)
            assert v.tag == tag
            if tag == PSD:
                assert v.radical_dim == rad
            if tag == INDEFINITE:
                assert quad(g, v.witness).re < 0


def test_radical_basis_examples():
    assert radical_basis(G([[-2, 0, 0], [0, 0, 0], [0, 0, 0]])) == [[0, 1, 0], [0, 0, 1]]
    assert radical_basis(G([[2, 1], [1, 2]])) == []
    assert radical_basis(G([[0, 0], [0, 0]])) == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        radical_basis(G([[0, 1], [0, 0]]))


def test_level_two_radical_for_m_zero():
    g = gram(Weight(-1, 0, 2), THETA, 2, 2)
    assert positivity(g).tag == PSD
    assert radical_basis(g) == [[0, 1, 0], [0, 0, 1]]  # M_{-1} v and Y_{-1/2}^2 v


def test_highest_weight_shape_m_zero():
    for h, z in ((0, 0), (-1, 2)):
        out = highest_weight_analysis(Weight(h, 0, z), THETA, 4)
        assert out["all_psd"] and out["my_in_radical"] and out["quotient_action_zero"]


def test_highest_weight_shape_fails_for_m_nonzero():
    out = highest_weight_analysis(Weight(-1, 1, 2), THETA, 2)
    assert not out["all_psd"] and not out["my_in_radical"]


# -- rescaling --


def test_rescale_factor_examples():
    assert rescale_factor(PlusParams(2, 0, 1), 2) == Fraction(1, 4)
    assert rescale_form(PlusParams(1, 0, 1), {3: [[5]]}) == {3: [[5]]}
    assert rescale_form(PlusParams(2, 0, 1), {2: [[4, 8]]}) == {2: [[1, 2]]}
    with pytest.raises(InvalidParams):
        rescale_factor(PlusParams(I, 0, 1), 1)


def _rescaled_matches(p_from, target, wt, depth=4):
    mod = verma_module(wt, depth)
    new = RescaledForm(mod, p_from)
    direct = FormContext(mod, target)
    for d in range(depth + 1):
        for a in level_basis(d):
            for b in level_basis(d):
                if new.pair({a: 1}, {b: 1}) != direct.pair_monos(a, b):
                    return False
    return True


def test_rescaled_form_is_the_alpha_one_form():
    wt = Weight(-1, Fraction(1, 2), 2)
    assert _rescaled_matches(PlusParams(2, 0, 1), PlusParams(1, 0, 1), wt)
    p = PlusParams(2, 3, -1)
    assert rescaled_target(p) == PlusParams(1, Fraction(3, 4), -1)
    assert _rescaled_matches(p, rescaled_target(p), wt)


def test_rescaled_form_keeps_beta_only_when_beta_is_zero():
    wt = Weight(-1, Fraction(1, 2), 2)
    assert not _rescaled_matches(PlusParams(2, 3, 1), PlusParams(1, 3, 1), wt)


def test_rescaled_contravariance_for_l_prime_one():
    p = PlusParams(2, 3, 1)
    target = rescaled_target(p)
    wt = Weight(-1, Fraction(1, 2), 2)
    mod = verma_module(wt, 4)
    new = RescaledForm(mod, p)
    x = vir_prime_generator(1, target)
    tx = apply(target, x)
    for d in range(2, 5):
        for a in level_basis(d):
            for b in level_basis(d - 2):
                assert new.pair(mod.act_element(x, {a: 1}), {b: 1}) == new.pair({a: 1}, mod.act_element(tx, {b: 1}))


# -- intermediate series --


@pytest.mark.parametrize("a,b", [("1/4", "1/2"), ("0", "1/2+1*i"), ("1/3", "1/2-2*i")])
def test_feasible_on_line(a, b):
    res = series_unitarity_feasibility(parse_scalar(a), parse_scalar(b), 8)
    assert res.feasible
    assert all(w > 0 for w in res.weights.values())
    assert len(res.weights) == 17


def test_feasible_weights_are_one_for_real_b():
    res = series_unitarity_feasibility(Fraction(1, 4), Fraction(1, 2), 8)
    assert set(res.weights.values()) == {1}


def test_sign_obstruction():
    res = series_unitarity_feasibility(Fraction(1, 4), parse_scalar("1"), 8)
    assert not res.feasible and res.violation == (1, -1) and res.reason == "sign"


def test_off_line_infeasible():
    assert not series_unitarity_feasibility(Fraction(1, 4), parse_scalar("3/2"), 8).feasible
    assert not series_unitarity_feasibility(Fraction(1, 4), parse_scalar("1/2") + 1, 8).feasible
    assert not series_unitarity_feasibility(Fraction(1, 4), parse_scalar("3/2+1*i"), 8).feasible


def test_degenerate_and_reducible():
    # a + k + b = 0 at k = -1 only: degenerate ratio, reported as infeasible
    res = series_unitarity_feasibility(0, parse_scalar("1"), 8)
    assert not res.feasible and res.reason == "degenerate"
    # a = b = 1/2: numerator and denominator vanish together at k = -1
    with pytest.raises(ReducibleParameters):
        series_unitarity_feasibility(Fraction(1, 2), Fraction(1, 2), 8)


def test_feasibility_checks_all_n():
    # feasible weights really satisfy every constraint, not just n = 1
    a, b = Fraction(1, 3), parse_scalar("1/2+1*i")
    p = series_unitarity_feasibility(a, b, 6).weights
    for n in range(-6, 7):
        for k in range(-6, 7):
            if k + n in p:
                assert (a + k + n * b).conj() * p[k + n] == (a + k + n - n * b) * p[k]
