"""Classification des germes et formes normales"""
from fractions import Fraction

import pytest

from checks import random_jet, random_psi
from classify import (
    GermKind,
    classify_field,
    classify_germ,
    normalize_degenerate,
    normalize_linear,
    normalize_regular,
    rescaled_model,
)
from jets import Jet, ps_derive
from mufields import PlanarMuField, SymbolicField, pushforward
from utils.errors import InsufficientOrder, LeadingCoefficientZero, ZeroConstantTerm


@pytest.mark.parametrize("coeffs, order, label", [
    ([5], 0, "X_0, a=5"),
    ([0, 3], 1, "X_1, a=3"),
    ([0, 0, 1], 3, "X_2, a=1, d=0"),
    ([0, 0, 1, 7], 3, "X_2, a=1, d=7"),
    ([0, 0, 0, 1], 5, "X_3, a=1, d=0"),
])
def test_classification_table(coeffs, order, label):
    result = classify_field(PlanarMuField(Jet.from_coeffs(coeffs, order)))
    assert result.label == label


def test_float_kernel_labels():
    result = classify_field(PlanarMuField(Jet.from_coeffs([0, 0, 1, 7], 3, exact=False)))
    assert result.label == "X_2, a=1, d=7"


def test_classify_symbolic_field():
    X = SymbolicField.from_strings("-(1+x)*(2*y + 21*y**2)", "y**2 + 7*y**3")
    germ = classify_field(X).germ
    assert germ.kind == GermKind.DEGENERATE
    assert germ.invariants() == (2, 1, 7)


@pytest.mark.parametrize("k, a, d", [
    (2, 1, 0),
    (2, Fraction(-3, 2), 7),
    (3, 2, Fraction(1, 5)),
    (4, -1, -2),
])
def test_normal_form_is_left_unchanged(k, a, d):
    order = 16
    f = Jet.monomial(k, a, order) + Jet.monomial(2 * k - 1, d, order)
    germ = classify_germ(f)
    assert germ.invariants() == (k, a, d)
    assert germ.psi == Jet.identity(germ.psi.trunc_order)
    assert germ.normal_form == f


def test_flat_germ_is_reported():
    germ = classify_germ(Jet.zero(4))
    assert germ.kind == GermKind.FLAT
    assert germ.to_dict() == {'type': 'flat', 'order': 4}


def test_degenerate_needs_order_2k_minus_1():
    with pytest.raises(InsufficientOrder):
        classify_germ(Jet.from_coeffs([0, 0, 1], 2))
    with pytest.raises(InsufficientOrder):
        normalize_degenerate(Jet.from_coeffs([0, 0, 0, 1], 4))


def test_normalizers_check_their_preconditions():
    with pytest.raises(ZeroConstantTerm):
        normalize_regular(Jet.from_coeffs([0, 1], 3))
    with pytest.raises(LeadingCoefficientZero):
        normalize_linear(Jet.from_coeffs([0, 0, 1], 3))
    with pytest.raises(LeadingCoefficientZero):
        normalize_degenerate(Jet.from_coeffs([0, 0, 0, 1], 5), k=2)


def test_higher_order_term_is_removed():
    f = Jet.from_coeffs([0, 0, 1, 0, 1], 6)
    k, a, d, psi = normalize_degenerate(f)
    assert (k, a, d) == (2, 1, 0)
    assert psi[3] == 1
    assert pushforward(f, psi) == Jet.monomial(2, 1, 6)


def test_regular_flattening_is_log_series():
    f = Jet.from_coeffs([1, 1], 12)
    psi = normalize_regular(f)
    expected = [0] + [Fraction((-1) ** (n + 1), n) for n in range(1, 13)]
    assert psi.with_order(12) == Jet.from_coeffs(expected, 12)
    assert f * ps_derive(psi) == Jet.constant(1, 12)


def test_regular_flattening_float_kernel():
    psi = normalize_regular(Jet.from_coeffs([1.0, 1.0], 12, exact=False))
    for n in range(1, 13):
        assert psi[n] == pytest.approx((-1) ** (n + 1) / n, abs=1e-12)


@pytest.mark.parametrize("coeffs", [[2, 1, 3], [0, 3, 1, -2], [0, 0, 1, 7, 2, 1], [0, 0, 0, -2, 1, 0, 4, 1]])
def test_conjugation_reaches_normal_form(coeffs):
    f = Jet.from_coeffs(coeffs, 8)
    germ = classify_germ(f)
    assert pushforward(f, germ.psi) == germ.normal_form


def test_invariants_survive_conjugation_exact(rng):
    for i in range(200):
        k = 2 + i % 2
        order = 2 * k + 4
        f = random_jet(rng, order, vanish_below=k, leading=k)
        g = pushforward(f, random_psi(rng, order))
        assert classify_germ(g).invariants() == classify_germ(f).invariants()


def test_invariants_survive_conjugation_float(rng):
    for i in range(50):
        k = 2 + i % 2
        order = 2 * k + 4
        f = random_jet(rng, order, vanish_below=k, leading=k)
        psi = random_psi(rng, order)
        exact = classify_germ(f)
        approx = classify_germ(pushforward(f.as_float(), psi.as_float()))
        assert approx.k == exact.k
        assert approx.a == pytest.approx(float(exact.a), abs=1e-9)
        assert approx.d == pytest.approx(float(exact.d), abs=1e-9)


def test_no_hyperbolic_singularity_at_origin(rng):
    for i in range(1000):
        k = 2 + i % 2
        f = random_jet(rng, 2 * k - 1, vanish_below=k, leading=k)
        result = classify_field(PlanarMuField(f))
        assert result.eigenvalues == [0, 0]


def test_linear_part_reported_for_degenerate_germ():
    result = classify_field(PlanarMuField(Jet.from_coeffs([0, 0, 3, 1], 3)))
    assert result.jacobian == [[0, -6], [0, 0]]
    assert result.to_dict()['eigenvalues'] == [0, 0]


@pytest.mark.parametrize("k, a, d, sign, d_rescaled, scale", [
    (2, -2, 3, 1, 0.75, -0.5),
    (2, 4, 8, 1, 0.5, 0.25),
    (3, -4, 1, -1, 1 / 16, 0.5),
    (3, 9, 0, 1, 0.0, 1 / 3),
])
def test_rescaled_model(k, a, d, sign, d_rescaled, scale):
    model = rescaled_model(k, a, d)
    assert model.sign == sign
    assert model.d == pytest.approx(d_rescaled)
    assert model.scale == pytest.approx(scale)
    # y ↦ c·y envoie a y^k sur sign·y^k
    assert a * model.scale ** (k - 1) == pytest.approx(sign)


def test_model_string_and_json():
    data = classify_field(PlanarMuField(Jet.from_coeffs([0, 0, 1, 7], 3))).to_dict()
    assert data['type'] == 'degenerate'
    assert (data['k'], data['a'], data['d']) == (2, 1, 7)
    assert data['label'] == "X_2, a=1, d=7"
    assert data['model'] == "-(1 + x)*(21*y**2 + 2*y)*d/dx + (7*y**3 + y**2)*d/dy"
    assert data['rescaled'] == {'sign': 1, 'd': 7.0, 'scale': 1.0}
