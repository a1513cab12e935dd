"""Déploiements versels"""
from fractions import Fraction

import pytest

from classify import classify_germ
from jets import Jet, ps_derive
from mufields import lie_derivative_mu
from unfold import f2_family, unfold_1d, unfold_planar
from utils.errors import BadArity, InvalidParameter


def test_one_dimensional_unfolding_k2():
    f = unfold_1d(2, 1, (Fraction(-1, 50), 1))
    assert f == Jet.from_coeffs([Fraction(-1, 50), 0, 1, 1], 3)


def test_one_dimensional_unfolding_k3():
    f = unfold_1d(3, 2, (5, 7, 11))
    # 2y³ + λ₁y + λ₂ + λ₃y⁵
    assert f == Jet.from_coeffs([7, 5, 0, 2, 0, 11], 5)


def test_float_parameters_select_float_kernel():
    assert unfold_1d(2, 1.0, (0.5, 1.0)).exact is False
    assert unfold_1d(2, 1, (1, 1)).exact is True


def test_arity_and_parameters_validated():
    with pytest.raises(BadArity):
        unfold_1d(2, 1, (1,))
    with pytest.raises(InvalidParameter):
        unfold_1d(1, 1, (1,))
    with pytest.raises(InvalidParameter):
        unfold_1d(2, 0, (0, 1))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_x_component_is_derivative_of_y_component(k, rng):
    lambdas = tuple(Fraction(int(v), 3) for v in rng.integers(-5, 6, size=k))
    field = unfold_planar(k, 2, lambdas)
    assert field.x_bracket.with_order(2 * k - 2) == ps_derive(field.y_component)
    assert lie_derivative_mu(field).is_zero()


def test_f2_field_components():
    field = f2_family(1, 0.5, 2)
    u, v = field(0.3, 0.2)
    assert u == pytest.approx(-1.3 * (2 * 0.2 + 3 * 2 * 0.04))
    assert v == pytest.approx(0.04 + 0.5 + 2 * 0.008)


def test_f2_allows_zero_a():
    field = f2_family(0, 0, 1)
    assert field.y_component == Jet.from_coeffs([0, 0, 0, 1], 3)


def test_zero_parameters_give_the_normal_form():
    field = unfold_planar(3, 2, (0, 0, 5))
    germ = classify_germ(field.y_component)
    assert field.y_component == germ.normal_form
    assert germ.invariants() == (3, 2, 5)


def test_to_dict():
    data = unfold_planar(2, 1, (Fraction(1, 2), 3)).to_dict()
    assert data['lambdas'] == ["1/2", 3]
    assert data['x_component'] == {'factor': '-(1+x)', 'coefficients': [0, 2, 9, 0]}
    assert data['y_component'] == {'coefficients': ["1/2", 0, 1, 3]}
