import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exterior import KForm, basis_monomials, flat, form_inner, hodge_star, sharp, sort_sign, wedge
from models import build_model
from scalars import EXACT
from scalars import linalg
from strategies import forms
from utils.errors import DomainError
from utils.formatting import star_table_json, star_table_lines

STAR_TABLE = [
    "⋆Ψ¹=−Ψ¹∧Ψ²∧Ψ⁴",
    "⋆Ψ²=Ψ¹∧Ψ²∧Ψ³",
    "⋆Ψ³=−Ψ²∧Ψ³∧Ψ⁴",
    "⋆Ψ⁴=Ψ¹∧Ψ³∧Ψ⁴",
    "⋆Ψ¹∧Ψ²=−Ψ¹∧Ψ²",
    "⋆Ψ¹∧Ψ³=−Ψ²∧Ψ⁴",
    "⋆Ψ¹∧Ψ⁴=Ψ¹∧Ψ⁴",
    "⋆Ψ²∧Ψ³=Ψ²∧Ψ³",
    "⋆Ψ²∧Ψ⁴=−Ψ¹∧Ψ³",
    "⋆Ψ³∧Ψ⁴=−Ψ³∧Ψ⁴",
    "⋆Ψ¹∧Ψ²∧Ψ³=−Ψ²",
    "⋆Ψ¹∧Ψ²∧Ψ⁴=Ψ¹",
    "⋆Ψ¹∧Ψ³∧Ψ⁴=−Ψ⁴",
    "⋆Ψ²∧Ψ³∧Ψ⁴=Ψ³",
]


@pytest.fixture
def frame(para_model):
    return para_model.frame


def test_star_table_golden(frame):
    assert star_table_lines(frame) == STAR_TABLE


def test_star_table_shared_by_both_models(hermitian_model, frame):
    assert star_table_lines(hermitian_model.frame) == star_table_lines(frame)


def test_star_table_json(frame):
    table = star_table_json(frame)
    assert len(table) == 14
    assert table["13"] == {"degree": 2, "coeffs": {"24": "-1"}}
    assert table["2"] == {"degree": 3, "coeffs": {"123": "1"}}


def test_star_of_kahler_form_is_anti_self_dual(para_model):
    assert hodge_star(para_model.frame, para_model.omega) == -para_model.omega


@pytest.mark.parametrize("degree", [1, 2, 3])
def test_defining_identity_on_basis(frame, degree):
    backend = frame.backend
    for left in basis_monomials(degree):
        for right in basis_monomials(degree):
            a = KForm.monomial(backend, *left)
            b = KForm.monomial(backend, *right)
            expected = frame.volume.scale(form_inner(frame, a, b))
            assert wedge(a, hodge_star(frame, b)) == expected


@pytest.mark.parametrize("degree", [0, 1, 2, 3, 4])
@settings(max_examples=100)
@given(data=st.data())
def test_double_star_is_a_sign(degree, data):
    frame = build_model("para", EXACT).frame
    unit = KForm.monomial(EXACT, *basis_monomials(degree)[0])
    twice = hodge_star(frame, hodge_star(frame, unit))
    sign = 1 if twice == unit else -1
    assert twice == unit.scale(sign)

    form = data.draw(forms(EXACT, degree))
    assert hodge_star(frame, hodge_star(frame, form)) == form.scale(sign)


class TestWedge:
    def test_anticommuting_covectors(self, exact):
        a, b = KForm.monomial(exact, 0), KForm.monomial(exact, 2)
        assert wedge(a, b) == -wedge(b, a)
        assert wedge(a, a).is_zero()

    def test_degree_overflow(self, exact):
        with pytest.raises(DomainError, match="degree exceeds dimension"):
            wedge(KForm.monomial(exact, 0, 1, 2), KForm.monomial(exact, 0, 3))
        with pytest.raises(DomainError):
            basis_monomials(5)

    @given(forms(EXACT, 1), forms(EXACT, 1), forms(EXACT, 2))
    def test_associative(self, a, b, c):
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))

    def test_from_dict_reorders_indices(self, exact):
        form = KForm.from_dict(exact, 2, {(2, 0): 3})
        assert exact.equal(form[(0, 2)], exact.coerce(-3))
        assert exact.equal(form[(2, 0)], exact.coerce(3))
        assert sort_sign((1, 1)) is None


class TestMetricDuality:
    @given(forms(EXACT, 1))
    def test_sharp_flat_inverse(self, omega):
        frame = build_model("para", EXACT).frame
        assert flat(frame, sharp(frame, omega)) == omega

    def test_sharp_needs_covector(self, frame, exact):
        with pytest.raises(DomainError):
            sharp(frame, KForm.monomial(exact, 0, 1))

    def test_inner_degree_mismatch(self, frame, exact):
        with pytest.raises(DomainError):
            form_inner(frame, KForm.monomial(exact, 0), KForm.monomial(exact, 0, 1))


@given(forms(EXACT, 2))
def test_pullback_composes(form):
    first = linalg.from_rows(EXACT, [[1, 2, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 3, 1]])
    second = linalg.from_rows(EXACT, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]])
    assert form.pullback(first).pullback(second) == form.pullback(linalg.matmul(first, second))
