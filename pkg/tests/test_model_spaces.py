import pytest
from hypothesis import given

from exterior import KForm, form_inner
from models import (
    ModelKind,
    act_on_form,
    act_on_sym,
    build_model,
    conjugate_form,
    is_real_form,
    metric_trace,
    orbit_invariants,
    projection_ranks,
    split_sym_two_tensor,
    split_two_form,
)
from scalars import EXACT, FloatBackend
from scalars import linalg
from strategies import forms
from utils.errors import DomainError, RealityViolation


@pytest.mark.parametrize("kind", list(ModelKind))
@pytest.mark.parametrize("backend", [EXACT, FloatBackend()], ids=["exact", "float"])
def test_models_certify_on_every_backend(kind, backend):
    model = build_model(kind, backend)
    assert model.sign == (1 if kind is ModelKind.PARA else -1)
    assert len(model.thetas) == 5


@pytest.mark.parametrize("kind, norms", [
    ("para", (-2, -2, 2, 2, -2)),
    ("hermitian", (2, 2, 2, 2, 2)),
])
def test_theta_inner_products(kind, norms):
    model = build_model(kind, EXACT)
    for theta, norm in zip(model.thetas, norms):
        assert EXACT.equal(form_inner(model.frame, theta, theta), EXACT.coerce(norm))
    assert EXACT.equal(form_inner(model.frame, model.thetas[0], model.thetas[3]), EXACT.zero)


@pytest.mark.parametrize("kind", list(ModelKind))
def test_projection_ranks(kind):
    assert projection_ranks(build_model(kind, EXACT)) == (1, 3, 2)


def test_theta_eigenforms(para_model, hermitian_model):
    for model in (para_model, hermitian_model):
        for index, theta in enumerate(model.thetas):
            eigen = -model.sign if index < 3 else model.sign
            assert act_on_form(model, theta) == theta.scale(eigen)


@given(forms(EXACT, 2))
def test_para_split_reassembles(xi):
    model = build_model("para", EXACT)
    assert split_two_form(model, xi).assemble(model) == xi


@given(forms(EXACT, 2))
def test_hermitian_split_reassembles_without_reality_check(xi):
    model = build_model("hermitian", EXACT)
    assert split_two_form(model, xi, check_reality=False).assemble(model) == xi


class TestReality:
    def test_non_real_form_rejected(self, hermitian_model, exact):
        with pytest.raises(RealityViolation, match="reality violation"):
            split_two_form(hermitian_model, KForm.monomial(exact, 0, 1))

    def test_real_forms(self, hermitian_model):
        for theta in hermitian_model.thetas:
            assert is_real_form(hermitian_model, theta)
        assert is_real_form(hermitian_model, hermitian_model.omega)

    @given(forms(EXACT, 2))
    def test_conjugation_is_an_involution(self, xi):
        model = build_model("hermitian", EXACT)
        assert conjugate_form(model, conjugate_form(model, xi)) == xi

    def test_para_accepts_everything(self, para_model, exact):
        split = split_two_form(para_model, KForm.monomial(exact, 0, 1))
        assert exact.equal(split.c[3], exact.half)
        assert exact.equal(split.c[4], exact.half)


class TestOrbitInvariants:
    def test_representative(self, hermitian_model, exact):
        xi = hermitian_model.thetas[1].scale(2) + hermitian_model.thetas[3].scale(3)
        x, y = orbit_invariants(hermitian_model, xi)
        assert exact.equal(x, exact.coerce(8))
        assert exact.equal(y, exact.coerce(18))

    def test_para_is_not_supported(self, para_model):
        with pytest.raises(DomainError, match="para signature"):
            orbit_invariants(para_model, para_model.thetas[0])

    def test_omega_component_is_split_off(self, hermitian_model, exact):
        split = split_two_form(hermitian_model, hermitian_model.omega.scale(5))
        assert exact.equal(split.omega_coeff, exact.coerce(5))
        assert split.zero_part(hermitian_model).is_zero()


class TestSymmetricTensors:
    def test_split_reassembles(self, para_model, exact):
        s = linalg.from_rows(exact, [[1, 2, 0, 3], [2, 0, 1, 0], [0, 1, 4, 0], [3, 0, 0, 2]])
        split = split_sym_two_tensor(para_model, s)
        assert linalg.equal(exact, split.assemble(para_model), s)
        assert exact.is_zero(metric_trace(para_model, split.s0_part))
        eta = -para_model.sign
        assert linalg.equal(exact, act_on_sym(para_model, split.s0_part), linalg.scale(split.s0_part, eta))
        assert linalg.equal(exact, act_on_sym(para_model, split.spm_part), linalg.scale(split.spm_part, -eta))

    def test_metric_is_pure_trace(self, hermitian_model, exact):
        split = split_sym_two_tensor(hermitian_model, hermitian_model.frame.metric)
        assert exact.equal(split.trace_part, exact.one)
        assert linalg.all_zero(exact, split.spm_part.flat)

    def test_rejects_non_symmetric(self, para_model):
        with pytest.raises(DomainError):
            split_sym_two_tensor(para_model, [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
