import numpy as np
import pytest

from engine import (
    LieAlgebra4,
    curvature,
    is_integrable,
    lee_form,
    levi_civita,
    weyl_connection,
    weyl_one_form,
)
from exterior import KForm
from models import ModelKind, build_model
from realization import FamilyParams, family_algebra, family_ring, rho_a_closed_form
from scalars import linalg
from utils.errors import DomainError


def _symbols(setting):
    params = family_ring(setting)
    return params, {name: params.symbol(name) for name in params.names}


def _expected_lee(backend, s):
    """δΩ₊ = α̃₂Ψ¹ − (ε₁+α̃₃)Ψ² − α₂Ψ³ + (ε̃₁+α₃)Ψ⁴"""
    return KForm(1, (
        s["alpha2t"],
        -(s["eps1"] + s["alpha3t"]),
        -s["alpha2"],
        s["eps1t"] + s["alpha3"],
    ), backend)


def _expected_phi(backend, s):
    return KForm(1, (
        s["alpha2t"],
        -(s["eps1"] + s["alpha3t"]),
        s["alpha2"],
        -(s["eps1t"] + s["alpha3"]),
    ), backend).scale(backend.half)


class TestLeeForm:
    def test_para_golden(self):
        params, s = _symbols(ModelKind.PARA)
        algebra = family_algebra(FamilyParams.symbolic(ModelKind.PARA))
        assert lee_form(algebra, build_model("para")) == _expected_lee(params.backend, s)

    def test_hermitian_is_rotated_by_i(self):
        params, s = _symbols(ModelKind.HERMITIAN)
        backend = params.backend
        algebra = family_algebra(FamilyParams.symbolic(ModelKind.HERMITIAN))
        expected = _expected_lee(backend, s).scale(backend.imag)
        assert lee_form(algebra, build_model("hermitian")) == expected

    @pytest.mark.parametrize("setting", list(ModelKind))
    def test_weyl_form_agrees_across_models(self, setting):
        params, s = _symbols(setting)
        algebra = family_algebra(FamilyParams.symbolic(setting))
        assert weyl_one_form(algebra, build_model(setting)) == _expected_phi(params.backend, s)

    def test_numeric_instance_matches_symbolic(self, exact, hermitian_model):
        params, _ = _symbols(ModelKind.HERMITIAN)
        symbolic = lee_form(family_algebra(FamilyParams.symbolic(ModelKind.HERMITIAN)), hermitian_model)
        numeric = lee_form(family_algebra(FamilyParams.hermitian(alpha2=1)), hermitian_model)
        assignment = {"eps1": 0, "alpha2": 1, "alpha3": 0}
        evaluated = symbolic.map(lambda p: params.evaluate(p, assignment))
        assert evaluated.to_backend(exact) == numeric
        assert not numeric.is_zero()


def _non_integrable(exact):
    return LieAlgebra4.from_brackets(exact, {(0, 1): {2: 1}})


def test_integrability(exact, para_model, hermitian_model):
    algebra = _non_integrable(exact)
    assert not is_integrable(algebra, para_model)
    assert not is_integrable(algebra, hermitian_model)
    with pytest.raises(DomainError, match="structure not integrable"):
        weyl_one_form(algebra, para_model)
    with pytest.raises(DomainError):
        weyl_connection(algebra, para_model)


class TestLeviCivita:
    @pytest.fixture
    def algebra(self, exact):
        return family_algebra(FamilyParams.para(eps1=1, eps1t=2, alpha2=1, alpha2t=3, alpha3=-1, alpha3t=1))

    def test_torsion_free(self, algebra, exact, para_model):
        gamma = levi_civita(algebra, para_model).gamma
        for i, j, k in np.ndindex(gamma.shape):
            assert exact.equal(gamma[i, j, k] - gamma[j, i, k], algebra.constants[i, j, k])

    def test_metric_compatible(self, algebra, exact, para_model):
        gamma = levi_civita(algebra, para_model).gamma
        g = para_model.frame.metric
        for i, j, l in np.ndindex(4, 4, 4):
            total = sum((gamma[i, j, k] * g[k, l] + gamma[i, l, k] * g[j, k] for k in range(4)), exact.zero)
            assert exact.is_zero(total)

    def test_abelian_is_flat(self, exact, para_model):
        algebra = LieAlgebra4.abelian(exact)
        data = curvature(levi_civita(algebra, para_model), algebra, para_model)
        assert linalg.all_zero(exact, data.R.flat)
        assert exact.is_zero(data.scalar_curvature)


class TestWeylConnection:
    @pytest.mark.parametrize("kind", list(ModelKind))
    def test_weyl_axiom(self, kind, exact):
        if kind is ModelKind.PARA:
            params = FamilyParams.para(eps1=1, eps1t=2, alpha2=1, alpha2t=3, alpha3=-1, alpha3t=1)
        else:
            params = FamilyParams.hermitian(eps1=exact.one + exact.imag, alpha2=2, alpha3=1)
        model = build_model(kind)
        algebra = family_algebra(params)
        connection = weyl_connection(algebra, model)
        gamma, phi, g = connection.gamma, connection.phi, model.frame.metric
        two = exact.coerce(2)
        for i, j, l in np.ndindex(4, 4, 4):
            total = sum((gamma[i, j, k] * g[k, l] + gamma[i, l, k] * g[j, k] for k in range(4)), exact.zero)
            assert exact.equal(total, two * phi[i] * g[j, l])

    def test_rho_a_matches_closed_form(self, exact, para_model):
        params = FamilyParams.para(eps1=1, eps1t=2, alpha2=1, alpha2t=3, alpha3=-1, alpha3t=1)
        algebra = family_algebra(params)
        data = curvature(weyl_connection(algebra, para_model), algebra, para_model)
        assert data.rho_a_form == rho_a_closed_form(params)
        assert linalg.equal(exact, data.ricci_sym, data.ricci_sym.T)
        assert linalg.equal(exact, data.ricci_split.assemble(para_model), data.ricci_sym)
