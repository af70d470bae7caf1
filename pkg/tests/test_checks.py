import json
import math
from pathlib import Path

import pytest

from engine import LieAlgebra4, check_suite, make_residual
from engine.checks import DEFAULT_TOLERANCE, form_residual
from exterior import KForm
from models import ModelKind, build_model
from realization import FamilyParams, family_algebra
from scalars import EXACT, FloatBackend
from utils.json_codec import algebra_from_json

FIXTURES = Path(__file__).parent / "fixtures"

SUITE = (
    "jacobi", "nijenhuis", "torsion", "weyl_compatibility", "kahler_parallel",
    "curvature_antisymmetry", "first_bianchi", "weyl_trace", "kahler_curvature",
    "rho_a_vs_anti_lee", "rho_a_vs_dphi",
)


def _load(name, backend=EXACT):
    return algebra_from_json(backend, json.loads((FIXTURES / name).read_text(encoding="utf-8")))


class TestSuite:
    def test_family_fixture_passes(self, para_model):
        report = check_suite(_load("family_para.json"), para_model)
        assert report.passed, report.failures
        assert [r.name for r in report.residuals] == list(SUITE)
        assert report.backend == "exact"
        assert report.notes == ()
        expected = KForm.from_dict(EXACT, 2, {(0, 1): 1, (0, 3): 1, (1, 2): -1, (2, 3): 2})
        assert report.rho_a == expected

    def test_hermitian_fixture_includes_reality(self, hermitian_model):
        report = check_suite(_load("family_hermitian.json"), hermitian_model)
        assert report.passed, report.failures
        assert report.residual("reality").passed

    def test_corrupted_fixture_fails_jacobi(self, para_model):
        report = check_suite(_load("family_para_corrupted.json"), para_model)
        assert not report.passed
        assert "jacobi" in report.failures
        assert report.residual("jacobi").expression == "1"

    def test_abelian_is_trivial(self, para_model):
        report = check_suite(_load("abelian.json"), para_model)
        assert report.passed
        assert "trivial Weyl structure" in report.notes
        assert report.rho_a.is_zero()

    def test_not_integrable(self, para_model, exact):
        algebra = LieAlgebra4.from_brackets(exact, {(0, 1): {2: 1}})
        report = check_suite(algebra, para_model)
        assert not report.passed
        assert report.notes == ("structure not integrable",)
        assert report.residual("torsion") is None
        assert report.rho_a is None

    def test_float_backend(self):
        backend = FloatBackend()
        report = check_suite(_load("family_para.json", backend), build_model("para"))
        assert report.passed, report.failures
        assert report.backend == "float"
        assert all(r.max_abs <= DEFAULT_TOLERANCE for r in report.residuals)

    @pytest.mark.slow
    @pytest.mark.parametrize("setting", list(ModelKind))
    def test_symbolic_family(self, setting):
        report = check_suite(family_algebra(FamilyParams.symbolic(setting)), build_model(setting))
        assert report.passed, report.failures


class TestReportEditing:
    def test_with_residual_replaces_by_name(self, para_model):
        report = check_suite(_load("family_para.json"), para_model)
        failing = make_residual("jacobi", EXACT, [EXACT.one])
        edited = report.with_residual(failing)
        assert not edited.passed
        assert edited.failures == ("jacobi",)
        assert len(edited.residuals) == len(report.residuals)
        assert edited.with_note("checked").notes == ("checked",)


class TestResiduals:
    def test_exact_residual_reports_first_nonzero(self, exact):
        residual = make_residual("x", exact, [exact.zero, exact.coerce(3), exact.one])
        assert not residual.passed
        assert residual.expression == "3"
        assert residual.max_abs == 3.0

    def test_float_residual_uses_tolerance(self):
        backend = FloatBackend()
        assert make_residual("x", backend, [1e-12], tolerance=1e-9).passed
        assert not make_residual("x", backend, [1e-6], tolerance=1e-9).passed

    def test_symbolic_residual(self):
        params = FamilyParams.symbolic("para")
        backend = params.backend
        residual = make_residual("x", backend, [backend.coerce(0)])
        assert residual.passed and residual.expression == "0"

    def test_form_residual(self, exact):
        a = KForm.monomial(exact, 0, 1)
        assert form_residual("same", a, a).passed
        different = form_residual("diff", a, a.scale(2))
        assert not different.passed
        assert math.isclose(different.max_abs, 1.0)
