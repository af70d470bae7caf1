import json
from pathlib import Path

import pytest

from realization import create_pipeline, solve_para
from scalars import linalg
from storage import ResultStorage, result_key
from utils.json_codec import form_to_json, result_from_json, result_to_json

FIXTURES = Path(__file__).parent / "fixtures"


def _theta_form(model, c):
    total = model.omega.scale(0)
    for value, theta in zip(c, model.thetas):
        total = total + theta.scale(value)
    return total


@pytest.fixture
def storage(results_dir):
    return ResultStorage(str(results_dir))


@pytest.fixture
def certificate(para_model):
    result = solve_para(_theta_form(para_model, (-24, 7, 1, 2, 3)), allow_float=False)
    return result, result_to_json(result)


class TestResultStorage:
    def test_creates_index(self, storage, results_dir):
        assert (results_dir / "result_index.json").exists()
        assert storage.list_results() == []

    def test_save_and_lookup(self, storage, certificate):
        _, data = certificate
        result_id = storage.save_result(data)
        by_id = storage.get_result_by_id(result_id)
        by_key = storage.get_result_by_key("para", data["requested"])
        assert by_id == by_key
        assert by_id["passed"] is True
        assert by_id["content"]["algebra"] == data["algebra"]

    def test_same_target_overwrites(self, storage, certificate):
        _, data = certificate
        first = storage.save_result(data)
        second = storage.save_result(data)
        assert first == second
        assert len(storage.list_results()) == 1

    def test_delete_by_id_and_key(self, storage, certificate):
        _, data = certificate
        result_id = storage.save_result(data)
        assert storage.delete_result(result_id)
        assert storage.get_result_by_id(result_id) is None
        assert not storage.delete_result(result_id)

        storage.save_result(data)
        assert storage.delete_result(result_key("para", data["requested"]))
        assert storage.list_results() == []

    def test_unreadable_index(self, storage, results_dir):
        (results_dir / "result_index.json").write_text("{not json", encoding="utf-8")
        assert storage.list_results() == []

    def test_certificate_reloads(self, certificate, exact):
        result, data = certificate
        loaded = result_from_json(json.loads(json.dumps(data)))
        assert linalg.equal(exact, loaded.algebra.constants, result.algebra.constants)
        assert loaded.requested == result.requested
        assert loaded.report.passed


class TestPipeline:
    def test_realize_and_save(self, storage, para_model):
        pipeline = create_pipeline(storage=storage)
        target = _theta_form(para_model, (0, 1, 1, 0, 2))
        result, roundtrip = pipeline.realize("para", target, allow_float=False, save=True)
        assert result.passed and roundtrip.ok
        saved = storage.get_result_by_key("para", form_to_json(target))
        assert saved["content"]["roundtrip"]["ok"] is True

    def test_storage_is_created_lazily(self, para_model):
        pipeline = create_pipeline(storage=None)
        pipeline.realize("para", para_model.thetas[2], allow_float=False)
        assert pipeline._storage is None

    def test_batch_sequential(self):
        targets = json.loads((FIXTURES / "para_targets.json").read_text(encoding="utf-8"))
        pipeline = create_pipeline()
        results = pipeline.realize_batch("para", targets + ["garbage"], allow_float=True, workers=1)
        assert len(results) == 4
        for data in results[:3]:
            assert data["roundtrip"]["ok"], data
        assert results[3]["error_type"] == "InputError"

    def test_batch_reports_domain_errors(self, hermitian_model):
        pipeline = create_pipeline(mode="orbit")
        targets = [form_to_json(hermitian_model.omega), form_to_json(hermitian_model.thetas[3].scale(2))]
        results = pipeline.realize_batch("hermitian", targets, allow_float=False, workers=1)
        assert results[0]["error_type"] == "DomainError"
        assert results[1]["mode"] == "orbit"
        assert results[1]["roundtrip"]["ok"]
