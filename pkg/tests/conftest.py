# 测试公共夹具
import pytest

from models import ModelKind, build_model
from scalars import EXACT, FloatBackend


@pytest.fixture
def exact():
    return EXACT


@pytest.fixture
def float_backend():
    return FloatBackend()


@pytest.fixture
def para_model():
    return build_model(ModelKind.PARA, EXACT)


@pytest.fixture
def hermitian_model():
    return build_model(ModelKind.HERMITIAN, EXACT)


@pytest.fixture
def results_dir(tmp_path):
    return tmp_path / "certificates"
