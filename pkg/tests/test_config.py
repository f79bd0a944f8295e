import pytest

from nashfan import config
from nashfan.a3suite import a3_run
from nashfan.config import call_with_config, get_config, parse_int_list, parse_int_rows
from nashfan.constants import A3_ORDER_MATRIX, GENERATOR_NAMES
from nashfan.nash import sweep_corpus
from nashfan.semigroup import Cone


@pytest.fixture
def config_loads(monkeypatch):
    calls = []
    original = config.get_config

    def recording(reload=False, ignore_local=False):
        calls.append((reload, ignore_local))
        return original(reload=reload, ignore_local=ignore_local)

    monkeypatch.setattr(config, "get_config", recording)
    return calls


def test_packaged_defaults():
    defaults = get_config(ignore_local=True)
    assert tuple(defaults.base_matrix) == A3_ORDER_MATRIX
    assert defaults.generator_names == GENERATOR_NAMES
    assert defaults.a3_nmax == 4 and defaults.a3_nmax_cap == 12
    assert defaults.a3_primes == [0, 2, 3, 5]
    assert defaults.buchberger_steps > 0 and defaults.sweep_steps > 0


def test_call_with_config_loads_before_the_call(config_loads):
    def task(a, b):
        config_loads.append("task")
        return a + b

    assert call_with_config(True, task, 2, 3) == 5
    assert config_loads == [(True, True), "task"]


def test_parallel_tasks_load_their_configuration(config_loads):
    a3_run([1], [0, 3], fan_check_nmax=0, ignore_local=True)
    assert config_loads == [(True, True), (True, True)]
    config_loads.clear()
    sweep_corpus([Cone.from_rays([(1, 0), (0, 1)])], [1], [0], check_membership=False, ignore_local=True)
    assert config_loads == [(True, True)]


def test_parse_int_rows():
    assert parse_int_rows("2,-1;1,1") == [(2, -1), (1, 1)]
    assert parse_int_rows(" 0, 1 ; 4,-3 ;") == [(0, 1), (4, -3)]
    with pytest.raises(ValueError):
        parse_int_rows("1,a")
    with pytest.raises(ValueError):
        parse_int_rows(";")


def test_parse_int_list():
    assert parse_int_list("0,2,3,5") == [0, 2, 3, 5]
    assert parse_int_list("") == []
