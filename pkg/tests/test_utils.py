import time

import pytest
import yaml
from pydantic import ValidationError

from tools.errors import SetLiteralError
from tools.utils.config import ToolkitConfig, load_config
from tools.utils.parser import parse_factors, parse_int_list, parse_set_literal
from tools.utils.task_runner import TaskRunner


def test_parse_set_literal():
    assert parse_set_literal("1,4;2,3") == [[1, 4], [2, 3]]
    assert parse_set_literal(" 4, 1 ; 3,2 ") == [[1, 4], [2, 3]]
    assert parse_set_literal("7") == [[7]]


@pytest.mark.parametrize("literal", ["", "1,4;", "1,x;2,3", "1,1;2,3", "-1,2;3,4", "1;;2"])
def test_parse_set_literal_rejects(literal):
    with pytest.raises(SetLiteralError):
        parse_set_literal(literal)


def test_parse_modulus_and_factors():
    assert parse_int_list("1,2,1,1,1,1", what="modulus") == [1, 2, 1, 1, 1, 1]
    assert parse_factors("13") == [13]
    assert parse_factors("3,3") == [3, 3]
    with pytest.raises(SetLiteralError):
        parse_factors("3,")


def test_default_config_file_loads():
    config = load_config()
    assert config.field.max_order == 2**20
    assert config.scan.q_max == 243 and config.scan.m_min == 5
    assert config.output.format is None
    assert config.workers == 1


def test_config_from_explicit_path(tmp_path):
    path = tmp_path / "config.yml"
    path.write_text(yaml.safe_dump({"workflow": {"enable_parallel_execution": True, "max_workers": 4}}))
    config = load_config(str(path))
    assert config.workers == 4
    assert config.search.max_nodes is None


def test_config_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "env.yml"
    path.write_text(yaml.safe_dump({"search": {"max_nodes": 500}}))
    monkeypatch.setenv("SEDF_CONFIG", str(path))
    assert load_config().search.max_nodes == 500


def test_config_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / "missing.yml"))
    path = tmp_path / "bad.yml"
    path.write_text(yaml.safe_dump({"output": {"format": "xml"}}))
    with pytest.raises(ValidationError):
        load_config(str(path))


def test_config_defaults_without_file():
    assert ToolkitConfig().workflow.enable_parallel_execution is False


def test_task_runner_serial_results_in_order():
    runner = TaskRunner()
    outputs = runner.run_all(pow, [(2, 3), (3, 2), (5, 0)])
    assert [o["result"] for o in outputs] == [8, 9, 1]
    assert all(o["success"] for o in outputs)


def test_task_runner_reports_failures():
    outputs = TaskRunner().run_all(divmod, [(7, 2), (1, 0)])
    assert outputs[0] == {"result": (3, 1), "error": "", "success": True}
    assert not outputs[1]["success"]
    assert outputs[1]["result"] is None


def test_task_runner_process_pool_keeps_input_order():
    outputs = TaskRunner(max_workers=2).run_all(pow, [(2, k) for k in range(8)])
    assert [o["result"] for o in outputs] == [2**k for k in range(8)]
    failed = TaskRunner(max_workers=2).run_all(divmod, [(1, 0), (4, 2)])
    assert not failed[0]["success"] and failed[1]["result"] == (2, 0)


def test_task_runner_uses_mocked_unit(mocker):
    unit = mocker.Mock(side_effect=[1, ValueError("boom")])
    unit.__name__ = "unit"
    outputs = TaskRunner().run_all(unit, [(), ()])
    assert outputs[0]["success"] and outputs[1]["error"] == "boom"
    assert unit.call_count == 2


def test_task_runner_timeout_bounds_wall_time():
    start = time.monotonic()
    outputs = TaskRunner(max_workers=2, timeout=0.5).run_all(time.sleep, [(60,), (0,)])
    assert time.monotonic() - start < 20
    assert outputs[0] == {"result": None, "error": "timed out after 0.5 seconds", "success": False}
    assert outputs[1] == {"result": None, "error": "", "success": True}
