import pytest
from pydantic import ValidationError

from app.config import Settings
from app.schemas import DEFAULT_IDENTITIES, ConfigError, RunConfig, parse_orders


def test_points_from_comma_list():
    assert Settings(DILOG_SAMPLES="0.1, -0.2,").DILOG_SAMPLES == [0.1, -0.2]


def test_points_from_json():
    assert Settings(APPENDIX_LAMBDAS="[0.05, 0.15]").APPENDIX_LAMBDAS == [0.05, 0.15]
    assert Settings(APPENDIX_LAMBDAS="0.3").APPENDIX_LAMBDAS == [0.3]


def test_unknown_backend():
    with pytest.raises(ValidationError):
        Settings(TASK_BACKEND="threads")


@pytest.mark.parametrize(
    "text,expected",
    [("0..3", [0, 1, 2, 3]), ("2..2", [2]), ("0,2", [0, 2]), ("3", [0, 1, 2, 3])],
)
def test_parse_orders(text, expected):
    assert parse_orders(text) == expected


@pytest.mark.parametrize("text", ["4..1", "a,b", "1..x"])
def test_parse_orders_rejects(text):
    with pytest.raises(ConfigError):
        parse_orders(text)


def test_symmetry_params():
    config = RunConfig(command="verify", target="symmetry", orders=[0, 1, 2, 3])
    assert config.check_params() == [("symmetry", {"s": 1, "t": 1, "n": 1, "order": 3})]


def test_ybe_params():
    config = RunConfig(command="verify", target="ybe", s=2, t=1, n=2, cutoff=1, zigzag=True)
    assert config.check_params() == [("ybe", {"cutoff": 1, "s": 2, "t": 1, "n": 2, "zigzag": True})]


def test_boundary_and_cyclic_params():
    assert RunConfig(command="verify", target="boundary", s=2).check_params() == [("boundary", {"s": 2})]
    config = RunConfig(command="verify", target="uq", n=3, cyclic=True)
    assert config.check_params() == [("uq", {"s": 1, "t": 1, "n": 3, "cyclic": True})]


def test_default_identities():
    config = RunConfig(command="dilog", samples=[0.1])
    names = [name for name, _ in config.check_params()]
    assert tuple(names) == DEFAULT_IDENTITIES
    assert all(params == {"samples": [0.1]} for _, params in config.check_params())


def test_sample_routing():
    config = RunConfig(command="dilog", target="appendixA2", samples=[0.1], lambdas=[0.2], tol=1e-5)
    assert config.check_params() == [("appendixA2", {"tol": 1e-5, "samples": [0.2]})]
    config = RunConfig(command="dilog", target="kernel_symmetry", samples=[0.1], b_re=0.7)
    assert config.check_params() == [("kernel_symmetry", {"b_re": 0.7})]


@pytest.mark.parametrize(
    "values",
    [
        {"command": "verify", "target": "hexagon"},
        {"command": "verify", "target": "ybe", "s": 0},
        {"command": "verify", "target": "ybe", "n": 0},
        {"command": "verify", "target": "ybe", "orders": []},
        {"command": "verify", "target": "uq", "n": 1, "cyclic": True},
        {"command": "dilog", "target": "pentagon"},
        {"command": "dilog", "tol": 0.0},
        {"command": "dilog", "b_re": 0.0},
        {"command": "verify", "target": "qosc", "workers": 0},
    ],
)
def test_invalid_configs(values):
    with pytest.raises(ValidationError):
        RunConfig(**values)


def test_default_samples():
    samples = Settings().DILOG_SAMPLES
    assert len(samples) == 10
    assert samples == sorted(samples)
