import pytest

from app.checks import CheckRegistry, CheckResult, CheckStatus, UnitOutcome, run_check, run_unit
from app.checks.base_check import scalar_witness, vector_witness
from app.algebra import ONE, Q
from app.fock import FockVector
from app.tasks.sweep_tasks import dispatch_units


def test_every_check_is_registered():
    available = CheckRegistry.get_available_checks()
    for name in [
        "qosc", "uq", "involution", "intertwining", "tetrahedron", "conservation",
        "boundary", "ybe", "symmetry", "difference", "unitarity", "reflection",
        "product_identity", "chi_swap", "appendixA1", "appendixA2", "routes",
        "kernel_symmetry", "kernel_convergence", "kernel_relation",
    ]:
        assert name in available


def test_lookup_is_case_insensitive():
    check = CheckRegistry.create_check("APPENDIXA1", {})
    assert check.name == "appendixA1"
    assert check.kind == "numeric"


def test_unknown_check():
    assert CheckRegistry.create_check("nope", {}) is None
    result = run_check("nope", {})
    assert result.status is CheckStatus.ERROR


def test_invalid_params_become_error_results():
    result = run_check("involution", {"cutoff": -1})
    assert result.status is CheckStatus.ERROR
    assert "cutoff" in result.message
    assert run_check("boundary", {"s": 3}).status is CheckStatus.ERROR


def test_qosc_check():
    result = run_check("qosc", {"cutoff": 4})
    assert result.passed, result.witnesses
    assert result.states_checked == 5


def test_witnesses():
    assert vector_witness("r", (0,), FockVector.basis((0,)), FockVector.basis((0,))) is None
    witness = vector_witness("r", (0,), FockVector.basis((0,)), FockVector.basis((0,), Q))
    assert witness["component"] == [0]
    assert witness["lhs"] == str(ONE)
    assert scalar_witness("s", [1], ONE, ONE) is None
    assert scalar_witness("s", [1], ONE, Q)["rhs"] == str(Q)


def test_results_are_capped_and_counted():
    check = CheckRegistry.create_check("involution", {"cutoff": 1})
    outcomes = [
        UnitOutcome(checked=2, witnesses=[{"relation": "r", "state": [i]} for i in range(8)]),
        UnitOutcome(checked=3, witnesses=[{"relation": "r", "state": [i]} for i in range(8, 12)]),
    ]
    result = check.create_result(outcomes, witness_cap=10)
    assert isinstance(result, CheckResult)
    assert result.status is CheckStatus.FAILED
    assert result.states_checked == 5
    assert result.witness_count == 12
    assert len(result.witnesses) == 10


def test_unit_outcomes_survive_serialisation():
    outcome = run_unit("involution", {"cutoff": 1}, [[0, 1, 0], [1, 1, 1]])
    assert UnitOutcome.from_dict(outcome).checked == 2


def test_dispatch_keeps_unit_order():
    units = [[[1, 0, 0]], [[0, 0, 0], [0, 1, 0]], [[1, 1, 1]]]
    outputs = dispatch_units("involution", {"cutoff": 1}, units, workers=1, backend="local")
    assert [output["checked"] for output in outputs] == [1, 2, 1]


def test_process_pool_matches_inline():
    inline = run_check("conservation", {"cutoff": 1}, workers=1)
    pooled = run_check("conservation", {"cutoff": 1}, workers=2)
    assert inline.passed and pooled.passed
    assert inline.states_checked == pooled.states_checked == 8


def test_eager_celery_backend():
    outputs = dispatch_units("qosc", {"cutoff": 2}, [[0, 1], [2]], backend="celery")
    assert [output["checked"] for output in outputs] == [2, 1]


@pytest.mark.parametrize("name", ["difference", "reflection", "chi_swap"])
def test_numeric_checks_pass_at_defaults(name):
    result = run_check(name, {"samples": [-0.4, 0.25]})
    assert result.passed, result.witnesses
    assert result.samples == 2
    assert result.max_residual < result.tolerance


def test_unitarity_needs_unit_modulus():
    result = run_check("unitarity", {"b_re": 0.8, "b_im": 0.3})
    assert result.status is CheckStatus.ERROR


def test_route_check():
    result = run_check("routes", {"samples": [0.3]})
    assert result.passed, result.witnesses


def test_chi_swap_at_default_samples():
    result = run_check("chi_swap", {})
    assert result.passed, result.witnesses
    assert result.samples == 10
    assert result.max_residual < 1e-8


def test_kernel_checks_use_dilog_tolerance():
    assert CheckRegistry.create_check("kernel_symmetry", {}).tolerance == 1e-8
    assert CheckRegistry.create_check("kernel_convergence", {}).tolerance == 1e-8
    assert CheckRegistry.create_check("kernel_relation", {}).tolerance == 1e-5
