"""Tests for the check registry and the suite runner."""

from __future__ import annotations

import pytest

from domain import registry
from domain.config import default_run_config
from domain.pipeline import check_config, run_check, run_checks
from domain.registry import CheckDescriptor, Scope


def test_registry_lists_checks_in_name_order() -> None:
    names = [descriptor.name for descriptor in registry.get_all()]
    assert names == sorted(names)
    assert "verlinde_count" in names
    assert "su2_product_map" in names
    assert registry.get("VERLINDE_COUNT").scope is Scope.ANY


def test_registry_errors() -> None:
    with pytest.raises(KeyError, match="Available: .*verlinde_count"):
        registry.get("missing")
    with pytest.raises(ValueError, match="Duplicate check registration"):
        registry.register(CheckDescriptor("verlinde_count", Scope.ANY, lambda config: 0.0, 0.0))


def test_scopes_split_by_rank() -> None:
    config = default_run_config()
    su2 = config.with_overrides(n=2)
    assert registry.get("quasi_periodicity").applies_to(config)
    assert not registry.get("quasi_periodicity").applies_to(su2)
    assert registry.get("su2_heat_equation").applies_to(su2)
    assert registry.get("verlinde_count").applies_to(su2)


def test_negative_controls_pass_above_threshold() -> None:
    control = CheckDescriptor("control", Scope.ANY, lambda config: 1.0, 0.5, expect_above=True)
    assert control.passes(1.0)
    assert not control.passes(0.1)


def test_run_check_turns_exceptions_into_failures() -> None:
    def broken(config: object) -> float:
        raise ArithmeticError("boom")

    outcome = run_check(CheckDescriptor("broken", Scope.ANY, broken, 0.0), default_run_config())
    assert not outcome.passed
    assert outcome.value is None
    assert outcome.error == "ArithmeticError: boom"


def test_run_checks_echoes_each_outcome() -> None:
    lines: list[str] = []
    summary = run_checks(
        default_run_config(),
        names=["verlinde_count", "picard_invariant_order", "periods_invariants"],
        echo=lines.append,
    )

    assert summary.passed
    assert summary.failures == []
    assert len(lines) == 4
    assert lines[0].startswith("check name=verlinde_count n=3 k=1")
    assert lines[-1] == "completed checks=3 failed=0 skipped=0 n=3 k=1 passed=True"
    assert summary.as_json_dict()["config"]["name"] == "default"


def test_su2_suite_structural_checks() -> None:
    config = default_run_config().with_overrides(n=2, k=1)
    summary = run_checks(config, names=["su2_dimensions", "su2_half_family_control", "picard_invariant_order"])
    assert summary.passed
    assert [outcome.name for outcome in summary.outcomes] == [
        "su2_dimensions",
        "su2_half_family_control",
        "picard_invariant_order",
    ]


def test_checks_outside_their_range_are_skipped_not_passed() -> None:
    lines: list[str] = []
    summary = run_checks(
        default_run_config().with_overrides(n=5), names=["looijenga_dimensions"], echo=lines.append
    )

    (outcome,) = summary.outcomes
    assert outcome.status == "skipped"
    assert outcome.value is None
    assert "n <= 4" in (outcome.skipped or "")
    assert summary.failures == []
    assert [skipped.name for skipped in summary.skipped] == ["looijenga_dimensions"]
    assert "value=skipped" in lines[0]
    assert lines[-1] == "completed checks=1 failed=0 skipped=1 n=5 k=1 passed=True"
    assert summary.as_json_dict()["checks"][0]["status"] == "skipped"


def test_su2_product_map_is_skipped_at_level_zero() -> None:
    summary = run_checks(default_run_config().with_overrides(n=2, k=0), names=["su2_product_map"])
    assert summary.outcomes[0].status == "skipped"
    assert summary.outcomes[0].skipped == "the product map needs k >= 1"


def test_detune_reaches_only_detuned_checks() -> None:
    config = default_run_config().with_overrides(t_detune=0.01)
    plain = CheckDescriptor("plain", Scope.ANY, lambda config: config.t_detune, 0.0)
    detuned = CheckDescriptor("detuned", Scope.ANY, lambda config: config.t_detune, 0.0, detuned=True)

    assert check_config(plain, config).t_detune == 0.0
    assert run_check(plain, config).passed
    outcome = run_check(detuned, config)
    assert outcome.value == pytest.approx(0.01)
    assert not outcome.passed
    assert registry.get("descent").detuned
    assert registry.get("su2_descent").detuned
    assert not registry.get("heat_equation").detuned


@pytest.mark.parametrize(("n", "name"), [(3, "weyl_antisymmetry"), (2, "su2_heat_equation")])
def test_checks_respect_the_configured_radius_cap(n: int, name: str) -> None:
    config = default_run_config().with_overrides(n=n, tau=0.02j, radius_cap=1)
    outcome = run_check(registry.get(name), config)

    assert not outcome.passed
    assert outcome.error is not None
    assert outcome.error.startswith("ResourceLimitError")
    assert "needs radius > 1" in outcome.error
