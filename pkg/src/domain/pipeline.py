"""Run the registered property checks for one run config."""

from __future__ import annotations

import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any

from domain import registry
from domain.config import RunConfig
from domain.errors import CheckNotApplicableError
from domain.registry import CheckDescriptor


@dataclass(frozen=True)
class CheckOutcome:
    """Result of one named check.

    A skipped outcome carries the reason and counts neither as a pass nor as a failure.
    """

    name: str
    scope: str
    value: float | None
    threshold: float
    expect_above: bool
    passed: bool
    seconds: float
    error: str | None = None
    skipped: str | None = None

    @property
    def status(self) -> str:
        if self.skipped is not None:
            return "skipped"
        return "passed" if self.passed else "failed"

    def as_json_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "scope": self.scope,
            "status": self.status,
            "value": self.value,
            "threshold": self.threshold,
            "expect_above": self.expect_above,
            "passed": self.passed,
            "seconds": self.seconds,
            "error": self.error,
            "skipped": self.skipped,
        }


@dataclass(frozen=True)
class CheckSuiteSummary:
    config: RunConfig
    outcomes: tuple[CheckOutcome, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def failures(self) -> list[CheckOutcome]:
        return [outcome for outcome in self.outcomes if outcome.status == "failed"]

    @property
    def skipped(self) -> list[CheckOutcome]:
        return [outcome for outcome in self.outcomes if outcome.status == "skipped"]

    def as_json_dict(self) -> dict[str, Any]:
        return {
            "config": self.config.as_config_json(),
            "passed": self.passed,
            "checks": [outcome.as_json_dict() for outcome in self.outcomes],
        }


def check_config(descriptor: CheckDescriptor, config: RunConfig) -> RunConfig:
    """The config a check measures with; only detuned checks see t_detune."""
    if descriptor.detuned or config.t_detune == 0.0:
        return config
    return config.with_overrides(t_detune=0.0)


def run_check(descriptor: CheckDescriptor, config: RunConfig) -> CheckOutcome:
    """Run one check; exceptions become failed outcomes carrying the message."""
    started = time.perf_counter()
    outcome = {
        "name": descriptor.name,
        "scope": descriptor.scope.value,
        "threshold": descriptor.threshold,
        "expect_above": descriptor.expect_above,
    }
    try:
        value = float(descriptor.measure(check_config(descriptor, config)))
    except CheckNotApplicableError as exc:
        return CheckOutcome(
            **outcome, value=None, passed=False, seconds=time.perf_counter() - started, skipped=str(exc)
        )
    except Exception as exc:  # noqa: BLE001
        return CheckOutcome(
            **outcome,
            value=None,
            passed=False,
            seconds=time.perf_counter() - started,
            error=f"{type(exc).__name__}: {exc}",
        )
    return CheckOutcome(
        **outcome,
        value=value,
        passed=descriptor.passes(value),
        seconds=time.perf_counter() - started,
    )


def run_checks(
    config: RunConfig,
    *,
    names: Sequence[str] | None = None,
    echo: Callable[[str], None] | None = None,
) -> CheckSuiteSummary:
    """Run every applicable registered check (or the named ones) without stopping on failures."""
    descriptors = (
        [registry.get(name) for name in names] if names is not None else registry.get_all()
    )
    outcomes: list[CheckOutcome] = []
    for descriptor in descriptors:
        if not descriptor.applies_to(config):
            continue
        outcome = run_check(descriptor, config)
        outcomes.append(outcome)
        if echo is not None:
            if outcome.skipped is not None:
                value = "skipped"
            else:
                value = "error" if outcome.value is None else f"{outcome.value:.3g}"
            t_detune = config.t_detune if descriptor.detuned else 0.0
            echo(
                f"check name={outcome.name} n={config.n} k={config.k} "
                f"t_detune={t_detune:g} value={value} "
                f"threshold={outcome.threshold:g} status={outcome.status} "
                f"seconds={outcome.seconds:.2f}"
                + ("" if outcome.error is None else f" error={outcome.error!r}")
                + ("" if outcome.skipped is None else f" reason={outcome.skipped!r}")
            )

    summary = CheckSuiteSummary(config=config, outcomes=tuple(outcomes))
    if echo is not None:
        echo(
            f"completed checks={len(outcomes)} failed={len(summary.failures)} "
            f"skipped={len(summary.skipped)} n={config.n} k={config.k} passed={summary.passed}"
        )
    return summary


__all__ = ["CheckOutcome", "CheckSuiteSummary", "check_config", "run_check", "run_checks"]
