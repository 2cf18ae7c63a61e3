import math

import pytest

from svdperturb.errors import ConvergenceError
from svdperturb.linalg import NormKind, PairingNorm
from svdperturb.sylvester import BoundCertificate, Regime
from svdperturb.verify import (
    SUITES,
    Property,
    PropertyOutcome,
    PropertyRegistry,
    PropertyTally,
    default_registry,
)


class AlwaysPasses(Property):
    name = "test.passes"
    suite = "sylvester"
    description = "passes with slack equal to the seed"

    def check(self, seed, max_dim):
        return PropertyOutcome(passed=True, slack=float(seed))


class Raises(Property):
    name = "test.raises"
    suite = "perturb"
    description = "raises a library error"
    min_dim = 3

    def check(self, seed, max_dim):
        raise ConvergenceError("no luck", iterations=1)


def cert(bound, measured, satisfied, condition_met=True, id="c"):
    return BoundCertificate(
        id=id,
        regime=Regime.GENERAL_UI,
        pairing=PairingNorm.block_diag(NormKind.SPECTRAL),
        delta=1.0,
        constant=1.0,
        bound_value=bound,
        measured_value=measured,
        satisfied=satisfied,
        condition_met=condition_met,
    )


def test_outcome_from_margins():
    ok = PropertyOutcome.from_margins({"a": 0.5, "b": 0.0})
    assert ok.passed
    assert ok.slack == 0.0
    bad = PropertyOutcome.from_margins({"a": 0.5, "b": -1.0, "c": math.nan})
    assert not bad.passed
    assert bad.detail == "b, c"
    assert PropertyOutcome.from_margins({}).slack == math.inf


def test_outcome_from_certificates():
    outcome = PropertyOutcome.from_certificates([
        cert(1.0, 0.25, True, id="a"),
        cert(0.0, 1e-14, True, id="equality"),
        cert(0.0, 5.0, False, condition_met=False, id="ignored"),
    ])
    assert outcome.passed
    assert outcome.slack == 0.0

    failed = PropertyOutcome.from_certificates([cert(1.0, 2.0, False, id="over")])
    assert not failed.passed
    assert failed.slack == pytest.approx(-1.0)
    assert failed.detail == "over"


def test_registry_basics():
    registry = PropertyRegistry()
    registry.register(AlwaysPasses())
    registry.register(Raises())
    assert len(registry) == 2
    assert "test.passes" in registry
    assert registry.has("test.raises")
    assert registry.names("sylvester") == ["test.passes"]
    assert registry.names() == ["test.passes", "test.raises"]
    assert registry.get_definitions()[1]["min_dim"] == 3
    registry.unregister("test.raises")
    assert registry.get("test.raises") is None
    with pytest.raises(KeyError):
        registry.names("nope")


def test_registry_turns_errors_into_failures():
    registry = PropertyRegistry()
    registry.register(Raises())
    outcome = registry.run("test.raises", seed=1, max_dim=4)
    assert not outcome.passed
    assert outcome.slack == -math.inf
    assert "ConvergenceError" in outcome.detail
    assert registry.run("test.raises", seed=1, max_dim=2).skipped
    assert not registry.run("missing", seed=1, max_dim=4).passed


def test_run_suite_tallies_in_seed_order():
    registry = PropertyRegistry()
    registry.register(AlwaysPasses())
    registry.register(Raises())
    tallies = {t.name: t for t in registry.run_suite("all", trials=3, seed=5, max_dim=4)}
    assert tallies["test.passes"].passed == 3
    assert tallies["test.passes"].worst_slack == 5.0
    bad = tallies["test.raises"]
    assert bad.failed == 3
    assert bad.first_failure.startswith("seed 5:")


def test_zero_trials_is_an_empty_run():
    tallies = default_registry().run_suite("all", trials=0, seed=1, max_dim=8)
    assert tallies
    assert all(t.trials == 0 and t.failed == 0 for t in tallies)


def test_tally_skips_do_not_touch_slack():
    t = PropertyTally(name="x", suite="sylvester")
    t.add(1, PropertyOutcome.skip("why"))
    assert t.skipped == 1
    assert t.worst_slack == math.inf


def test_default_registry_covers_every_suite():
    registry = default_registry()
    for suite in SUITES:
        assert registry.names(suite)
    assert len(set(registry.property_names)) == len(registry)


def test_properties_draw_independent_streams():
    registry = default_registry()
    a = registry.get("coupled.bounds").rng(3).random()
    b = registry.get("coupled.witness").rng(3).random()
    assert a != b
    assert registry.get("coupled.bounds").rng(3).random() == a


@pytest.mark.parametrize("suite", SUITES)
def test_suites_pass_on_a_few_seeds(suite):
    tallies = default_registry().run_suite(suite, trials=3, seed=1, max_dim=5)
    failures = {t.name: t.first_failure for t in tallies if t.failed}
    assert not failures


def test_sylvester_suite_reference_run():
    tallies = default_registry().run_suite("sylvester", trials=10, seed=1, max_dim=8)
    for t in tallies:
        assert t.failed == 0, t.first_failure
        assert t.passed + t.skipped == 10


def test_sintheta_property_covers_both_spectrum_layouts():
    registry = default_registry()
    outcomes = [registry.run("sintheta.certificates", seed, max_dim=6) for seed in range(20)]
    assert all(o.passed for o in outcomes), [o.detail for o in outcomes if not o.passed]
    layouts = {bool(registry.get("sintheta.certificates").rng(seed).integers(2)) for seed in range(20)}
    assert layouts == {True, False}
