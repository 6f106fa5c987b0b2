import json

import pytest

from condcoh.replication import CHECKS, Mismatch, expect, format_report, rand_unit, run_check, run_suite

FAST = [
    "conjoined_iterated_reduction",
    "negation_sum_to_one",
    "nontriviality_identity",
    "self_antecedent_table",
    "stalnaker_desk",
    "uncorrelated_not_independent",
]


@pytest.mark.parametrize("name", sorted(CHECKS))
def test_each_check_passes(name):
    r = run_check(name, seed=3, trials=8)
    assert r.passed, r.details


def test_report_is_deterministic():
    a = [r.to_json() for r in run_suite(seed=11, trials=5, names=FAST)]
    b = [r.to_json() for r in run_suite(seed=11, trials=5, names=FAST)]
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert "6/6 checks passed" in format_report(run_suite(seed=11, trials=2, names=FAST))


def test_failures_carry_counterexamples():
    with pytest.raises(Mismatch) as info:
        expect(False, x=rand_unit(__import__("random").Random(1)))
    assert "x" in info.value.info
    with pytest.raises(ValueError):
        run_suite(trials=0)
