import json
import random
from fractions import Fraction

import pytest

from kfib.errors import UsageError
from kfib.fibonacci import KappaContext
from kfib.functionals import ClassSpec
from kfib.shelllike import CaratheodoryPrefix
from kfib.verify import (
    SweepConfig,
    consistent_d2,
    default_param_grid,
    domination_sweep,
    fekete_continuity_suite,
    jsonable,
    random_replay_tuples,
    replay_proof_chain,
    run_suite,
    typo_audit,
)

IDS = ["6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "fs", "fs-bound"]


@pytest.mark.parametrize("family,block", [("W", 2), ("R", 3), ("B", 4), ("P", 5)])
def test_replay_passes_on_consistent_data(family, block):
    rng = random.Random(family)
    ctx = KappaContext.make(2)
    for spec, c, d2 in random_replay_tuples(family, ctx, 5, rng):
        recs = replay_proof_chain(spec, ctx, c, d2, mu=Fraction(1, 3))
        assert [r.check_id for r in recs] == [f"{block}.{i}" for i in IDS]
        assert all(r.passed for r in recs), [r for r in recs if not r.passed]


def test_replay_in_float_mode():
    rng = random.Random(5)
    ctx = KappaContext.make(Fraction(1, 2))
    for fam in "WRBP":
        for spec, c, d2 in random_replay_tuples(fam, ctx, 3, rng, exact=False):
            recs = replay_proof_chain(spec, ctx, c, d2)
            assert all(r.passed for r in recs)
            assert max(float(r.residual) for r in recs) <= 1e-10


def test_inconsistent_corner_is_caught():
    ctx = KappaContext.make(1)
    spec = ClassSpec("W")
    recs = {r.check_id: r for r in replay_proof_chain(spec, ctx, CaratheodoryPrefix(2, 2), d2=2)}
    assert recs["2.6"].passed and recs["2.10"].passed
    assert not recs["2.9"].passed
    assert consistent_d2(spec, ctx, 2, 2) != 2


def test_sweep_is_partition_invariant():
    ctx = KappaContext.make(3)
    spec = ClassSpec("R", Fraction(1, 2), 2)
    cfg = SweepConfig(grid_size=32)
    whole = domination_sweep(spec, ctx, cfg)
    for parts in (2, 5, 32):
        assert domination_sweep(spec, ctx, cfg, partitions=parts) == whole
    assert not whole["violations"]
    assert whole["max_ratio"]["a2"] == pytest.approx(1.0, abs=1e-9)


def test_sweep_skips_invalid_domain():
    s = domination_sweep(ClassSpec("W", 1, 5), KappaContext.make(1))
    assert s["skipped"] and s["diagnostic"]


def test_param_grid_is_deterministic_and_valid():
    a = default_param_grid("B", 10, kappas=(1, 2, 3, Fraction(1, 2)))
    assert a == default_param_grid("B", 10, kappas=(1, 2, 3, Fraction(1, 2)))
    assert len(a) == 10 and len(set(a)) == 10


def test_fekete_continuity_suite():
    recs = fekete_continuity_suite(count=20)
    assert len(recs) == 40 and all(r.passed for r in recs)


def test_typo_audit_shape():
    rep = typo_audit()
    ids = {f["id"] for f in rep["findings"]}
    assert {"B-a2-sqrt-kappa", "R-inverse-missing-subordination", "P-inverse-f-for-g"} <= ids
    assert rep["count"] == len(rep["findings"])
    assert all("id" in n for n in rep["notational"])
    json.dumps(jsonable(rep))


def test_config_file(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    assert SweepConfig.from_file(empty) == SweepConfig()
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"kappa_list": ["1/2", 2], "n_random": 3}))
    loaded = SweepConfig.from_file(cfg)
    assert loaded.kappa_list == [Fraction(1, 2), Fraction(2)] and loaded.n_random == 3
    cfg.write_text(json.dumps({"nope": 1}))
    with pytest.raises(UsageError):
        SweepConfig.from_file(cfg)


@pytest.mark.parametrize("bad", [dict(tolerance=0), dict(mode="fast"), dict(kappa_list=[])])
def test_config_validation(bad):
    with pytest.raises(UsageError):
        SweepConfig(**bad)


def test_run_suite_small():
    cfg = SweepConfig(kappa_list=[1], n_random=2, tuples_per_family=2, grid_size=16)
    records, summary, ok = run_suite("proof-chain", cfg)
    assert ok and summary["proof-chain"] == {"records": 96, "failed": 0}
    json.dumps(records)
    with pytest.raises(UsageError):
        run_suite("nothing", cfg)
