import pytest

from bitwave import arch_model as am
from bitwave import dse
from bitwave import workload_ir as wir

MODEL = wir.WorkloadModel(
    name="toy",
    layers=(
        wir.LayerSpec(index=0, kind=wir.CONV, in_channels=3, out_channels=8,
                      kernel_h=3, kernel_w=3, in_height=12, in_width=12,
                      stride=1, padding=1, weight_bits=6, act_bits=6),
        wir.LayerSpec(index=1, kind=wir.FC, in_features=256, out_features=32,
                      weight_bits=4, act_bits=4),
    ),
)

SPACE = dse.SearchSpace(
    v=(8, 16, 32), k=(6, 9, 18), b=(2, 4), V=(2, 4), K=(2,),
)


def test_enumerate_cartesian_product():
    space = dse.SearchSpace(v=(1, 2), k=(3, 4), b=(4, 8), V=(1,), K=(1,))
    configs = dse.enumerate_configs(space)
    assert len(configs) == 8
    assert len({(c.v, c.k, c.b, c.V, c.K) for c in configs}) == 8


def test_enumerate_empty_dimension_gives_nothing():
    space = dse.SearchSpace(v=(), k=(3,), b=(4,), V=(1,), K=(1,))
    assert dse.enumerate_configs(space) == []


def test_enumerate_deduplicates():
    space = dse.SearchSpace(v=(2, 2, 2), k=(3, 3), b=(4,), V=(1,), K=(1,))
    assert len(dse.enumerate_configs(space)) == 1


def test_enumerate_deterministic_order():
    a = dse.enumerate_configs(SPACE)
    b = dse.enumerate_configs(SPACE)
    assert a == b
    keys = [(c.v, c.k, c.b, c.V, c.K) for c in a]
    assert keys == sorted(keys)


def test_explore_best_matches_independent_rescan():
    result = dse.explore([MODEL], SPACE)
    assert result.ranked
    # independent second pass: simulate every config from scratch
    rescored = []
    for cfg in dse.enumerate_configs(SPACE):
        rep = am.simulate_inference(MODEL, cfg)
        rescored.append((rep.gops_per_epb, cfg))
    best_score = max(s for s, _ in rescored)
    assert result.best.score == pytest.approx(best_score, rel=1e-12)
    winners = {(c.v, c.k, c.b, c.V, c.K) for s, c in rescored if s == best_score}
    b = result.best.config
    assert (b.v, b.k, b.b, b.V, b.K) in winners
    # nothing evaluated beats the reported best
    assert all(e.score <= result.best.score + 1e-12 for e in result.ranked)


def test_explore_ranking_sorted_and_deterministic():
    r1 = dse.explore([MODEL], SPACE)
    r2 = dse.explore([MODEL], SPACE)
    assert [e.config for e in r1.ranked] == [e.config for e in r2.ranked]
    scores = [e.score for e in r1.ranked]
    assert scores == sorted(scores, reverse=True)


def test_explore_power_constraint_filters():
    unconstrained = dse.explore([MODEL], SPACE)
    cap = sorted((e.max_power_w for e in unconstrained.ranked))[len(unconstrained.ranked) // 2]
    space = dse.SearchSpace(
        v=SPACE.v, k=SPACE.k, b=SPACE.b, V=SPACE.V, K=SPACE.K,
        constraints=dse.SearchConstraints(max_power_w=cap),
    )
    constrained = dse.explore([MODEL], space)
    assert constrained.ranked
    assert all(e.max_power_w <= cap for e in constrained.ranked)
    assert len(constrained.ranked) < len(unconstrained.ranked)
    # tightening the cap never adds configurations
    tighter = dse.SearchSpace(
        v=SPACE.v, k=SPACE.k, b=SPACE.b, V=SPACE.V, K=SPACE.K,
        constraints=dse.SearchConstraints(max_power_w=cap / 2),
    )
    fewer = dse.explore([MODEL], tighter)
    kept = {(e.config.v, e.config.k, e.config.b, e.config.V, e.config.K) for e in fewer.ranked}
    allowed = {(e.config.v, e.config.k, e.config.b, e.config.V, e.config.K) for e in constrained.ranked}
    assert kept <= allowed


def test_explore_all_infeasible_reports_diagnostics():
    space = dse.SearchSpace(
        v=SPACE.v, k=SPACE.k, b=SPACE.b, V=SPACE.V, K=SPACE.K,
        constraints=dse.SearchConstraints(max_power_w=0.0),
    )
    result = dse.explore([MODEL], space)
    assert result.ranked == ()
    assert result.best is None
    assert result.infeasible_count == len(dse.enumerate_configs(space))
    assert result.diagnostics["max_power"] == result.infeasible_count


def test_explore_laser_ceiling_rejections_counted():
    space = dse.SearchSpace(
        v=(1500, 2000), k=(6,), b=(4,), V=(1,), K=(1,),
        constraints=dse.SearchConstraints(laser_ceiling_dbm=10.0),
    )
    result = dse.explore([MODEL], space)
    assert result.best is None
    assert result.diagnostics["laser"] == 2


def test_explore_requires_models():
    with pytest.raises(ValueError):
        dse.explore([], SPACE)


def test_explore_aggregate_modes():
    m2 = wir.WorkloadModel(name="toy2", layers=MODEL.layers)
    geo = dse.explore([MODEL, m2], SPACE, aggregate="geomean")
    mean = dse.explore([MODEL, m2], SPACE, aggregate="mean")
    mn = dse.explore([MODEL, m2], SPACE, aggregate="min")
    # both models are identical, so every aggregate agrees
    for g, a, m in zip(geo.ranked, mean.ranked, mn.ranked):
        assert g.score == pytest.approx(a.score, rel=1e-9)
        assert g.score == pytest.approx(m.score, rel=1e-9)
    with pytest.raises(dse.SearchSpaceError):
        dse.explore([MODEL], SPACE, aggregate="median")


def test_geomean_is_scale_free():
    vals = [2.0, 8.0]
    assert dse._aggregate(vals, "geomean") == pytest.approx(4.0)
    assert dse._aggregate(vals, "mean") == pytest.approx(5.0)
    assert dse._aggregate(vals, "min") == pytest.approx(2.0)


def test_search_space_file_round_trip(tmp_path):
    path = tmp_path / "space.json"
    path.write_text(
        '{"v": [8], "k": [6], "b": [4], "V": [1], "K": [1],'
        ' "constraints": {"max_power_w": 5.0}}'
    )
    space = dse.load_search_space(path)
    assert space.v == (8,)
    assert space.constraints.max_power_w == 5.0


def test_search_space_rejects_unknown_fields():
    with pytest.raises(dse.SearchSpaceError):
        dse.search_space_from_dict({"v": [1], "k": [1], "b": [4], "V": [1], "K": [1], "q": []})
    with pytest.raises(dse.SearchSpaceError):
        dse.search_space_from_dict({"v": "nope", "k": [1], "b": [4], "V": [1], "K": [1]})
